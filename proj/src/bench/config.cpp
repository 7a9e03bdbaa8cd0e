#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "safeplan/bench.hpp"

namespace safeplan::bench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

using Field = std::variant<double UppConfig::*, int UppConfig::*, bool UppConfig::*>;

struct Key {
  std::string_view name;
  Field field;
};

constexpr Key kKeys[] = {
    {"alpha_base", &UppConfig::alpha_base}, {"beta_base", &UppConfig::beta_base},
    {"r_base", &UppConfig::r_base},         {"epsilon", &UppConfig::epsilon},
    {"alpha_min", &UppConfig::alpha_min},   {"alpha_max", &UppConfig::alpha_max},
    {"beta_min", &UppConfig::beta_min},     {"beta_max", &UppConfig::beta_max},
    {"r_min", &UppConfig::r_min},           {"r_max", &UppConfig::r_max},
    {"gamma_rec", &UppConfig::gamma_rec},   {"gamma_dec", &UppConfig::gamma_dec},
    {"k_beta", &UppConfig::k_beta},         {"tau_goal", &UppConfig::tau_goal},
    {"eta_rec", &UppConfig::eta_rec},       {"eta_dec", &UppConfig::eta_dec},
    {"k_alpha", &UppConfig::k_alpha},       {"tau_ang", &UppConfig::tau_ang},
    {"theta_tar", &UppConfig::theta_tar},   {"adapt_alpha", &UppConfig::adapt_alpha},
    {"adapt_beta", &UppConfig::adapt_beta}, {"record_trace", &UppConfig::record_trace},
};

bool parse_value(std::string_view text, double& out) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_value(std::string_view text, int& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_value(std::string_view text, bool& out) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    out = true;
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    out = false;
    return true;
  }
  return false;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void apply_config_text(std::string_view text, UppConfig& config) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto line = strip_comment(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const Key* match = nullptr;
    for (const auto& k : kKeys) {
      if (k.name == key) match = &k;
    }
    if (match == nullptr) {
      throw FormatError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    const bool ok = std::visit([&](auto member) { return parse_value(value, config.*member); }, match->field);
    if (!ok) {
      throw FormatError("config line " + std::to_string(line_no) + ": bad value '" + std::string(value) +
                        "' for " + std::string(key));
    }
  }
}

UppConfig load_config(const std::filesystem::path& path, UppConfig base) {
  const std::string text = read_file(path);
  try {
    apply_config_text(text, base);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  base.validate();
  return base;
}

std::vector<GridIndex> parse_path_text(std::string_view text) {
  std::vector<GridIndex> path;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string line(strip_comment(text.substr(0, nl)));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream ss(line);
    GridIndex cell;
    std::string extra;
    if (!(ss >> cell.row >> cell.col) || (ss >> extra)) {
      throw FormatError("path line " + std::to_string(line_no) + ": expected 'row,col'");
    }
    path.push_back(cell);
  }
  return path;
}

}  // namespace safeplan::bench
