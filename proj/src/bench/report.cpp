#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "safeplan/bench.hpp"

namespace safeplan::bench {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

nlohmann::json path_json(const std::vector<GridIndex>& path) {
  auto arr = nlohmann::json::array();
  for (const auto& c : path) arr.push_back({c.row, c.col});
  return arr;
}

}  // namespace

void write_csv(const BenchReport& report, std::ostream& out) {
  out << "scenario_id,planner,outcome,time_ms,length_m,clearance_cm,turn_deg,O,C,osi\n";
  for (const auto& row : report.rows) {
    out << row.scenario_id << ',' << row.planner << ',' << to_string(row.outcome) << ','
        << fixed(row.time_ms, 3) << ',';
    if (row.outcome == Outcome::success) {
      out << fixed(row.metrics.length_m, 6) << ',' << fixed(row.metrics.min_clearance_m * 100.0, 4) << ','
          << fixed(row.metrics.turn_deg, 4) << ',' << fixed(row.osi.O, 6) << ',' << fixed(row.osi.C, 6)
          << ',' << fixed(row.osi.osi, 6);
    } else {
      out << ",,,,,";
    }
    out << '\n';
  }
}

void write_ablation_csv(const BenchReport& report, std::ostream& out) {
  out << "section,scenario_id,outcome,time_ms,length_m,clearance_cm,turn_deg,expanded\n";
  for (const auto& row : report.rows) {
    out << row.section << ',' << row.scenario_id << ',' << to_string(row.outcome) << ','
        << fixed(row.time_ms, 3) << ',';
    if (row.outcome == Outcome::success) {
      out << fixed(row.metrics.length_m, 6) << ',' << fixed(row.metrics.min_clearance_m * 100.0, 4) << ','
          << fixed(row.metrics.turn_deg, 4);
    } else {
      out << ",,";
    }
    out << ',' << row.expanded << '\n';
  }
}

void write_json(const BenchReport& report, std::ostream& out) {
  nlohmann::json doc;
  doc["timing_note"] = report.timing_note;
  auto summaries = nlohmann::json::array();
  for (const auto& s : summarize(report)) {
    summaries.push_back({{"section", s.section},
                         {"planner", s.planner},
                         {"rows", s.rows},
                         {"successes", s.successes},
                         {"success_rate_percent", s.success_rate},
                         {"time_ms", {{"mean", s.mean_time_ms}, {"median", s.median_time_ms}}},
                         {"length_m", {{"mean", s.mean_length_m}, {"median", s.median_length_m}}},
                         {"clearance_cm",
                          {{"mean", s.mean_clearance_cm},
                           {"median", s.median_clearance_cm},
                           {"min", s.min_clearance_cm}}},
                         {"turn_deg", {{"mean", s.mean_turn_deg}, {"median", s.median_turn_deg}}},
                         {"osi", {{"mean", s.mean_osi}, {"median", s.median_osi}}},
                         {"expanded", {{"median", s.median_expanded}}}});
  }
  doc["summary"] = std::move(summaries);

  auto rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r = {{"scenario_id", row.scenario_id},
                        {"planner", row.planner},
                        {"outcome", std::string(to_string(row.outcome))},
                        {"time_ms", row.time_ms},
                        {"expanded", row.expanded}};
    if (!row.section.empty()) r["section"] = row.section;
    if (!row.error.empty()) r["error"] = row.error;
    if (row.outcome == Outcome::success) {
      r["length_m"] = row.metrics.length_m;
      r["clearance_cm"] = row.metrics.min_clearance_m * 100.0;
      r["turn_deg"] = row.metrics.turn_deg;
      r["O"] = row.osi.O;
      r["C"] = row.osi.C;
      r["osi"] = row.osi.osi;
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_paths(const BenchReport& report, std::ostream& out) {
  auto arr = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r = {{"scenario_id", row.scenario_id},
                        {"planner", row.planner},
                        {"start", {row.start.row, row.start.col}},
                        {"goal", {row.goal.row, row.goal.col}},
                        {"path", path_json(row.path)}};
    if (!row.section.empty()) r["section"] = row.section;
    arr.push_back(std::move(r));
  }
  out << arr.dump() << '\n';
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_report(const BenchReport& report, const std::filesystem::path& dir, bool ablation) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

  std::ostringstream csv;
  if (ablation) {
    write_ablation_csv(report, csv);
  } else {
    write_csv(report, csv);
  }
  write_text_file(dir / (ablation ? "ablation.csv" : "report.csv"), csv.str());

  std::ostringstream json;
  write_json(report, json);
  write_text_file(dir / "report.json", json.str());

  std::ostringstream paths;
  write_paths(report, paths);
  write_text_file(dir / "paths.json", paths.str());
}

std::string drop_column(std::string_view csv, std::string_view column) {
  std::string out;
  std::ptrdiff_t drop = -1;
  bool header = true;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    const auto line = csv.substr(0, nl);
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == column) drop = static_cast<std::ptrdiff_t>(i);
      }
      header = false;
    }
    bool first = true;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (static_cast<std::ptrdiff_t>(i) == drop) continue;
      if (!first) out += ',';
      out += fields[i];
      first = false;
    }
    if (nl == std::string_view::npos) break;
    out += '\n';
    csv.remove_prefix(nl + 1);
  }
  return out;
}

}  // namespace safeplan::bench
