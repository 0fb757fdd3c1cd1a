#include "hhc/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "hhc/error.hpp"
#include "json.hpp"

namespace hhc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::flagged: return "flagged";
    case Verdict::hypothesis_unverified: return "hypothesis-unverified";
  }
  return "?";
}

Summary SuiteReport::summary() const {
  Summary s;
  for (const CaseRecord& c : cases) {
    switch (c.verdict) {
      case Verdict::holds: ++s.holds; break;
      case Verdict::flagged: ++s.flagged; break;
      case Verdict::hypothesis_unverified: ++s.hypothesis_unverified; break;
    }
  }
  return s;
}

Format format_from_string(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw UsageError("unknown output format '" + name + "'");
}

namespace {

std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string emit_json(const SuiteReport& report) {
  using nlohmann::ordered_json;
  ordered_json cases = ordered_json::array();
  for (const CaseRecord& c : report.cases) {
    ordered_json rec;
    rec["case_id"] = c.case_id;
    rec["rule"] = c.rule;
    rec["params"] = c.params;
    rec["lhs"] = c.lhs;
    rec["rhs"] = c.rhs;
    rec["margin"] = c.margin;
    rec["verdict"] = to_string(c.verdict);
    cases.push_back(std::move(rec));
  }
  const Summary s = report.summary();
  ordered_json root;
  root["tool_version"] = report.tool_version;
  root["seed"] = report.seed;
  root["summary"] = {{"holds", s.holds}, {"flagged", s.flagged}, {"hypothesis_unverified", s.hypothesis_unverified}};
  root["cases"] = std::move(cases);
  return root.dump(2) + "\n";
}

std::string emit_csv(const SuiteReport& report) {
  std::string out = "case_id,rule,params,lhs,rhs,margin,verdict\n";
  for (const CaseRecord& c : report.cases) {
    out += csv_field(c.case_id) + ',' + csv_field(c.rule) + ',' + csv_field(c.params) + ',' + shortest(c.lhs) +
           ',' + shortest(c.rhs) + ',' + shortest(c.margin) + ',' + to_string(c.verdict) + '\n';
  }
  return out;
}

std::string emit_table(const SuiteReport& report) {
  auto num = [](double v) {
    std::ostringstream os;
    os << std::setprecision(8) << v;
    return os.str();
  };
  const std::array<std::string, 7> header = {"case_id", "rule", "lhs", "rhs", "margin", "verdict", "params"};
  std::vector<std::array<std::string, 7>> rows;
  for (const CaseRecord& c : report.cases) {
    rows.push_back({c.case_id, c.rule, num(c.lhs), num(c.rhs), num(c.margin), to_string(c.verdict), c.params});
  }
  std::array<std::size_t, 7> width{};
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream os;
  auto line = [&](const std::array<std::string, 7>& r, const std::string& note) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(width[i])) << r[i];
      if (i + 1 < r.size()) os << "  ";
    }
    if (!note.empty()) os << "  # " << note;
    os << '\n';
  };
  line(header, "");
  for (std::size_t i = 0; i < rows.size(); ++i) line(rows[i], report.cases[i].note);
  const Summary s = report.summary();
  os << "\nholds: " << s.holds << "  flagged: " << s.flagged << "  hypothesis-unverified: " << s.hypothesis_unverified
     << "  (seed " << report.seed << ", version " << report.tool_version << ")\n";
  return os.str();
}

}  // namespace

std::string emit_report(const SuiteReport& report, Format format) {
  switch (format) {
    case Format::json: return emit_json(report);
    case Format::csv: return emit_csv(report);
    case Format::table: return emit_table(report);
  }
  return {};
}

}  // namespace hhc
