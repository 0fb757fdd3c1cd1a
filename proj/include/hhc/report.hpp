#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hhc {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Verdict { holds, flagged, hypothesis_unverified };

std::string to_string(Verdict v);

struct CaseRecord {
  std::string case_id;
  std::string rule;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::holds;
  // Shown in table output only.
  std::string note;
};

struct Summary {
  std::size_t holds = 0;
  std::size_t flagged = 0;
  std::size_t hypothesis_unverified = 0;
};

struct SuiteReport {
  std::vector<CaseRecord> cases;
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 42;

  Summary summary() const;
  void add(CaseRecord record) { cases.push_back(std::move(record)); }
};

enum class Format { table, json, csv };

Format format_from_string(const std::string& name);

// json: fixed key order; csv: header row, then one record per line;
// table: aligned columns.
std::string emit_report(const SuiteReport& report, Format format);

}  // namespace hhc
