#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hhc/expr.hpp"
#include "hhc/report.hpp"

namespace hhc {

struct CatalogEntry {
  std::string name;
  Expression f;
  // Only defined for positive arguments.
  bool positive_only = false;
};

// x^2, x^3, exp(x), -ln(x), 1/x.
std::vector<CatalogEntry> bound_catalog();

struct Interval {
  double a;
  double b;
};

// Seeded interval number `index`: a in [0.1, 3], b - a in [0.1, 2].
Interval suite_interval(std::uint64_t seed, std::uint64_t index);
// Seeded pair 0 < a < b <= 100.
Interval suite_pair(std::uint64_t seed, std::uint64_t index);

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t lemma_intervals = 100;
  std::size_t bound_intervals = 200;
  std::size_t mean_pairs = 1000;
  std::size_t lp_pairs = 100;
  std::size_t proposition_pairs = 50;
  std::size_t membership_samples = 1000;
  double tol = 1e-9;
};

void add_lemma_cases(SuiteReport& report, const SuiteOptions& opts);
void add_bound_cases(SuiteReport& report, const SuiteOptions& opts);
void add_mean_cases(SuiteReport& report, const SuiteOptions& opts);
void add_proposition_cases(SuiteReport& report, const SuiteOptions& opts);
void add_quadrature_cases(SuiteReport& report, const SuiteOptions& opts);

// Every section above, in that order.
SuiteReport run_suite(const SuiteOptions& opts);

}  // namespace hhc
