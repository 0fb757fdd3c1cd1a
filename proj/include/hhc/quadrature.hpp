#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hhc/convexity.hpp"
#include "hhc/expr.hpp"

namespace hhc {

// Strictly increasing nodes x_0 < x_1 < ... < x_n, n >= 1.
class Partition {
 public:
  explicit Partition(std::vector<double> points);

  std::span<const double> points() const noexcept { return points_; }
  std::size_t intervals() const noexcept { return points_.size() - 1; }
  double a() const noexcept { return points_.front(); }
  double b() const noexcept { return points_.back(); }

 private:
  std::vector<double> points_;
};

// x_i = a + i (b - a) / n.
Partition uniform_partition(double a, double b, std::size_t n);

double midpoint_rule(const Expression& f, const Partition& k);
double trapezoid_rule(const Expression& f, const Partition& k);

// `statement` uses the constant 1/2^((2p+1)/p) with h_i^2/2; `proofline`
// uses h_i^2/2^((3p+1)/p), the per-interval estimate summed directly.
enum class MidpointVariant { statement, proofline };

std::string to_string(MidpointVariant v);

double error_bound_midpoint(const Expression& f, const Partition& k, double p,
                            MidpointVariant variant = MidpointVariant::statement);

// beta(alpha+2, 2) / 6^(1/p) * sum h_i^3/2 (|f''(x_i)| + m alpha (alpha+5) |f''(x_{i+1}/m)|)
double error_bound_trapezoid(const Expression& f, const Partition& k, double alpha, double m, double p);

enum class QuadratureRule { midpoint, trapezoid };

std::string to_string(QuadratureRule r);

struct QuadratureParams {
  double p = 2.0;
  MidpointVariant variant = MidpointVariant::statement;
  double alpha = 1.0;
  double m = 1.0;
  double tol = 1e-9;
  bool check_hypothesis = true;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
};

struct QuadratureReport {
  QuadratureRule rule = QuadratureRule::midpoint;
  double value = 0.0;
  double reference = 0.0;
  double residual = 0.0;  // reference - value, signed
  double true_error = 0.0;
  double apriori_bound = 0.0;
  std::string bound_source;  // "P5", "P5-proofline" or "P6"
  bool holds = false;
  // nullopt when the hypothesis was not checked.
  std::optional<bool> hypothesis_verified;
  std::vector<std::string> notes;
};

QuadratureReport certified_integrate(const Expression& f, const Partition& k, QuadratureRule rule,
                                     const QuadratureParams& params = {});
QuadratureReport certified_integrate(const Expression& f, double a, double b, std::size_t n, QuadratureRule rule,
                                     const QuadratureParams& params = {});

}  // namespace hhc
