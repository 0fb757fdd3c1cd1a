#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "hhc/convexity.hpp"
#include "hhc/expr.hpp"

namespace hhc {

// Conjugate Hölder exponents, 1/p + 1/q = 1.
class HolderPair {
 public:
  // Requires p > 1; q = p / (p - 1).
  static HolderPair from_p(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  HolderPair(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

// Euler Beta function via log-gamma. Throws DomainError unless x, y > 0.
double beta(double x, double y);

struct IntegralResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

struct IntegrationOptions {
  // Converged once the global error estimate is below tol * max(1, |value|).
  double tol = 1e-12;
  int max_depth = 60;
  std::size_t max_subdivisions = 50000;
  // Substitute t = a + (b-a)(3u^2 - 2u^3) to soften endpoint singularities.
  bool endpoint_transform = false;
};

// Globally adaptive 7/15-point Gauss-Kronrod bisection. Endpoints are never
// evaluated. DomainError from the integrand propagates.
IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const IntegrationOptions& opts = {});
IntegralResult integrate_adaptive(const Expression& f, double a, double b, const IntegrationOptions& opts = {});

// Value of the integral, or ConvergenceError if it did not converge.
double reference_integral(const Expression& f, double a, double b, double tol = 1e-12);
double reference_integral(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

// The five t-moments of h^alpha on (0, 1):
//   M0 = int h^a,            M1 = int (1-t) h^a,      M2 = int t(1-t) h^a,
//   C2 = int (1 - t/q) h^(a/q),   C4 = int t^(1/q) (1 - t/q) h^(a/q).
enum class MomentKind { M0, M1, M2, C2, C4 };

std::string to_string(MomentKind kind);

struct KernelMoment {
  enum class Method { closed_form, adaptive };

  MomentKind kind = MomentKind::M0;
  double value = 0.0;
  Method method = Method::closed_form;
  double abs_error_estimate = 0.0;
};

// Closed form for identity, power and constant-one weights, adaptive
// quadrature otherwise. `hp` is required for C2 and C4. Divergent
// moments raise ConvergenceError.
KernelMoment kernel_moment(MomentKind kind, const HFunction& h, double alpha,
                           const std::optional<HolderPair>& hp = std::nullopt, double tol = 1e-12);

}  // namespace hhc
