#include "hhc/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "hhc/kernels.hpp"

namespace hhc {

Partition::Partition(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw UsageError("a partition needs at least two points");
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (!(points_[i] < points_[i + 1])) throw UsageError("partition points must be strictly increasing");
  }
  for (double x : points_) {
    if (!std::isfinite(x)) throw UsageError("partition points must be finite");
  }
}

Partition uniform_partition(double a, double b, std::size_t n) {
  if (n == 0) throw UsageError("uniform partition requires n >= 1");
  if (!(a < b)) throw UsageError("uniform partition requires a < b");
  std::vector<double> pts(n + 1);
  const double w = b - a;
  for (std::size_t i = 0; i <= n; ++i) pts[i] = a + static_cast<double>(i) * w / static_cast<double>(n);
  pts[n] = b;
  return Partition(std::move(pts));
}

double midpoint_rule(const Expression& f, const Partition& k) {
  const auto x = k.points();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) sum += f(0.5 * (x[i] + x[i + 1])) * (x[i + 1] - x[i]);
  return sum;
}

double trapezoid_rule(const Expression& f, const Partition& k) {
  const auto x = k.points();
  double sum = 0.0;
  double left = f(x[0]);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double right = f(x[i + 1]);
    sum += 0.5 * (left + right) * (x[i + 1] - x[i]);
    left = right;
  }
  return sum;
}

std::string to_string(MidpointVariant v) { return v == MidpointVariant::statement ? "statement" : "proofline"; }

std::string to_string(QuadratureRule r) { return r == QuadratureRule::midpoint ? "midpoint" : "trapezoid"; }

double error_bound_midpoint(const Expression& f, const Partition& k, double p, MidpointVariant variant) {
  if (!(p > 1.0)) throw UsageError("p must be > 1");
  const Expression df = differentiate(f, 1);
  const auto x = k.points();
  double sum = 0.0;
  double left = std::fabs(df(x[0]));
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double right = std::fabs(df(x[i + 1]));
    const double h = x[i + 1] - x[i];
    if (variant == MidpointVariant::statement) {
      sum += h * h / 2.0 * (left + right);
    } else {
      sum += h * h / std::pow(2.0, (3.0 * p + 1.0) / p) * (left + right);
    }
    left = right;
  }
  if (variant == MidpointVariant::statement) sum /= std::pow(2.0, (2.0 * p + 1.0) / p);
  return sum;
}

double error_bound_trapezoid(const Expression& f, const Partition& k, double alpha, double m, double p) {
  if (!(p > 1.0)) throw UsageError("p must be > 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  if (!(m > 0.0 && m <= 1.0)) throw UsageError("m must lie in (0, 1]");
  const Expression d2f = differentiate(f, 2);
  const auto x = k.points();
  const double weight = m * alpha * (alpha + 5.0);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = x[i + 1] - x[i];
    sum += h * h * h / 2.0 * (std::fabs(d2f(x[i])) + weight * std::fabs(d2f(x[i + 1] / m)));
  }
  return beta(alpha + 2.0, 2.0) / std::pow(6.0, 1.0 / p) * sum;
}

namespace {

void check_hypothesis(const Expression& f, const Partition& k, QuadratureRule rule, const QuadratureParams& params,
                      QuadratureReport& report) {
  try {
    MembershipReport mr;
    if (rule == QuadratureRule::midpoint) {
      mr = check_membership(abs(differentiate(f, 1)), ConvexityClass::make(Sense::plain_convex),
                            DomainInterval(k.a(), k.b()), params.samples, params.seed, params.tol);
    } else {
      const ConvexityClass cls =
          ConvexityClass::make(Sense::alpha_m, HFunction::identity(), params.alpha, params.m, 1.0);
      const DomainInterval dom = params.m == 1.0 ? DomainInterval(k.a(), k.b())
                                                 : DomainInterval(std::min(0.0, k.a()), k.b() / params.m);
      mr = check_membership(abs(differentiate(f, 2)), cls, dom, params.samples, params.seed, params.tol);
    }
    report.hypothesis_verified = !mr.found_counterexample();
    if (mr.found_counterexample()) report.notes.emplace_back("hypothesis counterexample found");
  } catch (const DomainError& e) {
    report.hypothesis_verified = false;
    report.notes.emplace_back(std::string("hypothesis check not evaluable: ") + e.what());
  } catch (const PreconditionError& e) {
    report.hypothesis_verified = false;
    report.notes.emplace_back(std::string("hypothesis precondition failed: ") + e.what());
  }
}

}  // namespace

QuadratureReport certified_integrate(const Expression& f, const Partition& k, QuadratureRule rule,
                                     const QuadratureParams& params) {
  QuadratureReport r;
  r.rule = rule;
  if (rule == QuadratureRule::midpoint) {
    r.value = midpoint_rule(f, k);
    r.apriori_bound = error_bound_midpoint(f, k, params.p, params.variant);
    r.bound_source = params.variant == MidpointVariant::statement ? "P5" : "P5-proofline";
  } else {
    r.value = trapezoid_rule(f, k);
    r.apriori_bound = error_bound_trapezoid(f, k, params.alpha, params.m, params.p);
    r.bound_source = "P6";
  }
  r.reference = reference_integral(f, k.a(), k.b(), 1e-12);
  r.residual = r.reference - r.value;
  r.true_error = std::fabs(r.residual);
  r.holds = r.true_error <= r.apriori_bound + params.tol;
  if (params.check_hypothesis) check_hypothesis(f, k, rule, params, r);
  return r;
}

QuadratureReport certified_integrate(const Expression& f, double a, double b, std::size_t n, QuadratureRule rule,
                                     const QuadratureParams& params) {
  return certified_integrate(f, uniform_partition(a, b, n), rule, params);
}

}  // namespace hhc
