#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hhc/kernels.hpp"
#include "hhc/quadrature.hpp"

using namespace hhc;

TEST_CASE("uniform partitions") {
  auto pts = [](double a, double b, std::size_t n) {
    const Partition k = uniform_partition(a, b, n);
    return std::vector<double>(k.points().begin(), k.points().end());
  };
  CHECK(pts(0, 1, 2) == std::vector<double>{0, 0.5, 1});
  CHECK(pts(0, 1, 1) == std::vector<double>{0, 1});
  CHECK(pts(1, 3, 4) == std::vector<double>{1, 1.5, 2, 2.5, 3});
  CHECK(uniform_partition(0, 0.3, 7).b() == 0.3);
  CHECK_THROWS_AS(uniform_partition(0, 1, 0), UsageError);
  CHECK_THROWS_AS(Partition({0, 1, 1}), UsageError);
}

TEST_CASE("composite rules") {
  const Expression sq = parse("x^2");
  CHECK(midpoint_rule(sq, uniform_partition(0, 1, 1)) == 0.25);
  CHECK(midpoint_rule(sq, uniform_partition(0, 1, 2)) == doctest::Approx(5.0 / 16.0));
  CHECK(trapezoid_rule(sq, uniform_partition(0, 1, 1)) == 0.5);
  CHECK(trapezoid_rule(sq, uniform_partition(0, 1, 2)) == doctest::Approx(0.375));
  // int_{-1}^{2} (3x + 2) dx = 21/2
  const Expression lin = parse("3*x + 2");
  const Partition k({-1, 0.2, 0.3, 2});
  CHECK(midpoint_rule(lin, k) == doctest::Approx(10.5).epsilon(1e-14));
  CHECK(trapezoid_rule(lin, k) == doctest::Approx(10.5).epsilon(1e-14));
}

TEST_CASE("midpoint bound fixtures") {
  const Expression sq = parse("x^2");
  // 2^(-5/2) * (1/2)(0 + 2)
  CHECK(error_bound_midpoint(sq, uniform_partition(0, 1, 1), 2) == doctest::Approx(std::pow(2.0, -2.5)).epsilon(1e-14));
  // h^2 / 2^(7/2) * (0 + 2)
  CHECK(error_bound_midpoint(sq, uniform_partition(0, 1, 1), 2, MidpointVariant::proofline) ==
        doctest::Approx(2 * std::pow(2.0, -3.5)).epsilon(1e-14));
  const QuadratureReport r = certified_integrate(sq, 0, 1, 1, QuadratureRule::midpoint);
  CHECK(r.value == 0.25);
  CHECK(r.true_error == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(r.holds);
  CHECK(r.bound_source == "P5");

  const QuadratureReport e4 = certified_integrate(parse("exp(x)"), 0, 1, 4, QuadratureRule::midpoint);
  CHECK(e4.reference == doctest::Approx(std::numbers::e - 1).epsilon(1e-13));
  CHECK(e4.holds);
}

TEST_CASE("trapezoid bound fixtures") {
  // beta(3,2)/sqrt 6 * (1/2)(2 + 6*2)
  const double expected = (1.0 / 12.0) / std::sqrt(6.0) * 7.0;
  CHECK(error_bound_trapezoid(parse("x^2"), uniform_partition(0, 1, 1), 1, 1, 2) ==
        doctest::Approx(expected).epsilon(1e-13));
  const QuadratureReport r = certified_integrate(parse("x^2"), 0, 1, 1, QuadratureRule::trapezoid);
  CHECK(r.true_error == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(r.holds);
  CHECK(r.hypothesis_verified.value_or(false));

  QuadratureParams qp;
  const QuadratureReport c = certified_integrate(parse("x^3"), 0, 1, 2, QuadratureRule::trapezoid, qp);
  CHECK(c.reference == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(c.bound_source == "P6");
  CHECK(certified_integrate(parse("exp(x)"), 0, 1, 8, QuadratureRule::trapezoid).holds);
}

TEST_CASE("linear functions are integrated exactly") {
  for (QuadratureRule rule : {QuadratureRule::midpoint, QuadratureRule::trapezoid}) {
    const QuadratureReport r = certified_integrate(parse("3*x + 2"), -1, 2, 5, rule);
    CHECK(r.true_error < 1e-13);
    CHECK(r.holds);
  }
}

TEST_CASE("report recomposition and convex ordering") {
  for (const char* f : {"x^2", "exp(x)", "x^4", "1/(x+1)"}) {
    for (std::size_t n : {1u, 3u, 8u}) {
      const QuadratureReport mid = certified_integrate(parse(f), 0, 1, n, QuadratureRule::midpoint);
      const QuadratureReport trap = certified_integrate(parse(f), 0, 1, n, QuadratureRule::trapezoid);
      CHECK(std::fabs(mid.value + mid.residual - mid.reference) <= 1e-12);
      CHECK(std::fabs(trap.value + trap.residual - trap.reference) <= 1e-12);
      CHECK(trap.value >= mid.reference - 1e-12);
      CHECK(mid.value <= mid.reference + 1e-12);
    }
  }
}

TEST_CASE("second-order convergence") {
  for (const char* f : {"x^3", "exp(x)"}) {
    for (QuadratureRule rule : {QuadratureRule::midpoint, QuadratureRule::trapezoid}) {
      for (std::size_t k : {4u, 8u, 16u}) {
        QuadratureParams qp;
        qp.check_hypothesis = false;
        const double e1 = certified_integrate(parse(f), 0, 1, k, rule, qp).true_error;
        const double e2 = certified_integrate(parse(f), 0, 1, 2 * k, rule, qp).true_error;
        CHECK(e2 / e1 >= 0.2);
        CHECK(e2 / e1 <= 0.3);
      }
    }
  }
}

TEST_CASE("statement bound halves when n doubles") {
  for (std::size_t k : {4u, 8u}) {
    const double b1 = error_bound_midpoint(parse("exp(x)"), uniform_partition(0, 1, k), 2);
    const double b2 = error_bound_midpoint(parse("exp(x)"), uniform_partition(0, 1, 2 * k), 2);
    CHECK(b2 / b1 >= 0.45);
    CHECK(b2 / b1 <= 0.55);
  }
}

TEST_CASE("explicit partitions") {
  const Partition k({0, 0.1, 0.5, 1});
  const QuadratureReport r = certified_integrate(parse("exp(x)"), k, QuadratureRule::midpoint);
  CHECK(r.holds);
  // Per-interval statement bound: 2^(-5/2) sum h^2/2 (e^x_i + e^x_{i+1}).
  double oracle = 0;
  const double x[] = {0, 0.1, 0.5, 1};
  for (int i = 0; i < 3; ++i) oracle += (x[i + 1] - x[i]) * (x[i + 1] - x[i]) / 2 * (std::exp(x[i]) + std::exp(x[i + 1]));
  CHECK(r.apriori_bound == doctest::Approx(oracle * std::pow(2.0, -2.5)).epsilon(1e-13));
}

TEST_CASE("hypothesis failure is reported") {
  QuadratureParams qp;
  qp.alpha = 0.5;
  const QuadratureReport r = certified_integrate(parse("exp(x)"), 0, 1, 4, QuadratureRule::trapezoid, qp);
  REQUIRE(r.hypothesis_verified.has_value());
  CHECK_FALSE(*r.hypothesis_verified);
  CHECK_FALSE(r.notes.empty());
}
