#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hhc/hh_bounds.hpp"
#include "hhc/rng.hpp"

using namespace hhc;

namespace {

BoundInstance instance(Rule rule, const char* f, double a, double b, std::optional<double> p = std::nullopt) {
  BoundInstance inst;
  inst.rule = rule;
  inst.f = parse(f);
  inst.a = a;
  inst.b = b;
  inst.cls = ConvexityClass::make(Sense::h_alpha_m, HFunction::identity(), 1.0, 1.0);
  if (p && is_holder_rule(rule)) inst.hp = HolderPair::from_p(*p);
  return inst;
}

// Rebuilds rhs from the recorded components only.
double recompose(const BoundReport& r) {
  auto c = [&](const char* n) { return r.component(n); };
  const double L = c("b-a"), m = c("m");
  switch (r.rule) {
    case Rule::T1: {
      const double A = c("|f'(a)|"), B = c("|f'(b)|"), C = c("|f'((a+b)/(2m))|");
      return L / 4 * ((A + B + 2 * m * C) * c("M1") + m / 2 * C);
    }
    case Rule::T2: {
      const double q = c("q"), Cq = std::pow(c("|f'((a+b)/(2m))|"), q);
      auto term = [&](double X) { return std::pow((std::pow(X, q) - m * Cq) * c("M0") + m * Cq, 1 / q); };
      return c("prefactor") * (term(c("|f'(a)|")) + term(c("|f'(b)|")));
    }
    case Rule::C1: {
      const double C = c("|f'((a+b)/(2m))|");
      return c("prefactor") * ((c("|f'(a)|") + c("|f'(b)|") - 2 * m * C) * c("M0(alpha/q)") + 2 * m * C);
    }
    case Rule::T3: {
      const double q = c("q"), Cq = std::pow(c("|f'((a+b)/(2m))|"), q);
      auto term = [&](double X) { return std::pow((std::pow(X, q) - m * Cq) * c("M1") + m / 2 * Cq, 1 / q); };
      return c("prefactor") * (term(c("|f'(a)|")) + term(c("|f'(b)|")));
    }
    case Rule::C2: {
      const double C = c("|f'((a+b)/(2m))|");
      return c("prefactor") * ((c("|f'(a)|") + c("|f'(b)|") - 2 * m * C) * c("C2") + m * C);
    }
    case Rule::T4: {
      const double A = c("|f''(a)|"), D = c("|f''(b/m)|");
      return L * L / 2 * ((A - m * D) * c("M2") + m / 6 * D);
    }
    case Rule::T5: {
      const double q = c("q"), A = std::pow(c("|f''(a)|"), q), D = std::pow(c("|f''(b/m)|"), q);
      return L * L / 2 * c("beta(p+1,p+1)^(1/p)") * std::pow((A - m * D) * c("M0") + m * D, 1 / q);
    }
    case Rule::C3: {
      const double A = c("|f''(a)|"), D = c("|f''(b/m)|");
      return L * L / 2 * c("beta(p+1,p+1)^(1/p)") * ((A - m * D) * c("M0(alpha/q)") + m * D);
    }
    case Rule::T6: {
      const double q = c("q"), A = std::pow(c("|f''(a)|"), q), D = std::pow(c("|f''(b/m)|"), q);
      return c("prefactor") * std::pow((A - m * D) * c("M2") + m / 6 * D, 1 / q);
    }
    case Rule::C4: {
      const double A = c("|f''(a)|"), D = c("|f''(b/m)|");
      return c("prefactor") * ((A - m * D) * c("C4") + m / 6 * D);
    }
  }
  return NAN;
}

}  // namespace

TEST_CASE("Hermite-Hadamard chain") {
  const HHChain sq = hh_chain(parse("x^2"), 0, 1);
  CHECK(sq.left == doctest::Approx(0.25));
  CHECK(sq.mid == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(sq.right == doctest::Approx(0.5));
  const HHChain c = hh_chain(parse("3.5"), -1, 2);
  CHECK(c.left == 3.5);
  CHECK(c.mid == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(c.right == 3.5);
  const double e = std::numbers::e;
  const HHChain ex = hh_chain(parse("exp(x)"), 0, 1);
  CHECK(ex.left == doctest::Approx(std::sqrt(e)).epsilon(1e-14));
  CHECK(ex.mid == doctest::Approx(e - 1).epsilon(1e-13));
  CHECK(ex.right == doctest::Approx((1 + e) / 2).epsilon(1e-14));
}

TEST_CASE("identity residuals") {
  CHECK(lemma1_residual(parse("2*x+1"), 0, 3) < 1e-12);
  CHECK(lemma1_residual(parse("x^2"), 0, 1) <= 1e-10);
  CHECK(lemma1_residual(parse("exp(x)"), 0, 2) <= 1e-10);
  CHECK(lemma2_residual(parse("2*x+1"), 0, 3) < 1e-12);
  CHECK(lemma2_residual(parse("exp(x)"), 0, 1) <= 1e-10);
  const CounterRng rng(3);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const double a = rng.uniform(2 * i, -3, 3), b = a + rng.uniform(2 * i + 1, 0.1, 4);
    CHECK(lemma2_residual(parse("x^2"), a, b) <= 1e-12);
    CHECK(trapezoid_deviation(parse("x^2"), a, b) == doctest::Approx((b - a) * (b - a) / 6).epsilon(1e-12));
  }
}

TEST_CASE("deviations") {
  CHECK(midpoint_deviation(parse("x^2"), 0, 1) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(midpoint_deviation(parse("5*x-2"), 0, 1) < 1e-14);
  CHECK(midpoint_deviation(parse("1/x"), 1, 2) == doctest::Approx(std::log(2.0) - 2.0 / 3.0).epsilon(1e-12));
  CHECK(trapezoid_deviation(parse("x^2"), 0, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(trapezoid_deviation(parse("exp(x)"), 0, 1) ==
        doctest::Approx((3 - std::numbers::e) / 2).epsilon(1e-12));
}

TEST_CASE("bound fixtures") {
  const BoundReport t1 = evaluate_bound(instance(Rule::T1, "x^2", 0, 1));
  CHECK(t1.rhs == doctest::Approx(7.0 / 24.0).epsilon(1e-14));
  CHECK(t1.lhs == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(t1.holds);

  // (1/(4 sqrt 3)) (sqrt(1/2) + sqrt(5/2)), recomputed by hand.
  const BoundReport t2 = evaluate_bound(instance(Rule::T2, "x^2", 0, 1, 2.0));
  const double t2_oracle = (std::sqrt(0.5) + std::sqrt(2.5)) / (4 * std::sqrt(3.0));
  CHECK(t2.rhs == doctest::Approx(t2_oracle).epsilon(1e-14));
  CHECK(t2.rhs == doctest::Approx(0.330280).epsilon(1e-6));

  const BoundReport t4 = evaluate_bound(instance(Rule::T4, "x^2", 0, 1));
  CHECK(std::fabs(t4.margin) <= 1e-12);
  CHECK(t4.rhs == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  const BoundReport t5 = evaluate_bound(instance(Rule::T5, "x^2", 0, 1, 2.0));
  CHECK(t5.rhs == doctest::Approx(1 / std::sqrt(30.0)).epsilon(1e-13));
  CHECK(t5.holds);
}

TEST_CASE("T1 variants") {
  BoundInstance inst = instance(Rule::T1, "x^2", 0, 1);
  inst.t1_variant = T1Variant::derived_tight;
  // (1/4) [(0 + 2 - 2) / 6 + 1] = 1/4
  const BoundReport r = evaluate_bound(inst);
  CHECK(r.rhs == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.parameters.find("derived_tight") != std::string::npos);
}

TEST_CASE("verify fixtures") {
  const double e = std::numbers::e;
  const BoundReport t1 = verify(instance(Rule::T1, "exp(x)", 0, 1));
  CHECK(t1.hypothesis == HypothesisStatus::verified);
  CHECK(t1.lhs == doctest::Approx(e - 1 - std::sqrt(e)).epsilon(1e-12));
  CHECK(t1.rhs == doctest::Approx(0.25 * ((1 + e + 2 * std::sqrt(e)) / 6 + std::sqrt(e) / 2)).epsilon(1e-13));
  CHECK(t1.holds);

  const BoundReport t4 = verify(instance(Rule::T4, "x^2", 0, 1));
  CHECK(t4.holds);
  CHECK(std::fabs(t4.margin) <= 1e-12);

  const BoundReport t6 = verify(instance(Rule::T6, "x^3", 0, 2, 2.0));
  // (0 + 8)/2 - (1/2) int_0^2 x^3 dx = 4 - 2
  CHECK(t6.lhs == doctest::Approx(2.0).epsilon(1e-12));
  // (4 / (2 sqrt 6)) [(0 - 144)/12 + 144/6]^(1/2) = 2 sqrt 2
  CHECK(t6.rhs == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(t6.holds);
}

TEST_CASE("hypothesis violations are reported, not hidden") {
  // f' = 4x(3 - x^2) is concave on (0, sqrt 3), so |f'| is not convex there.
  const BoundReport r = verify(instance(Rule::T1, "6*x^2 - x^4", 0.1, 2));
  CHECK(r.hypothesis == HypothesisStatus::unverified);
  REQUIRE(r.membership.has_value());
  CHECK(r.membership->found_counterexample());
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("linear functions give zero deviation for every rule") {
  for (Rule rule : kAllRules) {
    const BoundReport r = evaluate_bound(instance(rule, "3*x + 1", 0.5, 2, 2.0));
    CAPTURE(to_string(rule));
    CHECK(r.lhs < 1e-12);
    CHECK(r.holds);
  }
}

TEST_CASE("components recompose the bound") {
  const CounterRng rng(11);
  for (Rule rule : kAllRules) {
    for (const char* f : {"x^2", "x^3", "exp(x)", "-ln(x)", "1/x"}) {
      for (std::uint64_t i = 0; i < 5; ++i) {
        const double a = rng.uniform(2 * i, 0.1, 3), b = a + rng.uniform(2 * i + 1, 0.1, 2);
        const BoundReport r = evaluate_bound(instance(rule, f, a, b, 1.5 + i));
        CAPTURE(to_string(rule));
        CAPTURE(f);
        CHECK(std::fabs(recompose(r) - r.rhs) <= 1e-12 * std::max(1.0, std::fabs(r.rhs)));
      }
    }
  }
}

TEST_CASE("T1 scaling in the interval length for x^2") {
  for (double c : {0.5, 1.0, 2.0}) {
    const BoundReport big = evaluate_bound(instance(Rule::T1, "x^2", c - 1, c + 1));
    const BoundReport half = evaluate_bound(instance(Rule::T1, "x^2", c - 0.5, c + 0.5));
    CHECK(half.rhs <= big.rhs / 2 + 1e-12);
    CHECK(half.lhs == doctest::Approx(big.lhs / 4).epsilon(1e-12));
  }
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(instance(Rule::T2, "x^2", 0, 1).validate(), UsageError);
  CHECK_THROWS_AS(instance(Rule::T1, "x^2", 1, 0).validate(), UsageError);
  CHECK(rule_from_string("C4") == Rule::C4);
  CHECK_THROWS_AS(rule_from_string("T7"), UsageError);
  BoundInstance m = instance(Rule::T1, "x^2", 1, 2);
  m.cls = ConvexityClass::make(Sense::h_alpha_m, HFunction::identity(), 1.0, 0.5);
  const DomainInterval dom = hypothesis_domain(m);
  CHECK(dom.lo == 0.0);
  CHECK(dom.hi == 4.0);
  CHECK_THROWS_AS(evaluate_bound(instance(Rule::T1, "ln(x)", 0, 1)), DomainError);
}
