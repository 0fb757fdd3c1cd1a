#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hhc/error.hpp"
#include "hhc/means.hpp"
#include "hhc/rng.hpp"

using namespace hhc;

namespace {

// Textbook formulas, evaluated directly.
double naive_L(double a, double b) { return (b - a) / (std::log(b) - std::log(a)); }
double naive_I(double a, double b) { return std::exp(-1.0) * std::pow(std::pow(b, b) / std::pow(a, a), 1 / (b - a)); }
double naive_Lp(double a, double b, double p) {
  return std::pow((std::pow(b, p + 1) - std::pow(a, p + 1)) / ((p + 1) * (b - a)), 1 / p);
}

const std::vector<MeanKind> kAll = {MeanKind::arithmetic(),      MeanKind::geometric(),     MeanKind::harmonic(),
                                    MeanKind::logarithmic(),     MeanKind::identric(),      MeanKind::p_logarithmic(2),
                                    MeanKind::p_logarithmic(0.5), MeanKind::p_logarithmic(-2.5)};

}  // namespace

TEST_CASE("mean fixtures") {
  CHECK(mean(MeanKind::arithmetic(), 1, 3) == 2.0);
  CHECK(mean(MeanKind::geometric(), 4, 9) == 6.0);
  CHECK(mean(MeanKind::logarithmic(), 1, std::numbers::e) == doctest::Approx(std::numbers::e - 1).epsilon(1e-14));
  CHECK(mean(MeanKind::identric(), 2.5, 2.5) == 2.5);
  CHECK(mean(MeanKind::identric(), 1, 2) == doctest::Approx(4 / std::numbers::e).epsilon(1e-14));
  CHECK(mean(MeanKind::p_logarithmic(1), 1, 2) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK_THROWS_AS(mean(MeanKind::arithmetic(), 0, 1), DomainError);
  CHECK_THROWS_AS(MeanKind::p_logarithmic(0), UsageError);
  CHECK_THROWS_AS(MeanKind::p_logarithmic(-1), UsageError);
  CHECK(MeanKind::p_logarithmic_extended(0).tag == MeanKind::Tag::I);
  CHECK(MeanKind::p_logarithmic_extended(-1).tag == MeanKind::Tag::L);
}

TEST_CASE("means agree with the direct formulas") {
  const CounterRng rng(5);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const double a = rng.uniform(2 * i, 0.5, 5), b = a + rng.uniform(2 * i + 1, 0.1, 5);
    CHECK(mean(MeanKind::logarithmic(), a, b) == doctest::Approx(naive_L(a, b)).epsilon(1e-12));
    CHECK(mean(MeanKind::identric(), a, b) == doctest::Approx(naive_I(a, b)).epsilon(1e-11));
    for (double p : {-2.5, 0.5, 2.0, 5.0}) {
      CHECK(mean(MeanKind::p_logarithmic(p), a, b) == doctest::Approx(naive_Lp(a, b, p)).epsilon(1e-11));
    }
  }
}

TEST_CASE("symmetry, idempotence and homogeneity") {
  const CounterRng rng(42);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double a = rng.uniform_open(3 * i) * 100, b = rng.uniform_open(3 * i + 1) * 100;
    const double k = rng.uniform(3 * i + 2, 0.1, 10);
    for (const MeanKind& kind : kAll) {
      const double v = mean(kind, a, b);
      CHECK(mean(kind, b, a) == v);
      CHECK(std::fabs(mean(kind, a, a) - a) <= 1e-12 * a);
      CHECK(std::fabs(mean(kind, k * a, k * b) - k * v) <= 1e-12 * k * v);
    }
  }
}

TEST_CASE("mean chain") {
  const MeanChain c = check_mean_chain(1, 2);
  CHECK(c.holds);
  CHECK(c.H == doctest::Approx(4.0 / 3.0));
  CHECK(c.G == doctest::Approx(std::sqrt(2.0)));
  CHECK(c.L == doctest::Approx(1 / std::log(2.0)));
  CHECK(c.I == doctest::Approx(4 / std::numbers::e));
  CHECK(c.A == 1.5);
  const MeanChain near = check_mean_chain(1, 1 + 1e-9);
  CHECK(near.holds);
  CHECK(near.A - near.H < 1e-9);
  CHECK(check_mean_chain(2, 3).holds);
}

TEST_CASE("L_p monotonicity") {
  const std::vector<double> g1 = {-1, 0, 1, 2};
  CHECK(lp_monotonicity_check(1, 2, g1));
  CHECK(lp_monotonicity_check(3, 3, g1));
  const std::vector<double> g2 = {-1, 0, 3};
  CHECK(lp_monotonicity_check(1, 10, g2));
}

TEST_CASE("proposition fixtures") {
  const VerificationOutcome p3 = proposition_check({PropositionId::P3, 1, 2, 2});
  CHECK(p3.lhs == doctest::Approx(0.75 - std::log(2.0)).epsilon(1e-12));
  CHECK(p3.rhs == doctest::Approx(std::sqrt(1.0 / 30.0) * 9.0 / 16.0).epsilon(1e-12));
  CHECK(std::fabs(p3.lhs - 0.05685) < 1e-4);
  CHECK(std::fabs(p3.rhs - 0.10270) < 1e-4);
  CHECK(p3.holds);

  const VerificationOutcome p1 = proposition_check({PropositionId::P1, 1 - 1e-6, 1, 2});
  CHECK(p1.lhs < 1e-9);
  CHECK(p1.holds);

  // A/I with I(1,2) = 4/e; rhs = exp((1/(3 * 2^(5/2))) (3/4 + 4/3)).
  const VerificationOutcome p2 = proposition_check({PropositionId::P2, 1, 2, 2});
  CHECK(p2.lhs == doctest::Approx(1.5 * std::numbers::e / 4).epsilon(1e-13));
  CHECK(p2.rhs == doctest::Approx(std::exp((0.75 + 4.0 / 3.0) / (3 * std::pow(2.0, 2.5)))).epsilon(1e-13));
  REQUIRE(p2.alternate_rhs.has_value());
  CHECK(*p2.alternate_rhs == doctest::Approx(std::exp((0.75 + 4.0 / 3.0) / std::pow(3.2, 2.5))).epsilon(1e-13));
}

TEST_CASE("P4 is evaluated as printed and flagged when it fails") {
  // n = 2, p = 2: A(1, 4) - L_2^2(1, 2) = 5/2 - 7/3 = 1/6.
  const VerificationOutcome r = proposition_check({PropositionId::P4, 1, 2, 2, 2});
  CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(2.0 / (2 * std::pow(6.0, 1.5))).epsilon(1e-12));
  CHECK_FALSE(r.holds);
  CHECK(r.flagged_discrepancy.has_value());
}

TEST_CASE("propositions never abort on valid input") {
  for (PropositionId id : {PropositionId::P1, PropositionId::P2, PropositionId::P3, PropositionId::P4}) {
    for (double p : {1.1, 10.0, 200.0}) {
      CHECK_NOTHROW(proposition_check({id, 0.01, 99.0, p, 3}));
    }
  }
  CHECK_THROWS_AS(proposition_check({PropositionId::P1, 2, 1, 2}), DomainError);
  CHECK_THROWS_AS(proposition_check({PropositionId::P1, 1, 2, 1}), DomainError);
}
