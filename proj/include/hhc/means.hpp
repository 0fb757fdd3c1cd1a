#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hhc {

struct MeanKind {
  enum class Tag { A, G, H, L, I, Lp };

  Tag tag = Tag::A;
  double p = 1.0;  // Lp only

  static MeanKind arithmetic() { return {Tag::A, 1.0}; }
  static MeanKind geometric() { return {Tag::G, 1.0}; }
  static MeanKind harmonic() { return {Tag::H, 1.0}; }
  static MeanKind logarithmic() { return {Tag::L, 1.0}; }
  static MeanKind identric() { return {Tag::I, 1.0}; }
  // p-logarithmic mean; p = -1 and p = 0 are rejected (those are L and I).
  static MeanKind p_logarithmic(double p);
  // Like p_logarithmic but maps p = -1 to L and p = 0 to I.
  static MeanKind p_logarithmic_extended(double p);

  std::string name() const;
};

// Symmetric in (a, b); mean(k, a, a) = a. Throws DomainError for
// non-positive arguments.
double mean(const MeanKind& kind, double a, double b);

struct MeanChain {
  double H, G, L, I, A;
  bool holds;
};

// H <= G <= L <= I <= A within an absolute slack of 1e-12.
MeanChain check_mean_chain(double a, double b);

// L_p non-decreasing along the sorted grid (p = -1 is L, p = 0 is I).
bool lp_monotonicity_check(double a, double b, std::span<const double> p_grid);

enum class PropositionId { P1, P2, P3, P4 };

std::string to_string(PropositionId id);
PropositionId proposition_from_string(const std::string& name);

struct PropositionInstance {
  PropositionId id = PropositionId::P1;
  double a = 1.0;
  double b = 2.0;
  double p = 2.0;
  int n = 2;  // P4 only

  // 0 < a < b, p > 1.
  void validate() const;
  double q() const { return p / (p - 1.0); }
};

struct VerificationOutcome {
  PropositionId id = PropositionId::P1;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  // Second reading of an ambiguous constant, when there is one.
  std::optional<double> alternate_rhs;
  std::optional<std::string> flagged_discrepancy;
};

// Evaluates both sides as printed. Never throws for a valid instance: a
// failing or non-finite comparison becomes a flagged outcome.
VerificationOutcome proposition_check(const PropositionInstance& inst, double tol = 1e-9);

}  // namespace hhc
