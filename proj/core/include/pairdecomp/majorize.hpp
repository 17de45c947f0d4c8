#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pairdecomp/states.hpp"

namespace pairdecomp {

struct PartialSums {
  std::vector<double> sums;  // sums[m] over the m largest entries, m = 0..n
};

PartialSums partial_sums(std::span<const double> values);

/// First prefix length m (1-based) where the partial sums of p exceed those of
/// lambda, or the common length when the totals differ. Empty when lambda
/// majorizes p. Lists are zero-padded to equal length; entries below -tol
/// throw NegativeEntry.
std::optional<std::size_t> majorization_violation(std::span<const double> lambda,
                                                  std::span<const double> p,
                                                  double tol = 1e-10);

bool majorizes(std::span<const double> lambda, std::span<const double> p, double tol = 1e-10);

/// Decomposition of tau whose squared norms are p (in the given order), built
/// from the spectral decomposition by a chain of at most N-1 plane rotations,
/// each realizing one two-coordinate averaging step.
Decomposition nielsen_decomposition(const StateOperator& tau, std::span<const double> p);

/// sum_{j<m} lambda_j(tau) - sum_{j<m} |<chi_j|chi'_j>| with index pairing.
double overlap_gap(const Decomposition& d, const Decomposition& d_prime,
                   const StateOperator& tau, std::size_t m, double tol = 1e-8);

struct EqualityCertificate {
  bool holds = false;
  std::size_t m = 0;
  std::vector<complex> phases;
  double max_residual = 0.0;
  double gap = 0.0;
};

EqualityCertificate certify_equality(const Decomposition& d, const Decomposition& d_prime,
                                     const StateOperator& tau, std::size_t m,
                                     double tol = 1e-8, double rank_tol = kDefaultRankTol);

}  // namespace pairdecomp
