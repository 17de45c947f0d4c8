#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pairdecomp/fidelity.hpp"
#include "pairdecomp/states.hpp"

namespace pairdecomp {

/// X omega X* = (X^{-1})* rho X^{-1} = tau. X is positive definite on the
/// working subspace; outside a reduced support both X and x_inverse vanish.
struct GaugePair {
  Matrix x;
  Matrix x_inverse;
  StateOperator tau = StateOperator::zero(1);
  std::size_t working_dim = 0;
};

/// psi decomposes rho, phi decomposes omega. <psi_k|phi_j> = values[j] delta_jk
/// on the core block; values are decreasing and padded with zeros.
struct OptimalPair {
  Decomposition psi;
  Decomposition phi;
  std::vector<double> values;
  /// Number of leading pairs built from the spectral decomposition of tau.
  std::size_t core_length = 0;
  std::optional<GaugePair> gauge;
};

enum class Side { Rho, Omega };

struct ReductionStep {
  Side side = Side::Rho;
  Matrix projector;
  /// Operator on `side` before the projection.
  Matrix before;
  std::size_t rank_before = 0;
  std::size_t rank_after = 0;
};

struct SupportReductionTrace {
  std::vector<ReductionStep> steps;
  StateOperator final_rho = StateOperator::zero(1);
  StateOperator final_omega = StateOperator::zero(1);
};

/// Containment tolerance used to compare support projections.
inline constexpr double kSupportTol = 1e-8;

bool supports_equal(const StateOperator& a, const StateOperator& b,
                    double rank_tol = kDefaultRankTol);

GaugePair solve_gauge(const StateOperator& rho, const StateOperator& omega,
                      double rank_tol = kDefaultRankTol);

OptimalPair optimal_pair(const StateOperator& rho, const StateOperator& omega,
                         double rank_tol = kDefaultRankTol);

SupportReductionTrace support_reduction(const StateOperator& rho, const StateOperator& omega,
                                        double rank_tol = kDefaultRankTol);

OptimalPair optimal_pair_general(const StateOperator& rho, const StateOperator& omega,
                                 double rank_tol = kDefaultRankTol);

/// {rho, omega} -> {X rho X*, (X^{-1})* omega X^{-1}}
std::pair<StateOperator, StateOperator> transform_pair(const StateOperator& rho,
                                                       const StateOperator& omega,
                                                       const Matrix& x);

/// psi_j -> X psi_j, phi_j -> (X^{-1})* phi_j
std::pair<Decomposition, Decomposition> transform_decompositions(const Decomposition& psi,
                                                                 const Decomposition& phi,
                                                                 const Matrix& x);

/// Fidelity profile of (rho + c P0, omega + c Q0), P0/Q0 the null-space projections.
FidelityProfile regularized_profile(const StateOperator& rho, const StateOperator& omega,
                                    double c, double rank_tol = kDefaultRankTol);

/// Value at c = 0 of the polynomial in sqrt(c) through (c_i, values_i).
/// The regularized profile is analytic in sqrt(c), not in c.
double extrapolate_to_zero(std::span<const double> c, std::span<const double> values);

}  // namespace pairdecomp
