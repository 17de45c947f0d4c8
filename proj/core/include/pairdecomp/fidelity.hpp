#pragma once

#include <cstddef>
#include <vector>

#include "pairdecomp/states.hpp"

namespace pairdecomp {

/// Decreasing eigenvalues of (sqrt(rho) omega sqrt(rho))^{1/2} and their
/// cumulative sums: cumulative[m] = F+_m, m = 0..d.
struct FidelityProfile {
  std::vector<double> sigma;
  std::vector<double> cumulative;

  std::size_t dim() const noexcept { return sigma.size(); }
  /// F+_m, with F+_m = F+_d for m >= d.
  double plus(std::size_t m) const;
  double fidelity() const { return cumulative.back(); }
  /// F_k = F - F+_k
  double k_fidelity(std::size_t k) const { return fidelity() - plus(k); }
};

FidelityProfile make_profile(std::vector<double> sigma);

FidelityProfile fidelity_spectrum(const StateOperator& rho, const StateOperator& omega);

double partial_fidelity_plus(const StateOperator& rho, const StateOperator& omega, std::size_t m);

double fidelity(const StateOperator& rho, const StateOperator& omega);

double k_fidelity(const StateOperator& rho, const StateOperator& omega, std::size_t k);

}  // namespace pairdecomp
