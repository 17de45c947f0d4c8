#include "pairdecomp/fidelity.hpp"

#include <algorithm>

#include "pairdecomp/error.hpp"

namespace pairdecomp {

double FidelityProfile::plus(std::size_t m) const {
  return cumulative[std::min(m, sigma.size())];
}

FidelityProfile make_profile(std::vector<double> sigma) {
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  FidelityProfile p;
  p.cumulative.reserve(sigma.size() + 1);
  p.cumulative.push_back(0.0);
  for (double s : sigma) p.cumulative.push_back(p.cumulative.back() + s);
  p.sigma = std::move(sigma);
  return p;
}

// The eigenvalues of (sqrt(rho) omega sqrt(rho))^{1/2} are the singular values
// of K = sqrt(omega) sqrt(rho), since K* K = sqrt(rho) omega sqrt(rho). Working
// with K avoids taking square roots of round-off eigenvalues.
FidelityProfile fidelity_spectrum(const StateOperator& rho, const StateOperator& omega) {
  if (rho.dim() != omega.dim()) throw Error(ErrorCode::DimensionMismatch, "fidelity operands");
  const Matrix k = psd_sqrt(omega.matrix()) * psd_sqrt(rho.matrix());
  return make_profile(singular_values(k));
}

double partial_fidelity_plus(const StateOperator& rho, const StateOperator& omega, std::size_t m) {
  return fidelity_spectrum(rho, omega).plus(m);
}

double fidelity(const StateOperator& rho, const StateOperator& omega) {
  return fidelity_spectrum(rho, omega).fidelity();
}

double k_fidelity(const StateOperator& rho, const StateOperator& omega, std::size_t k) {
  return fidelity_spectrum(rho, omega).k_fidelity(k);
}

}  // namespace pairdecomp
