#include "pairdecomp/optimal.hpp"

#include <algorithm>
#include <cmath>

#include "pairdecomp/error.hpp"

namespace pairdecomp {
namespace {

void require_same_dim(const StateOperator& a, const StateOperator& b, const char* what) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, what);
}

// || (I - P_outer) P_inner ||_F small: the inner support lies in the outer one.
bool contained(const RankInfo& inner, const RankInfo& outer) {
  if (inner.rank == 0) return true;
  const Matrix leak = outer.null_projection * inner.support_projection;
  return leak.frobenius_norm() <= kSupportTol * std::sqrt(static_cast<double>(inner.rank));
}

Matrix compress(const Matrix& a, const Matrix& basis) {
  return (basis.adjoint() * a * basis).hermitian_part();
}

Matrix expand(const Matrix& a, const Matrix& basis) {
  return (basis * a * basis.adjoint()).hermitian_part();
}

std::size_t rank_of(const Matrix& a, double rank_tol) {
  return numerical_rank(hermitian_eig(a).eigenvalues, rank_tol);
}

// Optimal pair for strictly positive definite operands.
OptimalPair core_pair(const StateOperator& rho, const StateOperator& omega, double rank_tol) {
  GaugePair gauge = solve_gauge(rho, omega, rank_tol);
  const HermitianEig eig = hermitian_eig(gauge.tau.matrix());
  const std::size_t n = rho.dim();

  OptimalPair out;
  out.psi = Decomposition(n);
  out.phi = Decomposition(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lambda = std::max(eig.eigenvalues[j], 0.0);
    const Vector chi = scaled(eig.eigenvectors.column(j), std::sqrt(lambda));
    out.psi.push_back(gauge.x * chi);
    out.phi.push_back(gauge.x_inverse * chi);
    out.values.push_back(lambda);
  }
  out.core_length = n;
  out.gauge = std::move(gauge);
  return out;
}

std::vector<Vector> nonzero_vectors(const Decomposition& d) {
  std::vector<Vector> out;
  for (const auto& v : d.vectors())
    if (norm(v) > 0.0) out.push_back(v);
  return out;
}

}  // namespace

bool supports_equal(const StateOperator& a, const StateOperator& b, double rank_tol) {
  require_same_dim(a, b, "support comparison");
  const RankInfo ia = support_info(a.matrix(), rank_tol);
  const RankInfo ib = support_info(b.matrix(), rank_tol);
  return ia.rank == ib.rank && contained(ia, ib);
}

GaugePair solve_gauge(const StateOperator& rho, const StateOperator& omega, double rank_tol) {
  require_same_dim(rho, omega, "solve_gauge operands");
  const HermitianEig eo = hermitian_eig(omega.matrix());
  const HermitianEig er = hermitian_eig(rho.matrix());
  for (const HermitianEig* e : {&eo, &er}) {
    const double lmax = e->eigenvalues.front();
    if (!(lmax > 0.0) || e->eigenvalues.back() <= rank_tol * lmax) {
      throw Error(ErrorCode::Singular, "solve_gauge needs positive definite operands");
    }
  }

  // X*X = omega^{-1/2} (omega^{1/2} rho omega^{1/2})^{1/2} omega^{-1/2}
  const Matrix w_half = hermitian_function(eo, [](double l) { return std::sqrt(l); });
  const Matrix w_inv_half = hermitian_function(eo, [](double l) { return 1.0 / std::sqrt(l); });
  const Matrix middle = psd_sqrt((w_half * rho.matrix() * w_half).hermitian_part());
  const HermitianEig eg = hermitian_eig((w_inv_half * middle * w_inv_half).hermitian_part());
  if (!(eg.eigenvalues.back() > 0.0)) {
    throw Error(ErrorCode::Singular, "gauge square is not positive definite");
  }

  GaugePair g;
  g.x = hermitian_function(eg, [](double l) { return std::sqrt(l); });
  g.x_inverse = hermitian_function(eg, [](double l) { return 1.0 / std::sqrt(l); });
  g.tau = make_state_unchecked(g.x * omega.matrix() * g.x);
  g.working_dim = rho.dim();
  return g;
}

OptimalPair optimal_pair(const StateOperator& rho, const StateOperator& omega, double rank_tol) {
  require_same_dim(rho, omega, "optimal_pair operands");
  const std::size_t d = rho.dim();
  const RankInfo ir = support_info(rho.matrix(), rank_tol);
  const RankInfo io = support_info(omega.matrix(), rank_tol);
  if (ir.rank != io.rank || !contained(ir, io)) {
    throw Error(ErrorCode::UnequalSupports, "optimal_pair needs equal supports");
  }

  if (ir.rank == 0) {
    OptimalPair out;
    out.psi = pad_to_length(Decomposition(d), d);
    out.phi = out.psi;
    out.values.assign(d, 0.0);
    return out;
  }
  if (ir.rank == d) return core_pair(rho, omega, rank_tol);

  // Work on the common support in the orthonormal coordinates of rho's support.
  const Matrix basis = Matrix::from_columns(ir.basis);
  const OptimalPair reduced = core_pair(make_state_unchecked(compress(rho.matrix(), basis)),
                                        make_state_unchecked(compress(omega.matrix(), basis)),
                                        rank_tol);
  OptimalPair out;
  out.psi = Decomposition(d);
  out.phi = Decomposition(d);
  for (std::size_t j = 0; j < reduced.core_length; ++j) {
    out.psi.push_back(basis * reduced.psi[j]);
    out.phi.push_back(basis * reduced.phi[j]);
  }
  out.values = reduced.values;
  out.core_length = reduced.core_length;
  out.psi = pad_to_length(out.psi, d);
  out.phi = pad_to_length(out.phi, d);
  out.values.resize(d, 0.0);

  const GaugePair& rg = *reduced.gauge;
  GaugePair g;
  g.x = basis * rg.x * basis.adjoint();
  g.x_inverse = basis * rg.x_inverse * basis.adjoint();
  g.tau = make_state_unchecked(expand(rg.tau.matrix(), basis));
  g.working_dim = rg.working_dim;
  out.gauge = std::move(g);
  return out;
}

SupportReductionTrace support_reduction(const StateOperator& rho, const StateOperator& omega,
                                        double rank_tol) {
  require_same_dim(rho, omega, "support_reduction operands");
  const std::size_t d = rho.dim();
  Matrix cur_rho = rho.matrix();
  Matrix cur_omega = omega.matrix();

  SupportReductionTrace trace;
  for (std::size_t step = 0; step <= 2 * d; ++step) {
    const RankInfo ir = support_info(cur_rho, rank_tol);
    const RankInfo io = support_info(cur_omega, rank_tol);
    if (ir.rank == 0 || io.rank == 0) {
      throw Error(ErrorCode::BothZero, "support reduction annihilated the pair");
    }
    const bool rho_inside = contained(ir, io);
    const bool omega_inside = contained(io, ir);
    if (rho_inside && omega_inside) {
      trace.final_rho = make_state_unchecked(std::move(cur_rho));
      trace.final_omega = make_state_unchecked(std::move(cur_omega));
      return trace;
    }
    if (step == 2 * d) break;

    ReductionStep rs;
    if (!rho_inside) {
      rs.side = Side::Rho;
      rs.projector = io.support_projection;
      rs.before = cur_rho;
      rs.rank_before = ir.rank;
      cur_rho = (rs.projector * cur_rho * rs.projector).hermitian_part();
      rs.rank_after = rank_of(cur_rho, rank_tol);
    } else {
      rs.side = Side::Omega;
      rs.projector = ir.support_projection;
      rs.before = cur_omega;
      rs.rank_before = io.rank;
      cur_omega = (rs.projector * cur_omega * rs.projector).hermitian_part();
      rs.rank_after = rank_of(cur_omega, rank_tol);
    }
    trace.steps.push_back(std::move(rs));
  }
  throw Error(ErrorCode::NoConvergence, "support reduction exceeded 2d steps");
}

OptimalPair optimal_pair_general(const StateOperator& rho, const StateOperator& omega,
                                 double rank_tol) {
  require_same_dim(rho, omega, "optimal_pair_general operands");
  const std::size_t d = rho.dim();

  std::vector<Vector> psi_core, phi_core, psi_extra, phi_extra;
  std::vector<double> core_values;
  std::optional<GaugePair> gauge;

  std::optional<SupportReductionTrace> trace;
  try {
    trace = support_reduction(rho, omega, rank_tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BothZero) throw;
  }

  if (!trace) {
    psi_extra = nonzero_vectors(spectral_decomposition(rho));
    phi_extra = nonzero_vectors(spectral_decomposition(omega));
  } else {
    OptimalPair core = optimal_pair(trace->final_rho, trace->final_omega, rank_tol);
    for (std::size_t j = 0; j < core.core_length; ++j) {
      psi_core.push_back(core.psi[j]);
      phi_core.push_back(core.phi[j]);
      core_values.push_back(core.values[j]);
    }
    gauge = std::move(core.gauge);

    // Undo the projections latest first. A decomposition {v} of Q S Q lifts to
    // {S (QSQ)^+ v} plus the spectral vectors of S - S (QSQ)^+ S; the lifted
    // vectors keep their overlaps with the other side (which lives in range Q)
    // and the completion vectors are orthogonal to it.
    for (auto it = trace->steps.rbegin(); it != trace->steps.rend(); ++it) {
      const Matrix& s = it->before;
      const Matrix qsq = (it->projector * s * it->projector).hermitian_part();
      const Matrix pinv = psd_pinv(qsq, rank_tol);
      const Matrix lift = s * pinv;
      const HermitianEig rest = hermitian_eig((s - s * pinv * s).hermitian_part());
      const double floor = round_off_floor(d, hermitian_eig(s).eigenvalues.front());

      auto& core_side = it->side == Side::Rho ? psi_core : phi_core;
      auto& extra_side = it->side == Side::Rho ? psi_extra : phi_extra;
      for (auto& v : core_side) v = lift * v;
      for (auto& v : extra_side) v = lift * v;
      for (std::size_t e = 0; e < d; ++e) {
        const double l = rest.eigenvalues[e];
        if (l > floor) extra_side.push_back(scaled(rest.eigenvectors.column(e), std::sqrt(l)));
      }
    }
  }

  // Layout: [core | psi completions | zeros] against [core | zeros | phi completions].
  const std::size_t r = psi_core.size();
  const std::size_t a = psi_extra.size();
  const std::size_t b = phi_extra.size();
  const std::size_t n = std::max(r + a + b, d);

  std::vector<Vector> psi = psi_core;
  psi.insert(psi.end(), psi_extra.begin(), psi_extra.end());
  psi.resize(n, Vector(d));

  std::vector<Vector> phi = phi_core;
  phi.resize(r + a, Vector(d));
  phi.insert(phi.end(), phi_extra.begin(), phi_extra.end());
  phi.resize(n, Vector(d));

  OptimalPair out;
  out.psi = Decomposition(d, std::move(psi));
  out.phi = Decomposition(d, std::move(phi));
  out.values = std::move(core_values);
  out.values.resize(n, 0.0);
  out.core_length = r;
  out.gauge = std::move(gauge);
  return out;
}

std::pair<StateOperator, StateOperator> transform_pair(const StateOperator& rho,
                                                       const StateOperator& omega,
                                                       const Matrix& x) {
  require_same_dim(rho, omega, "transform_pair operands");
  if (!x.square() || x.rows() != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "gauge matrix size");
  const Matrix x_inv = inverse(x);
  return {make_state_unchecked(x * rho.matrix() * x.adjoint()),
          make_state_unchecked(x_inv.adjoint() * omega.matrix() * x_inv)};
}

std::pair<Decomposition, Decomposition> transform_decompositions(const Decomposition& psi,
                                                                 const Decomposition& phi,
                                                                 const Matrix& x) {
  if (psi.dim() != phi.dim() || !x.square() || x.rows() != psi.dim())
    throw Error(ErrorCode::DimensionMismatch, "transform_decompositions sizes");
  const Matrix x_inv_adj = inverse(x).adjoint();
  Decomposition out_psi(psi.dim());
  Decomposition out_phi(phi.dim());
  for (const auto& v : psi.vectors()) out_psi.push_back(x * v);
  for (const auto& v : phi.vectors()) out_phi.push_back(x_inv_adj * v);
  return {std::move(out_psi), std::move(out_phi)};
}

FidelityProfile regularized_profile(const StateOperator& rho, const StateOperator& omega,
                                    double c, double rank_tol) {
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "regularization parameter must be positive");
  require_same_dim(rho, omega, "regularized_profile operands");
  const Matrix p0 = support_info(rho.matrix(), rank_tol).null_projection;
  const Matrix q0 = support_info(omega.matrix(), rank_tol).null_projection;
  return fidelity_spectrum(make_state_unchecked(rho.matrix() + c * p0),
                           make_state_unchecked(omega.matrix() + c * q0));
}

double extrapolate_to_zero(std::span<const double> c, std::span<const double> values) {
  if (c.empty() || c.size() != values.size())
    throw Error(ErrorCode::InvalidArgument, "extrapolation needs matching, nonempty lists");
  std::vector<double> t;
  for (double ci : c) {
    if (!(ci > 0.0)) throw Error(ErrorCode::InvalidArgument, "regularization parameter must be positive");
    t.push_back(std::sqrt(ci));
  }
  // Neville's scheme evaluated at t = 0
  std::vector<double> p(values.begin(), values.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i) {
      const double dt = t[i] - t[i + level];
      if (dt == 0.0) throw Error(ErrorCode::InvalidArgument, "duplicate regularization parameter");
      p[i] = (t[i] * p[i + 1] - t[i + level] * p[i]) / dt;
    }
  return p[0];
}

}  // namespace pairdecomp
