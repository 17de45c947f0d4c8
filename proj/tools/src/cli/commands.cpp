#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <string>

#include "CLI11.hpp"

namespace pairdecomp::cli {
namespace {

Json tolerances(const GlobalOptions& g) {
  return {{"rank_tol", g.rank_tol},
          {"tol", g.tol},
          {"support_tol", kSupportTol},
          {"oracle_tol", kOracleTol}};
}

Json make_report(const char* command, Json inputs, Json results, const GlobalOptions& g) {
  return {{"command", command},
          {"inputs", std::move(inputs)},
          {"results", std::move(results)},
          {"tolerances", tolerances(g)},
          {"version", kVersion}};
}

void require_same_dim(const StateOperator& a, const StateOperator& b) {
  if (a.dim() != b.dim())
    throw CliError(kExitValidation, "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                        std::to_string(b.dim()));
}

Json pair_inputs(const LoadedMatrix& rho, const LoadedMatrix& omega) {
  return {{"rho", input_entry(rho)}, {"omega", input_entry(omega)}};
}

Json profile_json(const FidelityProfile& p) {
  std::vector<double> k;
  for (std::size_t i = 0; i < p.cumulative.size(); ++i) k.push_back(p.k_fidelity(i));
  return {{"sigma", p.sigma},
          {"partial_fidelity_plus", p.cumulative},
          {"fidelity", p.fidelity()},
          {"k_fidelity", k}};
}

std::vector<double> cumulative(const std::vector<double>& values) {
  std::vector<double> out{0.0};
  for (double v : values) out.push_back(out.back() + v);
  return out;
}

void validate_c_list(const std::vector<double>& c) {
  if (c.empty()) throw CliError(kExitValidation, "regularization list is empty");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i] > 0.0)) throw CliError(kExitValidation, "regularization parameters must be positive");
    if (i > 0 && !(c[i] < c[i - 1]))
      throw CliError(kExitValidation, "regularization parameters must be decreasing");
  }
}

Json regularization_table(const StateOperator& rho, const StateOperator& omega,
                          const std::vector<double>& c_list, const GlobalOptions& g) {
  validate_c_list(c_list);
  const std::size_t d = rho.dim();
  const std::vector<double> exact = cumulative(optimal_pair_general(rho, omega, g.rank_tol).values);

  std::vector<std::vector<double>> rows;
  Json row_json = Json::array();
  for (double c : c_list) {
    const FidelityProfile p = regularized_profile(rho, omega, c, g.rank_tol);
    rows.push_back(p.cumulative);
    row_json.push_back({{"c", c}, {"partial_fidelity_plus", p.cumulative}});
  }

  std::vector<double> extrapolated(d + 1), band(d + 1);
  std::vector<std::vector<double>> deviations(rows.size(), std::vector<double>(d + 1));
  bool monotone = true;
  bool consistent = true;
  for (std::size_t m = 0; m <= d; ++m) {
    std::vector<double> column;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      column.push_back(rows[i][m]);
      deviations[i][m] = std::abs(rows[i][m] - exact[m]);
      if (i > 0 && deviations[i][m] > deviations[i - 1][m] + g.tol) monotone = false;
    }
    // the smallest c values sit deepest in the asymptotic regime
    const std::size_t first = c_list.size() > 3 ? c_list.size() - 3 : 0;
    extrapolated[m] = extrapolate_to_zero(std::span(c_list).subspan(first), std::span(column).subspan(first));
    band[m] = std::abs(extrapolated[m] - column.back());
    if (std::abs(extrapolated[m] - exact[m]) > band[m] + g.tol) consistent = false;
  }
  return {{"c", c_list},
          {"rows", row_json},
          {"exact", exact},
          {"extrapolated", extrapolated},
          {"deviations", deviations},
          {"band", band},
          {"monotone", monotone},
          {"consistent", consistent}};
}

// Largest |<psi_k|phi_j> - lambda_j delta_jk| over entries touching the core block.
double biorthogonality_residual(const OptimalPair& op) {
  double worst = 0.0;
  const std::size_t n = op.psi.length();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      if (k >= op.core_length && j >= op.core_length) continue;
      const complex expected = k == j ? complex{op.values[j]} : complex{};
      worst = std::max(worst, std::abs(inner(op.psi[k], op.phi[j]) - expected));
    }
  return worst;
}

double pairing_residual(const OptimalPair& op) {
  double worst = 0.0;
  for (std::size_t j = 0; j < op.values.size(); ++j)
    worst = std::max(worst, std::abs(inner(op.psi[j], op.phi[j]) - op.values[j]));
  return worst;
}

const char* side_name(Side s) { return s == Side::Rho ? "rho" : "omega"; }

}  // namespace

Outcome cmd_spectrum(const LoadedMatrix& rho_file, const LoadedMatrix& omega_file, const GlobalOptions& g,
                     const std::vector<double>& regularize) {
  const StateOperator rho = as_state(rho_file);
  const StateOperator omega = as_state(omega_file);
  require_same_dim(rho, omega);
  Json results = profile_json(fidelity_spectrum(rho, omega));
  results["dim"] = rho.dim();
  if (!regularize.empty()) results["regularization"] = regularization_table(rho, omega, regularize, g);
  return {kExitOk, make_report("spectrum", pair_inputs(rho_file, omega_file), std::move(results), g)};
}

Outcome cmd_decompose(const LoadedMatrix& rho_file, const LoadedMatrix& omega_file, const GlobalOptions& g) {
  const StateOperator rho = as_state(rho_file);
  const StateOperator omega = as_state(omega_file);
  require_same_dim(rho, omega);

  const SupportReductionTrace trace = [&] {
    try {
      return support_reduction(rho, omega, g.rank_tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BothZero) throw;
      return SupportReductionTrace{};
    }
  }();
  const OptimalPair op = optimal_pair_general(rho, omega, g.rank_tol);
  const FidelityProfile profile = fidelity_spectrum(rho, omega);

  Json partial = Json::array();
  double sum = 0.0;
  double worst_delta = 0.0;
  for (std::size_t m = 1; m <= op.values.size(); ++m) {
    sum += op.values[m - 1];
    const double fp = profile.plus(m);
    worst_delta = std::max(worst_delta, std::abs(sum - fp));
    partial.push_back({{"m", m}, {"sum", sum}, {"partial_fidelity_plus", fp}, {"delta", sum - fp}});
  }

  const double rec_rho = (reconstruct(op.psi).matrix() - rho.matrix()).frobenius_norm();
  const double rec_omega = (reconstruct(op.phi).matrix() - omega.matrix()).frobenius_norm();
  const double bio = biorthogonality_residual(op);
  const double pairing = pairing_residual(op);
  const double scale = std::max(1.0, rho.matrix().frobenius_norm() + omega.matrix().frobenius_norm());
  const bool ok = std::max({rec_rho, rec_omega, bio, pairing, worst_delta}) <= g.tol * scale;

  Json steps = Json::array();
  for (const ReductionStep& s : trace.steps)
    steps.push_back({{"side", side_name(s.side)}, {"rank_before", s.rank_before}, {"rank_after", s.rank_after}});

  Json gauge = nullptr;
  if (op.gauge) {
    gauge = {{"x", matrix_to_json(op.gauge->x)},
             {"x_inverse", matrix_to_json(op.gauge->x_inverse)},
             {"tau", matrix_to_json(op.gauge->tau.matrix())},
             {"working_dim", op.gauge->working_dim}};
  }

  Json results{{"dim", rho.dim()},
               {"values", op.values},
               {"core_length", op.core_length},
               {"psi", decomposition_to_json(op.psi)},
               {"phi", decomposition_to_json(op.phi)},
               {"gauge", gauge},
               {"support_reduction", steps},
               {"partial_sums", partial},
               {"residuals",
                {{"reconstruction_rho", rec_rho},
                 {"reconstruction_omega", rec_omega},
                 {"biorthogonality", bio},
                 {"pairing", pairing},
                 {"partial_sum", worst_delta}}},
               {"within_tolerance", ok}};
  return {ok ? kExitOk : kExitViolation,
          make_report("decompose", pair_inputs(rho_file, omega_file), std::move(results), g)};
}

Outcome cmd_verify(const LoadedMatrix& rho_file, const LoadedMatrix& omega_file, const GlobalOptions& g,
                   const VerifyOptions& v) {
  const StateOperator rho = as_state(rho_file);
  const StateOperator omega = as_state(omega_file);
  require_same_dim(rho, omega);
  if (v.samples == 0) throw CliError(kExitValidation, "samples must be at least 1");

  SearchOptions opt;
  opt.m = v.m;
  opt.psi_length = v.psi_length;
  opt.phi_length = v.phi_length;
  opt.samples = v.samples;
  opt.seed = g.seed;
  opt.threads = v.threads;
  opt.rank_tol = g.rank_tol;
  SearchReport r;
  try {
    r = random_search(rho, omega, opt);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MTooLarge || e.code() == ErrorCode::LengthTooShort ||
        e.code() == ErrorCode::TooShort || e.code() == ErrorCode::InvalidArgument)
      throw CliError(kExitValidation, e.what());
    throw;
  }

  // thread count is left out: the report does not depend on it
  Json results{{"m", r.m},
               {"samples", r.samples},
               {"seed", g.seed},
               {"lengths", {v.psi_length ? v.psi_length : rho.dim(), v.phi_length ? v.phi_length : rho.dim()}},
               {"best_value", r.best_value},
               {"best_sample", r.best_sample},
               {"best_seed", r.best_seed},
               {"constructive_value", r.constructive_value},
               {"best_random_value", r.best_random_value},
               {"upper_bound", r.upper_bound},
               {"violation", r.violation},
               {"attained", r.attained}};
  const bool ok = !r.violation && r.attained;
  return {ok ? kExitOk : kExitViolation,
          make_report("verify", pair_inputs(rho_file, omega_file), std::move(results), g)};
}

Outcome cmd_nielsen(const LoadedMatrix& tau_file, const std::vector<double>& weights, const GlobalOptions& g) {
  const StateOperator tau = as_state(tau_file);
  if (weights.empty()) throw CliError(kExitValidation, "weights are empty");
  for (double w : weights)
    if (!(w >= 0.0)) throw CliError(kExitValidation, "weights must be nonnegative");

  std::vector<double> spectrum = hermitian_eig(tau.matrix()).eigenvalues;
  for (double& l : spectrum) l = std::max(l, 0.0);
  const Json inputs{{"tau", input_entry(tau_file)}};
  Json results{{"weights", weights}, {"spectrum", spectrum}};

  const auto violated = majorization_violation(spectrum, weights);
  if (violated) {
    results["majorized"] = false;
    results["violated_prefix"] = *violated;
    return {kExitNotMajorized, make_report("nielsen", inputs, std::move(results), g)};
  }

  Decomposition d;
  try {
    d = nielsen_decomposition(tau, weights);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotMajorized) throw;
    results["majorized"] = false;
    results["violated_prefix"] = nullptr;
    return {kExitNotMajorized, make_report("nielsen", inputs, std::move(results), g)};
  }

  std::vector<double> errors;
  double worst = 0.0;
  for (std::size_t j = 0; j < d.length(); ++j) {
    errors.push_back(d.norm_squared(j) - weights[j]);
    worst = std::max(worst, std::abs(errors.back()));
  }
  const double rec = (reconstruct(d).matrix() - tau.matrix()).frobenius_norm();
  results["majorized"] = true;
  results["decomposition"] = decomposition_to_json(d);
  results["norm_errors"] = errors;
  results["max_norm_error"] = worst;
  results["reconstruction_residual"] = rec;
  return {kExitOk, make_report("nielsen", inputs, std::move(results), g)};
}

Outcome cmd_concavity_search(const ConcavityOptions& c, const GlobalOptions& g) {
  if (c.dim < 1) throw CliError(kExitValidation, "dim must be positive");
  if (c.m < 1 || c.m > c.dim) throw CliError(kExitValidation, "m must lie in 1..dim");

  struct Extreme {
    double defect = std::numeric_limits<double>::infinity();
    std::size_t trial = 0;
    double t = 0.0;
  };
  Extreme concave, convex;
  for (std::size_t i = 0; i < c.trials; ++i) {
    Rng rng = make_rng(g.seed, i);
    std::uniform_int_distribution<std::size_t> rank(1, c.dim);
    std::uniform_real_distribution<double> mix(0.0, 1.0);
    const StateOperator r1 = random_state(c.dim, rank(rng), rng);
    const StateOperator w1 = random_state(c.dim, rank(rng), rng);
    const StateOperator r2 = random_state(c.dim, rank(rng), rng);
    const StateOperator w2 = random_state(c.dim, rank(rng), rng);
    const double t = mix(rng);
    const StateOperator rm = make_state_unchecked(r1.matrix() * complex{t} + r2.matrix() * complex{1 - t});
    const StateOperator wm = make_state_unchecked(w1.matrix() * complex{t} + w2.matrix() * complex{1 - t});
    const double ends = t * partial_fidelity_plus(r1, w1, c.m) + (1 - t) * partial_fidelity_plus(r2, w2, c.m);
    const double mid = partial_fidelity_plus(rm, wm, c.m);
    if (mid - ends < concave.defect) concave = {mid - ends, i, t};
    if (ends - mid < convex.defect) convex = {ends - mid, i, t};
  }

  auto extreme_json = [&](const Extreme& e) -> Json {
    if (c.trials == 0) return nullptr;
    return {{"min_defect", e.defect}, {"trial", e.trial}, {"t", e.t}};
  };
  Json results{{"dim", c.dim},
               {"m", c.m},
               {"trials", c.trials},
               {"seed", g.seed},
               {"concavity", extreme_json(concave)},
               {"convexity", extreme_json(convex)}};
  return {kExitOk, make_report("concavity-search", Json::object(), std::move(results), g)};
}

Outcome cmd_regularize(const LoadedMatrix& rho_file, const LoadedMatrix& omega_file,
                       const std::vector<double>& c_list, const GlobalOptions& g) {
  const StateOperator rho = as_state(rho_file);
  const StateOperator omega = as_state(omega_file);
  require_same_dim(rho, omega);
  Json results = regularization_table(rho, omega, c_list, g);
  results["dim"] = rho.dim();
  return {kExitOk, make_report("regularize", pair_inputs(rho_file, omega_file), std::move(results), g)};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal simultaneous decompositions of operator pairs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  GlobalOptions g;
  app.add_option("--rank-tol", g.rank_tol, "relative eigenvalue cutoff for rank and support")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "residual tolerance for self-checks")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "base seed for random sampling");

  std::string rho_path, omega_path, tau_path;
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("rho", rho_path, "matrix file for rho")->required();
    sub->add_option("omega", omega_path, "matrix file for omega")->required();
  };

  bool spectrum_regularize = false;
  std::vector<double> spectrum_c = kDefaultRegularization;
  CLI::App* spectrum = app.add_subcommand("spectrum", "fidelity spectrum and partial fidelities");
  add_pair(spectrum);
  spectrum->add_flag("--regularize", spectrum_regularize, "append a regularization table");
  spectrum->add_option("--c", spectrum_c, "decreasing positive parameters for --regularize")
      ->delimiter(',');

  CLI::App* decompose = app.add_subcommand("decompose", "optimal decomposition pair");
  add_pair(decompose);

  VerifyOptions v;
  std::vector<std::size_t> lengths;
  CLI::App* verify = app.add_subcommand("verify", "randomized search against the upper bound");
  add_pair(verify);
  verify->add_option("--m", v.m, "pairing size")->check(CLI::PositiveNumber);
  verify->add_option("--samples", v.samples, "random decomposition pairs")->check(CLI::PositiveNumber);
  verify->add_option("--lengths", lengths, "decomposition lengths psi,phi")->delimiter(',')->expected(2);
  verify->add_option("--threads", v.threads, "worker threads")->check(CLI::PositiveNumber);

  std::vector<double> weights;
  CLI::App* nielsen = app.add_subcommand("nielsen", "decomposition with prescribed squared norms");
  nielsen->add_option("tau", tau_path, "matrix file")->required();
  nielsen->add_option("--weights", weights, "target squared norms")->delimiter(',')->required();

  ConcavityOptions conc;
  CLI::App* concavity = app.add_subcommand("concavity-search", "extremal mixing defects of F+_m");
  concavity->add_option("--dim", conc.dim, "dimension")->check(CLI::PositiveNumber);
  concavity->add_option("--m", conc.m, "partial sum size")->check(CLI::PositiveNumber);
  concavity->add_option("--trials", conc.trials, "random mixtures");

  std::vector<double> c_list = kDefaultRegularization;
  CLI::App* regularize = app.add_subcommand("regularize", "convergence of the regularized profile");
  add_pair(regularize);
  regularize->add_option("--c", c_list, "decreasing positive parameters")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    Outcome o;
    if (spectrum->parsed()) {
      o = cmd_spectrum(load_matrix_file(rho_path), load_matrix_file(omega_path), g,
                       spectrum_regularize ? spectrum_c : std::vector<double>{});
    } else if (decompose->parsed()) {
      o = cmd_decompose(load_matrix_file(rho_path), load_matrix_file(omega_path), g);
    } else if (verify->parsed()) {
      if (lengths.size() == 2) {
        v.psi_length = lengths[0];
        v.phi_length = lengths[1];
      }
      o = cmd_verify(load_matrix_file(rho_path), load_matrix_file(omega_path), g, v);
    } else if (nielsen->parsed()) {
      o = cmd_nielsen(load_matrix_file(tau_path), weights, g);
    } else if (concavity->parsed()) {
      o = cmd_concavity_search(conc, g);
    } else {
      o = cmd_regularize(load_matrix_file(rho_path), load_matrix_file(omega_path), c_list, g);
    }
    out << render(o.report);
    if (o.exit_code == kExitViolation) err << "self-check failed; see report\n";
    if (o.exit_code == kExitNotMajorized) err << "weights are not majorized by the spectrum\n";
    return o.exit_code;
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace pairdecomp::cli
