#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cli/io.hpp"

namespace pairdecomp::cli {

struct GlobalOptions {
  double rank_tol = kDefaultRankTol;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

struct Outcome {
  int exit_code = kExitOk;
  Json report;
};

inline const std::vector<double> kDefaultRegularization{1e-2, 1e-4, 1e-6};

/// Empty `regularize` skips the convergence table.
Outcome cmd_spectrum(const LoadedMatrix& rho, const LoadedMatrix& omega, const GlobalOptions& g,
                     const std::vector<double>& regularize = {});

Outcome cmd_decompose(const LoadedMatrix& rho, const LoadedMatrix& omega, const GlobalOptions& g);

struct VerifyOptions {
  std::size_t m = 1;
  std::size_t samples = 100;
  std::size_t psi_length = 0;  // 0: dimension
  std::size_t phi_length = 0;
  unsigned threads = 1;
};

Outcome cmd_verify(const LoadedMatrix& rho, const LoadedMatrix& omega, const GlobalOptions& g,
                   const VerifyOptions& v);

Outcome cmd_nielsen(const LoadedMatrix& tau, const std::vector<double>& weights, const GlobalOptions& g);

struct ConcavityOptions {
  std::size_t dim = 3;
  std::size_t m = 1;
  std::size_t trials = 1000;
};

Outcome cmd_concavity_search(const ConcavityOptions& c, const GlobalOptions& g);

Outcome cmd_regularize(const LoadedMatrix& rho, const LoadedMatrix& omega, const std::vector<double>& c_list,
                       const GlobalOptions& g);

/// Parses argv, runs one subcommand, writes the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pairdecomp::cli
