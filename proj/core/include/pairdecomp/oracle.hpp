#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "pairdecomp/states.hpp"

namespace pairdecomp {

struct Matching {
  double value = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Maximum-weight matching of cardinality exactly m in a nonnegative weight
/// matrix (successive shortest paths on the assignment network).
Matching max_weight_matching(const RealMatrix& weights, std::size_t m);

/// Optimal values for every cardinality 0..min(rows, cols) from one run.
std::vector<double> matching_profile(const RealMatrix& weights);

/// max over size-m injective pairings j -> k of sum |<psi_j|phi_k>|.
double matching_value(const Decomposition& psi, const Decomposition& phi, std::size_t m);

struct SearchOptions {
  std::size_t m = 1;
  std::size_t psi_length = 0;  // 0: use the dimension
  std::size_t phi_length = 0;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double rank_tol = kDefaultRankTol;
};

struct SearchReport {
  std::size_t m = 0;
  std::size_t samples = 0;
  double best_value = 0.0;
  /// Sample 0 is the constructive optimum, samples 1..N are random draws.
  std::size_t best_sample = 0;
  std::uint64_t best_seed = 0;
  double constructive_value = 0.0;
  double best_random_value = 0.0;
  double upper_bound = 0.0;
  bool violation = false;
  bool attained = false;
};

inline constexpr double kOracleTol = 1e-8;

SearchReport random_search(const StateOperator& rho, const StateOperator& omega,
                           const SearchOptions& options);

}  // namespace pairdecomp
