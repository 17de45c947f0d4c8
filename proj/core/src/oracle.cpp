#include "pairdecomp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "pairdecomp/error.hpp"
#include "pairdecomp/fidelity.hpp"
#include "pairdecomp/optimal.hpp"

namespace pairdecomp {
namespace {

// Unit-capacity assignment network source -> rows -> cols -> sink with costs
// -w. After k shortest-path augmentations the flow is a maximum-weight
// matching of cardinality k.
class AssignmentNetwork {
 public:
  explicit AssignmentNetwork(const RealMatrix& w)
      : rows_(w.rows), cols_(w.cols), graph_(rows_ + cols_ + 2) {
    for (std::size_t i = 0; i < rows_; ++i) add_edge(source(), row(i), 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) add_edge(row(i), col(j), -w(i, j));
    for (std::size_t j = 0; j < cols_; ++j) add_edge(col(j), sink(), 0.0);
  }

  /// Returns false when no augmenting path is left.
  bool augment(double& gained) {
    const std::size_t n = graph_.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<std::pair<std::size_t, std::size_t>> parent(n, {n, 0});
    dist[source()] = 0.0;
    // Bellman-Ford; the residual graph has no negative cycles.
    for (std::size_t round = 0; round < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] == inf) continue;
        for (std::size_t e = 0; e < graph_[u].size(); ++e) {
          const Edge& edge = graph_[u][e];
          if (edge.cap == 0) continue;
          const double nd = dist[u] + edge.cost;
          if (nd < dist[edge.to] - 1e-14) {
            dist[edge.to] = nd;
            parent[edge.to] = {u, e};
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[sink()] == inf) return false;
    for (std::size_t v = sink(); v != source();) {
      const auto [u, e] = parent[v];
      Edge& edge = graph_[u][e];
      edge.cap -= 1;
      graph_[v][edge.rev].cap += 1;
      v = u;
    }
    gained = -dist[sink()];
    return true;
  }

  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < rows_; ++i)
      for (const Edge& edge : graph_[row(i)])
        if (edge.to >= col(0) && edge.to < sink() && edge.cap == 0) out.emplace_back(i, edge.to - col(0));
    return out;
  }

 private:
  struct Edge {
    std::size_t to;
    std::size_t rev;
    int cap;
    double cost;
  };

  std::size_t source() const { return 0; }
  std::size_t row(std::size_t i) const { return 1 + i; }
  std::size_t col(std::size_t j) const { return 1 + rows_ + j; }
  std::size_t sink() const { return 1 + rows_ + cols_; }

  void add_edge(std::size_t from, std::size_t to, double cost) {
    graph_[from].push_back({to, graph_[to].size(), 1, cost});
    graph_[to].push_back({from, graph_[from].size() - 1, 0, -cost});
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Edge>> graph_;
};

struct Candidate {
  double value = -1.0;
  std::size_t index = 0;
};

Candidate better(const Candidate& a, const Candidate& b) {
  if (a.value > b.value) return a;
  if (b.value > a.value) return b;
  return a.index <= b.index ? a : b;
}

Decomposition padded(const Decomposition& d, std::size_t m) {
  return d.length() >= m ? d : pad_to_length(d, m);
}

}  // namespace

Matching max_weight_matching(const RealMatrix& weights, std::size_t m) {
  if (m > std::min(weights.rows, weights.cols))
    throw Error(ErrorCode::MTooLarge, "matching cardinality exceeds the smaller side");
  AssignmentNetwork net(weights);
  Matching out;
  for (std::size_t k = 0; k < m; ++k) {
    double gained = 0.0;
    if (!net.augment(gained)) break;
    out.value += gained;
  }
  out.pairs = net.matched_pairs();
  return out;
}

std::vector<double> matching_profile(const RealMatrix& weights) {
  AssignmentNetwork net(weights);
  std::vector<double> profile{0.0};
  const std::size_t limit = std::min(weights.rows, weights.cols);
  for (std::size_t k = 0; k < limit; ++k) {
    double gained = 0.0;
    if (!net.augment(gained)) break;
    profile.push_back(profile.back() + gained);
  }
  return profile;
}

double matching_value(const Decomposition& psi, const Decomposition& phi, std::size_t m) {
  if (m > std::min(psi.length(), phi.length()))
    throw Error(ErrorCode::MTooLarge, "m exceeds the shorter decomposition");
  return max_weight_matching(overlap_values(psi, phi), m).value;
}

SearchReport random_search(const StateOperator& rho, const StateOperator& omega,
                           const SearchOptions& options) {
  if (rho.dim() != omega.dim()) throw Error(ErrorCode::DimensionMismatch, "random_search operands");
  if (options.samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be at least 1");
  const std::size_t d = rho.dim();
  const std::size_t m = options.m;
  const std::size_t n_psi = options.psi_length ? options.psi_length : d;
  const std::size_t n_phi = options.phi_length ? options.phi_length : d;

  SearchReport report;
  report.m = m;
  report.samples = options.samples;
  report.upper_bound = fidelity_spectrum(rho, omega).plus(m);

  const OptimalPair opt = optimal_pair_general(rho, omega, options.rank_tol);
  report.constructive_value = matching_value(padded(opt.psi, m), padded(opt.phi, m), m);

  auto evaluate = [&](std::size_t index) {
    Rng rng = make_rng(options.seed + index);
    const Decomposition psi = random_decomposition(rho, n_psi, rng, options.rank_tol);
    const Decomposition phi = random_decomposition(omega, n_phi, rng, options.rank_tol);
    return matching_value(padded(psi, m), padded(phi, m), m);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, options.samples));
  std::vector<Candidate> partial(threads);
  std::vector<std::exception_ptr> failures(threads);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t i = 1 + t; i <= options.samples; i += threads) {
        partial[t] = better(partial[t], Candidate{evaluate(i), i});
      }
    } catch (...) {
      failures[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  Candidate best_random;
  for (const auto& c : partial) best_random = better(best_random, c);
  report.best_random_value = best_random.value;

  const Candidate best = better(Candidate{report.constructive_value, 0}, best_random);
  report.best_value = best.value;
  report.best_sample = best.index;
  report.best_seed = options.seed + best.index;
  report.violation = report.best_value > report.upper_bound + kOracleTol;
  report.attained = report.constructive_value >= report.upper_bound - kOracleTol;
  return report;
}

}  // namespace pairdecomp
