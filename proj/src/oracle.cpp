#include "ocsm/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "ocsm/density.hpp"
#include "ocsm/link_graph.hpp"

namespace ocsm {

namespace {

using Mask = std::uint64_t;

// Connected induced subgraphs of a <= 64 node graph, enumerated once each by
// growing from their smallest member through exclusive neighborhoods (ESU).
class ConnectedSetSearch {
 public:
  ConnectedSetSearch(std::vector<Mask> adjacency, std::uint32_t k, std::size_t limit, bool collect)
      : adj_(std::move(adjacency)), k_(k), limit_(limit), collect_(collect) {}

  // Sets whose smallest member is `root`.
  void run_root(int root, std::vector<Mask>& found) {
    const Mask above = root == 63 ? 0 : (~Mask{0} << (root + 1));
    const Mask sub = Mask{1} << root;
    extend(sub, adj_[root] & above, sub | adj_[root], above, found);
  }

  std::size_t count() const { return count_.load(); }
  bool overflowed() const { return overflow_.load(); }

 private:
  void extend(Mask sub, Mask ext, Mask closed, Mask above, std::vector<Mask>& found) {
    if (overflow_.load(std::memory_order_relaxed)) return;
    if (feasible(sub)) {
      if (count_.fetch_add(1, std::memory_order_relaxed) + 1 > limit_) {
        overflow_.store(true);
        return;
      }
      if (collect_) found.push_back(sub);
    }
    while (ext) {
      const int w = std::countr_zero(ext);
      ext &= ext - 1;
      const Mask exclusive = adj_[w] & ~closed & above;
      extend(sub | (Mask{1} << w), ext | exclusive, closed | adj_[w], above, found);
    }
  }

  bool feasible(Mask sub) const {
    for (Mask rest = sub; rest; rest &= rest - 1) {
      if (static_cast<std::uint32_t>(std::popcount(adj_[std::countr_zero(rest)] & sub)) < k_) return false;
    }
    return true;
  }

  std::vector<Mask> adj_;
  std::uint32_t k_;
  std::size_t limit_;
  bool collect_;
  std::atomic<std::size_t> count_{0};
  std::atomic<bool> overflow_{false};
};

struct Enumeration {
  std::vector<NodeSet> sets;
  std::size_t count = 0;
};

Enumeration enumerate(const Graph& g, std::uint32_t k, const OracleLimits& limits, bool collect) {
  if (limits.max_graph_nodes > 64) throw std::invalid_argument("oracle: max_graph_nodes cannot exceed 64");
  if (g.node_count() > limits.max_graph_nodes) {
    throw std::invalid_argument("oracle: graph has " + std::to_string(g.node_count()) + " nodes, limit is " +
                                std::to_string(limits.max_graph_nodes));
  }
  const NodeSet core = k_core(g, std::max<std::uint32_t>(k, 1));
  const int n = static_cast<int>(core.size());
  std::vector<Mask> adjacency(core.size(), 0);
  for (int i = 0; i < n; ++i) {
    for (NodeId u : g.neighbors(core[i])) {
      auto it = std::lower_bound(core.begin(), core.end(), u);
      if (it != core.end() && *it == u) adjacency[i] |= Mask{1} << (it - core.begin());
    }
  }

  ConnectedSetSearch search(std::move(adjacency), k, limits.max_candidates, collect);
  std::vector<std::vector<Mask>> per_root(core.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int root = 0; root < n; ++root) search.run_root(root, per_root[root]);

  if (search.overflowed()) {
    throw EnumerationLimitError("oracle: more than " + std::to_string(limits.max_candidates) +
                                    " feasible subgraphs; enumeration aborted",
                                search.count());
  }

  Enumeration out;
  out.count = search.count();
  for (const auto& masks : per_root) {
    for (Mask m : masks) {
      NodeSet s;
      for (Mask rest = m; rest; rest &= rest - 1) s.push_back(core[std::countr_zero(rest)]);
      out.sets.push_back(std::move(s));
    }
  }
  std::sort(out.sets.begin(), out.sets.end(), [](const NodeSet& a, const NodeSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace

std::vector<NodeSet> enumerate_feasible_subgraphs(const Graph& g, std::uint32_t k, const OracleLimits& limits) {
  return enumerate(g, k, limits, true).sets;
}

std::size_t count_feasible_subgraphs(const Graph& g, std::uint32_t k, const OracleLimits& limits) {
  return enumerate(g, k, limits, false).count;
}

ThresholdCounts count_by_threshold(const Graph& g, std::uint32_t k, const OracleLimits& limits) {
  return {k, count_feasible_subgraphs(g, k, limits), count_feasible_subgraphs(g, k + 1, limits)};
}

OracleResult exact_top_t(const Graph& g, std::uint32_t k, std::uint32_t t, const OracleLimits& limits) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  const auto started = std::chrono::steady_clock::now();
  auto lg = std::make_shared<const LinkGraph>(build_link_skein(g));
  const auto sets = enumerate_feasible_subgraphs(g, k, limits);
  if (sets.empty()) throw FeasibilityError(k, max_coreness(g));

  std::vector<LinkSubgraph> candidates;
  std::vector<std::vector<LinkEdgeId>> induced;
  for (const auto& s : sets) {
    candidates.push_back(induced_link_subgraph(*lg, s));
    induced.push_back(candidates.back().induced_edges());
  }

  OracleResult result{MinerOutcome(lg), candidates.size(), candidates.size() <= limits.exact_combination_limit};
  Solution& sol = result.outcome.solution;
  const std::size_t picks = std::min<std::size_t>(t, candidates.size());

  if (result.exhaustive) {
    std::vector<std::size_t> chosen, best;
    double best_value = 0.0;
    bool have_best = false;
    // Depth-first over combinations in lexicographic order; strict > keeps
    // the first optimum.
    auto search = [&](auto&& self, std::size_t from, double value) -> void {
      if (chosen.size() == picks) {
        if (!have_best || value > best_value) {
          have_best = true;
          best_value = value;
          best = chosen;
        }
        return;
      }
      for (std::size_t i = from; i + (picks - chosen.size()) <= candidates.size(); ++i) {
        const double gain = sol.gain_if_added(candidates[i].size(), induced[i]);
        sol.add(candidates[i]);
        chosen.push_back(i);
        self(self, i + 1, value + gain);
        chosen.pop_back();
        sol.pop_back();
      }
    };
    search(search, 0, 0.0);
    for (auto i : best) sol.add(candidates[i]);
  } else {
    std::vector<char> used(candidates.size(), 0);
    for (std::size_t round = 0; round < picks; ++round) {
      std::optional<std::size_t> best;
      double best_gain = 0.0;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (used[i]) continue;
        const double gain = sol.gain_if_added(candidates[i].size(), induced[i]);
        if (!best || gain > best_gain) {
          best = i;
          best_gain = gain;
        }
      }
      used[*best] = 1;
      sol.add(candidates[*best]);
    }
  }

  auto& out = result.outcome;
  out.complete = sol.size() == t;
  out.diagnostics.member_gamma = sol.member_contributions();
  out.diagnostics.outer_iterations = picks;
  out.diagnostics.mine_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace ocsm
