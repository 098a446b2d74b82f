#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ocsm/graph.hpp"
#include "ocsm/miners.hpp"

namespace ocsm {

struct OracleLimits {
  std::size_t max_graph_nodes = 40;  // hard ceiling of 64 (bitmask enumeration)
  std::size_t max_candidates = 1'000'000;
  std::size_t exact_combination_limit = 200;  // beyond this, greedy top-t
};

class EnumerationLimitError : public std::runtime_error {
 public:
  EnumerationLimitError(const std::string& what, std::size_t partial_count)
      : std::runtime_error(what), partial_count_(partial_count) {}
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

/// Every connected node set S with min_degree(G[S]) >= k, ordered by size and
/// then lexicographically. The search runs inside the k-core (any feasible
/// set lies there) and is split across OpenMP threads by smallest member.
/// Throws std::invalid_argument when g exceeds limits.max_graph_nodes and
/// EnumerationLimitError past limits.max_candidates.
std::vector<NodeSet> enumerate_feasible_subgraphs(const Graph& g, std::uint32_t k, const OracleLimits& limits = {});

/// Same search, counting only.
std::size_t count_feasible_subgraphs(const Graph& g, std::uint32_t k, const OracleLimits& limits = {});

/// Candidate counts under the two readings of the degree filter: δ >= k and
/// δ >= k + 1.
struct ThresholdCounts {
  std::uint32_t k = 0;
  std::size_t at_least_k = 0;
  std::size_t at_least_k_plus_one = 0;
};

ThresholdCounts count_by_threshold(const Graph& g, std::uint32_t k, const OracleLimits& limits = {});

struct OracleResult {
  MinerOutcome outcome;
  std::size_t candidate_count = 0;
  bool exhaustive = false;  // false: greedy fallback
};

/// Best top-t selection of feasible candidates, each mapped to every link-node
/// of G[S] in the link-skein graph of g. Exhaustive over t-subsets when the
/// candidate count is within limits.exact_combination_limit, greedy by
/// marginal γ otherwise. The outcome refers to g. Throws FeasibilityError when there is no candidate.
OracleResult exact_top_t(const Graph& g, std::uint32_t k, std::uint32_t t, const OracleLimits& limits = {});
OracleResult exact_top_t(const Graph&&, std::uint32_t, std::uint32_t, const OracleLimits& = {}) = delete;

}  // namespace ocsm
