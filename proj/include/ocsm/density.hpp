#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ocsm/graph.hpp"
#include "ocsm/link_graph.hpp"

namespace ocsm {

/// Ordered list of link subgraphs over one link graph, together with the
/// occurrence counter O: for each link edge, the number of members whose
/// induced edge set contains it.
class Solution {
 public:
  explicit Solution(const LinkGraph& lg);

  const LinkGraph& graph() const { return *graph_; }
  std::span<const LinkSubgraph> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  /// Throws std::domain_error on an empty member and std::invalid_argument
  /// when h belongs to another link graph.
  void add(LinkSubgraph h);

  /// Removes the most recently added member.
  void pop_back();

  std::uint32_t occurrence(LinkEdgeId e) const { return occurrence_[e]; }
  std::span<const LinkEdgeId> induced_edges(std::size_t member) const { return induced_[member]; }

  /// γ(this + h) - γ(this), in O(|E[h]|).
  double gain_if_added(const LinkSubgraph& h) const;
  /// Same, with h's induced edges precomputed.
  double gain_if_added(std::size_t h_size, std::span<const LinkEdgeId> h_edges) const;

  /// Each member's term of the link-density under the current O.
  std::vector<double> member_contributions() const;

 private:
  const LinkGraph* graph_;
  std::vector<LinkSubgraph> members_;
  std::vector<std::vector<LinkEdgeId>> induced_;
  std::vector<std::uint32_t> occurrence_;
  std::vector<double> inverse_size_sum_;  // Σ 1/|m| over members m inducing e
};

/// γ(C) = Σ_c Σ_{e ∈ E_c} (w(e) / O(e)) / |V_c|.
double link_density(const Solution& sol);

/// Σ induced edge weights / |h|. Throws std::domain_error on empty h.
double weighted_subgraph_density(const LinkSubgraph& h);

/// Same, with weights supplied per link edge id.
double weighted_subgraph_density(const LinkSubgraph& h, std::span<const double> weights);

/// w_max / result_density with w_max the largest link edge weight. This is a
/// heuristic indicator, not a proven approximation guarantee: the argument it
/// comes from assumes a member has no more internal edges than nodes.
/// Throws std::domain_error when result_density <= 0.
double ratio_bound(const LinkGraph& lg, double result_density);

/// Newman modularity on g. Every node joins the first member containing it;
/// uncovered nodes are singleton communities.
double modularity_eval(const Graph& g, const Solution& sol);

struct ConductanceSummary {
  double mean_one_minus_conductance = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // members covering all of V
};

/// Mean of 1 - cut(S) / min(vol(S), vol(V \ S)) over members, S = R(member),
/// on the unweighted original graph.
ConductanceSummary conductance_eval(const Graph& g, const Solution& sol);

struct FreeRiderGap {
  double space_delta;  // f(C ∪ OPT) - f(C), f = density in the link-space graph
  double skein_delta;  // g(C ∪ OPT) - g(C), g = density in the link-skein graph
};

/// Both link graphs must come from the same source graph; c and opt are
/// link-node id sets valid in both.
FreeRiderGap free_rider_gap(const LinkGraph& space, const LinkGraph& skein,
                            std::span<const LinkNodeId> c, std::span<const LinkNodeId> opt);

struct DensityReport {
  double link_density = 0.0;
  std::vector<double> member_densities;
  double w_max = 0.0;
  double ratio_bound = 0.0;  // 0 when link_density is 0
  double modularity = 0.0;
  double mean_conductance = 0.0;  // mean of 1 - conductance
  std::vector<std::string> warnings;
};

DensityReport evaluate(const Graph& g, const Solution& sol);

}  // namespace ocsm
