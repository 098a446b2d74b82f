#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "ocsm/graph.hpp"

namespace ocsm {

using LinkNodeId = std::uint32_t;
using LinkEdgeId = std::uint32_t;

enum class LinkMode { space, skein };

std::string_view to_string(LinkMode mode);
LinkMode parse_link_mode(std::string_view text);

struct LinkEdge {
  LinkNodeId a;  // a < b
  LinkNodeId b;
  double weight;
};

struct LinkArc {
  LinkNodeId to;
  LinkEdgeId edge;
};

/// Weighted graph with one node per edge of the source graph. Link-node ids
/// follow the lexicographic order of the normalized endpoint pairs, link
/// edges are sorted by (a, b). The source graph must outlive this object.
class LinkGraph {
 public:
  LinkGraph(const Graph& source, LinkMode mode, std::vector<Edge> endpoints,
            std::vector<LinkEdge> edges);

  LinkMode mode() const noexcept { return mode_; }
  const Graph& source() const noexcept { return *source_; }

  std::size_t node_count() const noexcept { return endpoints_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  Edge endpoints(LinkNodeId v) const { return endpoints_[v]; }
  std::span<const LinkEdge> edges() const noexcept { return edges_; }
  const LinkEdge& edge(LinkEdgeId e) const { return edges_[e]; }
  double weight(LinkEdgeId e) const { return edges_[e].weight; }

  /// Arcs sorted by neighbor id.
  std::span<const LinkArc> arcs(LinkNodeId v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

  std::optional<LinkNodeId> find_node(NodeId u, NodeId v) const;
  std::optional<LinkEdgeId> find_edge(LinkNodeId a, LinkNodeId b) const;

  /// Largest edge weight, 0 for an edgeless graph.
  double max_weight() const noexcept { return max_weight_; }

  /// Original weights, indexed by link edge id.
  std::vector<double> weights() const;

 private:
  const Graph* source_;
  LinkMode mode_;
  std::vector<Edge> endpoints_;
  std::vector<LinkEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<LinkArc> arcs_;
  double max_weight_ = 0.0;
};

/// |Γ(i) ∩ Γ(j)| / |Γ(i) ∪ Γ(j)| over closed neighborhoods Γ(x) = {x} ∪ N(x).
/// Throws std::domain_error when i == j.
double closed_neighborhood_similarity(const Graph& g, NodeId i, NodeId j);

/// Link-skein graph: v_{u,w} and v_{v,w} are adjacent when {u,v,w} is a
/// triangle, weighted by the similarity of u and v. Parallel over edges.
LinkGraph build_link_skein(const Graph& g);

/// Link-space graph: link-nodes adjacent when their edges share a node,
/// weighted by the similarity of the two non-shared endpoints. Parallel over
/// shared nodes.
LinkGraph build_link_space(const Graph& g);

LinkGraph build_link_graph(const Graph& g, LinkMode mode);

// A link graph refers to its source graph, which must outlive it.
LinkGraph build_link_skein(const Graph&&) = delete;
LinkGraph build_link_space(const Graph&&) = delete;
LinkGraph build_link_graph(const Graph&&, LinkMode) = delete;

/// Single-threaded builders kept as the reference for the parallel kernels.
namespace reference {
LinkGraph build_link_skein(const Graph& g);
LinkGraph build_link_space(const Graph& g);
}  // namespace reference

/// A set of link-nodes of one link graph; the unit candidate solution.
class LinkSubgraph {
 public:
  LinkSubgraph() = default;
  /// Sorts and deduplicates `nodes`; throws std::out_of_range on invalid ids.
  LinkSubgraph(const LinkGraph& graph, std::vector<LinkNodeId> nodes);

  const LinkGraph& graph() const { return *graph_; }
  const LinkGraph* graph_ptr() const noexcept { return graph_; }
  std::span<const LinkNodeId> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  bool contains(LinkNodeId v) const;

  /// Link edges with both ends inside, ascending.
  std::vector<LinkEdgeId> induced_edges() const;

  friend bool operator==(const LinkSubgraph& x, const LinkSubgraph& y) {
    return x.graph_ == y.graph_ && x.nodes_ == y.nodes_;
  }

 private:
  const LinkGraph* graph_ = nullptr;
  std::vector<LinkNodeId> nodes_;
};

/// Link subgraph made of every edge of G[s].
LinkSubgraph induced_link_subgraph(const LinkGraph& lg, const NodeSet& s);

/// R(H): union of endpoints. Throws std::domain_error on empty h.
NodeSet restore(const LinkSubgraph& h);

/// Number of link-nodes of h incident to each original node of R(h).
std::map<NodeId, std::uint32_t> occurrence_profile(const LinkSubgraph& h);

/// β(H). Throws std::domain_error on empty h.
std::uint32_t min_occurrence(const LinkSubgraph& h);

/// Whether the original-graph edges represented by h form a connected graph.
bool r_connected(const LinkSubgraph& h);

/// Whether h is connected inside its link graph.
bool link_connected(const LinkSubgraph& h);

/// Header "mode node_count edge_count", then "i,j k,l weight" per link edge
/// using external labels and 6 decimal weights.
void write_link_graph(std::ostream& out, const LinkGraph& lg);

}  // namespace ocsm
