#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ocsm/link_graph.hpp"

namespace ocsm {

/// Directed network with real capacities. Every arc is stored with a paired
/// reverse arc (index ^ 1).
class FlowNetwork {
 public:
  struct Arc {
    std::size_t from;
    std::size_t to;
    double capacity;
  };

  explicit FlowNetwork(std::size_t node_count) : first_(node_count) {}

  /// Adds from->to with `capacity` and its reverse with `reverse_capacity`
  /// (non-zero for undirected edges). Returns the forward arc index.
  std::size_t add_arc(std::size_t from, std::size_t to, double capacity, double reverse_capacity = 0.0);

  std::size_t node_count() const noexcept { return first_.size(); }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  std::span<const std::size_t> out_arcs(std::size_t v) const { return first_[v]; }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> first_;
};

struct MinCut {
  double value = 0.0;
  std::vector<std::size_t> source_side;  // sorted, contains the source
};

/// Max-flow (Dinic, iterative DFS) and the source side of the residual
/// network. Throws std::invalid_argument when source == sink.
MinCut min_st_cut(const FlowNetwork& net, std::size_t source, std::size_t sink);

struct DensestSubgraph {
  LinkSubgraph subgraph;
  double density = 0.0;  // under the supplied weights
  std::size_t iterations = 0;
};

/// Goldberg's densest subgraph restricted to `restrict`, under `weights`
/// (indexed by link edge id). The maximizer is narrowed to its densest
/// positively-weighted link-connected component, ties to the smallest id.
/// Edgeless inputs yield the smallest restricted id with density 0.
/// Throws std::domain_error when restrict is empty.
DensestSubgraph goldberg_densest(const LinkGraph& lg, std::span<const LinkNodeId> restrict,
                                 std::span<const double> weights);

}  // namespace ocsm
