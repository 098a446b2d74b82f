#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ocsm {

using NodeId = std::uint32_t;

/// Sorted, duplicate-free list of dense node ids.
using NodeSet = std::vector<NodeId>;

struct Edge {
  NodeId u;
  NodeId v;  // u < v
  friend bool operator==(const Edge&, const Edge&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Simple undirected graph in CSR form. Neighbor lists are sorted and
/// duplicate free; dense ids are assigned in first-seen label order.
/// Immutable once built.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// All edges with u < v, ordered lexicographically by (u, v).
  std::vector<Edge> edges() const;

  const std::string& label(NodeId v) const { return labels_.at(v); }
  std::optional<NodeId> find(std::string_view label) const;

 private:
  friend class GraphBuilder;

  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Accumulates labelled edges; self-loops are dropped and duplicates
/// collapsed at build().
class GraphBuilder {
 public:
  NodeId add_node(std::string_view label);
  void add_edge(std::string_view a, std::string_view b);
  void add_edge(NodeId a, NodeId b);
  Graph build() &&;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::pair<NodeId, NodeId>> pairs_;
};

/// Builds a graph over nodes labelled "0".."n-1" from dense id pairs.
Graph graph_from_pairs(std::size_t node_count,
                       std::span<const std::pair<NodeId, NodeId>> pairs);

/// Whitespace separated edge list. Lines starting with '#' or '%' and blank
/// lines are skipped; every other line must hold exactly two tokens.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Per-node core number, computed by bucket peeling in O(|V| + |E|).
std::vector<std::uint32_t> coreness(const Graph& g);

/// Maximal node set whose induced subgraph has minimum degree >= k.
NodeSet k_core(const Graph& g, std::uint32_t k);

std::uint32_t max_coreness(const Graph& g);

/// Connected components of G[restrict], each sorted, ordered by smallest
/// member.
std::vector<NodeSet> connected_components(const Graph& g, const NodeSet& restrict);

/// Minimum induced degree in G[s]. Throws std::domain_error on empty s.
std::uint32_t min_degree(const Graph& g, const NodeSet& s);

bool is_connected(const Graph& g, const NodeSet& s);

/// External labels of s in label_less order: integer labels first by value,
/// then the rest lexicographically.
std::vector<std::string> format_node_set(const Graph& g, const NodeSet& s);

bool label_less(std::string_view a, std::string_view b);

}  // namespace ocsm
