#include "ocsm/link_graph.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ocsm {

namespace {

// Maps a normalized original edge (a < b) to its link-node id without a hash
// table: ids of edges leaving `a` upwards are contiguous.
class EdgeIndex {
 public:
  explicit EdgeIndex(const Graph& g) : g_(g), first_upper_(g.node_count()), base_(g.node_count() + 1, 0) {
    for (NodeId a = 0; a < g.node_count(); ++a) {
      auto nb = g.neighbors(a);
      first_upper_[a] = static_cast<std::size_t>(std::upper_bound(nb.begin(), nb.end(), a) - nb.begin());
      base_[a + 1] = base_[a] + (nb.size() - first_upper_[a]);
    }
  }

  LinkNodeId id(NodeId a, NodeId b) const {
    if (a > b) std::swap(a, b);
    auto nb = g_.neighbors(a);
    auto pos = static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), b) - nb.begin());
    return static_cast<LinkNodeId>(base_[a] + pos - first_upper_[a]);
  }

 private:
  const Graph& g_;
  std::vector<std::size_t> first_upper_;
  std::vector<std::size_t> base_;
};

std::size_t intersection_size(std::span<const NodeId> x, std::span<const NodeId> y) {
  std::size_t count = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

template <typename Out>
void intersect(std::span<const NodeId> x, std::span<const NodeId> y, Out out) {
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), out);
}

bool edge_less(const LinkEdge& x, const LinkEdge& y) {
  return x.a != y.a ? x.a < y.a : x.b < y.b;
}

LinkEdge make_edge(LinkNodeId p, LinkNodeId q, double w) {
  return p < q ? LinkEdge{p, q, w} : LinkEdge{q, p, w};
}

std::vector<std::size_t> exclusive_scan(const std::vector<std::size_t>& counts) {
  std::vector<std::size_t> offsets(counts.size() + 1, 0);
  std::partial_sum(counts.begin(), counts.end(), offsets.begin() + 1);
  return offsets;
}

}  // namespace

std::string_view to_string(LinkMode mode) {
  return mode == LinkMode::skein ? "skein" : "space";
}

LinkMode parse_link_mode(std::string_view text) {
  if (text == "skein") return LinkMode::skein;
  if (text == "space") return LinkMode::space;
  throw std::invalid_argument("unknown link graph mode '" + std::string(text) + "'");
}

LinkGraph::LinkGraph(const Graph& source, LinkMode mode, std::vector<Edge> endpoints,
                     std::vector<LinkEdge> edges)
    : source_(&source), mode_(mode), endpoints_(std::move(endpoints)), edges_(std::move(edges)) {
  const std::size_t n = endpoints_.size();
  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.a + 1];
    ++offsets_[e.b + 1];
    max_weight_ = std::max(max_weight_, e.weight);
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  arcs_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (LinkEdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    arcs_[cursor[e.a]++] = {e.b, id};
    arcs_[cursor[e.b]++] = {e.a, id};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const LinkArc& x, const LinkArc& y) { return x.to < y.to; });
  }
}

std::optional<LinkNodeId> LinkGraph::find_node(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  Edge key{u, v};
  auto it = std::lower_bound(endpoints_.begin(), endpoints_.end(), key, [](const Edge& x, const Edge& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  if (it == endpoints_.end() || !(*it == key)) return std::nullopt;
  return static_cast<LinkNodeId>(it - endpoints_.begin());
}

std::optional<LinkEdgeId> LinkGraph::find_edge(LinkNodeId a, LinkNodeId b) const {
  if (a >= node_count() || b >= node_count()) return std::nullopt;
  auto list = arcs(a);
  auto it = std::lower_bound(list.begin(), list.end(), b, [](const LinkArc& arc, LinkNodeId x) { return arc.to < x; });
  if (it == list.end() || it->to != b) return std::nullopt;
  return it->edge;
}

std::vector<double> LinkGraph::weights() const {
  std::vector<double> w(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) w[i] = edges_[i].weight;
  return w;
}

double closed_neighborhood_similarity(const Graph& g, NodeId i, NodeId j) {
  if (i == j) throw std::domain_error("closed_neighborhood_similarity: identical endpoints");
  std::size_t common = intersection_size(g.neighbors(i), g.neighbors(j));
  if (g.has_edge(i, j)) common += 2;  // i and j each lie in both closed neighborhoods
  std::size_t uni = g.degree(i) + 1 + g.degree(j) + 1 - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

LinkGraph build_link_skein(const Graph& g) {
  const std::vector<Edge> edges = g.edges();
  const EdgeIndex index(g);
  const auto m = static_cast<std::ptrdiff_t>(edges.size());

  std::vector<std::size_t> counts(edges.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t e = 0; e < m; ++e) {
    counts[e] = intersection_size(g.neighbors(edges[e].u), g.neighbors(edges[e].v));
  }
  const auto offsets = exclusive_scan(counts);
  std::vector<LinkEdge> out(offsets.back());

  // Each triangle {u,v,w} yields the link edge {v_uw, v_vw} exactly once,
  // from the opposite edge {u,v}, so slots are disjoint.
#pragma omp parallel
  {
    std::vector<NodeId> common;
#pragma omp for schedule(dynamic, 256)
    for (std::ptrdiff_t e = 0; e < m; ++e) {
      const auto [u, v] = edges[e];
      if (counts[e] == 0) continue;
      const double sim = closed_neighborhood_similarity(g, u, v);
      common.clear();
      intersect(g.neighbors(u), g.neighbors(v), std::back_inserter(common));
      std::size_t slot = offsets[e];
      for (NodeId w : common) out[slot++] = make_edge(index.id(u, w), index.id(v, w), sim);
    }
  }
  std::sort(out.begin(), out.end(), edge_less);
  return LinkGraph(g, LinkMode::skein, edges, std::move(out));
}

LinkGraph build_link_space(const Graph& g) {
  const EdgeIndex index(g);
  const auto n = static_cast<std::ptrdiff_t>(g.node_count());
  std::vector<std::size_t> counts(g.node_count());
  for (NodeId c = 0; c < g.node_count(); ++c) {
    const std::size_t d = g.degree(c);
    counts[c] = d < 2 ? 0 : d * (d - 1) / 2;
  }
  const auto offsets = exclusive_scan(counts);
  std::vector<LinkEdge> out(offsets.back());

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    auto nb = g.neighbors(static_cast<NodeId>(c));
    std::size_t slot = offsets[c];
    for (std::size_t x = 0; x < nb.size(); ++x) {
      const LinkNodeId lx = index.id(nb[x], static_cast<NodeId>(c));
      for (std::size_t y = x + 1; y < nb.size(); ++y) {
        const double sim = closed_neighborhood_similarity(g, nb[x], nb[y]);
        out[slot++] = make_edge(lx, index.id(nb[y], static_cast<NodeId>(c)), sim);
      }
    }
  }
  std::sort(out.begin(), out.end(), edge_less);
  return LinkGraph(g, LinkMode::space, g.edges(), std::move(out));
}

LinkGraph build_link_graph(const Graph& g, LinkMode mode) {
  return mode == LinkMode::skein ? build_link_skein(g) : build_link_space(g);
}

namespace reference {

namespace {
LinkNodeId lookup(const std::vector<Edge>& edges, NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  auto it = std::find(edges.begin(), edges.end(), Edge{a, b});
  return static_cast<LinkNodeId>(it - edges.begin());
}
}  // namespace

LinkGraph build_link_skein(const Graph& g) {
  const std::vector<Edge> edges = g.edges();
  std::vector<LinkEdge> out;
  for (const auto& [u, v] : edges) {
    const double sim = closed_neighborhood_similarity(g, u, v);
    for (NodeId w : g.neighbors(u)) {
      if (g.has_edge(v, w)) out.push_back(make_edge(lookup(edges, u, w), lookup(edges, v, w), sim));
    }
  }
  std::sort(out.begin(), out.end(), edge_less);
  return LinkGraph(g, LinkMode::skein, edges, std::move(out));
}

LinkGraph build_link_space(const Graph& g) {
  const std::vector<Edge> edges = g.edges();
  std::vector<LinkEdge> out;
  for (LinkNodeId p = 0; p < edges.size(); ++p) {
    for (LinkNodeId q = p + 1; q < edges.size(); ++q) {
      const Edge x = edges[p];
      const Edge y = edges[q];
      NodeId ex, ey;  // the non-shared endpoints
      if (x.u == y.u) {
        ex = x.v, ey = y.v;
      } else if (x.u == y.v) {
        ex = x.v, ey = y.u;
      } else if (x.v == y.u) {
        ex = x.u, ey = y.v;
      } else if (x.v == y.v) {
        ex = x.u, ey = y.u;
      } else {
        continue;
      }
      out.push_back({p, q, closed_neighborhood_similarity(g, ex, ey)});
    }
  }
  return LinkGraph(g, LinkMode::space, edges, std::move(out));
}

}  // namespace reference

LinkSubgraph::LinkSubgraph(const LinkGraph& graph, std::vector<LinkNodeId> nodes)
    : graph_(&graph), nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (!nodes_.empty() && nodes_.back() >= graph.node_count()) {
    throw std::out_of_range("LinkSubgraph: link-node id out of range");
  }
}

bool LinkSubgraph::contains(LinkNodeId v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

std::vector<LinkEdgeId> LinkSubgraph::induced_edges() const {
  std::vector<LinkEdgeId> out;
  if (!graph_) return out;
  for (LinkNodeId v : nodes_) {
    for (const auto& arc : graph_->arcs(v)) {
      if (arc.to > v && contains(arc.to)) out.push_back(arc.edge);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LinkSubgraph induced_link_subgraph(const LinkGraph& lg, const NodeSet& s) {
  std::vector<LinkNodeId> nodes;
  const Graph& g = lg.source();
  for (NodeId u : s) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v && std::binary_search(s.begin(), s.end(), v)) {
        if (auto id = lg.find_node(u, v)) nodes.push_back(*id);
      }
    }
  }
  return LinkSubgraph(lg, std::move(nodes));
}

NodeSet restore(const LinkSubgraph& h) {
  if (h.empty()) throw std::domain_error("restore: empty link subgraph");
  NodeSet out;
  out.reserve(2 * h.size());
  for (LinkNodeId v : h.nodes()) {
    auto e = h.graph().endpoints(v);
    out.push_back(e.u);
    out.push_back(e.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<NodeId, std::uint32_t> occurrence_profile(const LinkSubgraph& h) {
  std::map<NodeId, std::uint32_t> occ;
  for (LinkNodeId v : h.nodes()) {
    auto e = h.graph().endpoints(v);
    ++occ[e.u];
    ++occ[e.v];
  }
  return occ;
}

std::uint32_t min_occurrence(const LinkSubgraph& h) {
  if (h.empty()) throw std::domain_error("min_occurrence: empty link subgraph");
  std::uint32_t best = UINT32_MAX;
  for (const auto& [node, count] : occurrence_profile(h)) best = std::min(best, count);
  return best;
}

bool r_connected(const LinkSubgraph& h) {
  if (h.empty()) throw std::domain_error("r_connected: empty link subgraph");
  // Union-find over the original endpoints of h.
  std::map<NodeId, NodeId> parent;
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (LinkNodeId v : h.nodes()) {
    auto e = h.graph().endpoints(v);
    parent.try_emplace(e.u, e.u);
    parent.try_emplace(e.v, e.v);
  }
  std::size_t roots = parent.size();
  for (LinkNodeId v : h.nodes()) {
    auto e = h.graph().endpoints(v);
    NodeId a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --roots;
    }
  }
  return roots == 1;
}

bool link_connected(const LinkSubgraph& h) {
  if (h.empty()) return false;
  std::vector<char> seen(h.size(), 0);
  auto rank = [&](LinkNodeId v) {
    return static_cast<std::size_t>(std::lower_bound(h.nodes().begin(), h.nodes().end(), v) - h.nodes().begin());
  };
  std::deque<LinkNodeId> queue{h.nodes().front()};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    LinkNodeId v = queue.front();
    queue.pop_front();
    for (const auto& arc : h.graph().arcs(v)) {
      if (!h.contains(arc.to)) continue;
      auto r = rank(arc.to);
      if (!seen[r]) {
        seen[r] = 1;
        ++reached;
        queue.push_back(arc.to);
      }
    }
  }
  return reached == h.size();
}

void write_link_graph(std::ostream& out, const LinkGraph& lg) {
  const Graph& g = lg.source();
  out << to_string(lg.mode()) << ' ' << lg.node_count() << ' ' << lg.edge_count() << '\n';
  auto name = [&](LinkNodeId v) {
    auto e = lg.endpoints(v);
    return g.label(e.u) + ',' + g.label(e.v);
  };
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (const auto& e : lg.edges()) out << name(e.a) << ' ' << name(e.b) << ' ' << e.weight << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace ocsm
