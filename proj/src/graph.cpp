#include "ocsm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

namespace ocsm {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId GraphBuilder::add_node(std::string_view label) {
  auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<NodeId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

void GraphBuilder::add_edge(std::string_view a, std::string_view b) {
  NodeId ia = add_node(a);
  NodeId ib = add_node(b);
  add_edge(ia, ib);
}

void GraphBuilder::add_edge(NodeId a, NodeId b) {
  if (a == b) return;
  if (a > b) std::swap(a, b);
  pairs_.emplace_back(a, b);
}

Graph GraphBuilder::build() && {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());

  Graph g;
  const std::size_t n = labels_.size();
  g.offsets_.assign(n + 1, 0);
  for (auto [a, b] : pairs_) {
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [a, b] : pairs_) {
    g.targets_[cursor[a]++] = b;
    g.targets_[cursor[b]++] = a;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  g.labels_ = std::move(labels_);
  g.index_ = std::move(index_);
  return g;
}

Graph graph_from_pairs(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> pairs) {
  GraphBuilder b;
  for (std::size_t i = 0; i < node_count; ++i) b.add_node(std::to_string(i));
  for (auto [u, v] : pairs) {
    if (u >= node_count || v >= node_count) throw std::out_of_range("graph_from_pairs: node id out of range");
    b.add_edge(u, v);
  }
  return std::move(b).build();
}

Graph load_edge_list(std::istream& in) {
  GraphBuilder b;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    std::istringstream tokens(line);
    std::string a, c, extra;
    tokens >> a >> c;
    if (c.empty() || (tokens >> extra)) {
      throw ParseError(line_no, "expected two tokens, got '" + line + "'");
    }
    b.add_edge(a, c);
  }
  return std::move(b).build();
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  return load_edge_list(in);
}

// Batagelj-Zaversnik bin sort peeling.
std::vector<std::uint32_t> coreness(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> deg(n);
  std::size_t max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = static_cast<std::uint32_t>(g.degree(v));
    max_deg = std::max<std::size_t>(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    std::size_t count = b;
    b = start;
    start += count;
  }
  std::vector<NodeId> order(n);
  std::vector<std::size_t> pos(n);
  for (NodeId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    order[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = order[i];
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        std::size_t du = deg[u];
        std::size_t pu = pos[u];
        std::size_t pw = bin[du];
        NodeId w = order[pw];
        if (u != w) {
          pos[u] = pw;
          order[pu] = w;
          pos[w] = pu;
          order[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return deg;
}

NodeSet k_core(const Graph& g, std::uint32_t k) {
  auto core = coreness(g);
  NodeSet out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (core[v] >= k) out.push_back(v);
  }
  return out;
}

std::uint32_t max_coreness(const Graph& g) {
  auto core = coreness(g);
  return core.empty() ? 0 : *std::max_element(core.begin(), core.end());
}

std::vector<NodeSet> connected_components(const Graph& g, const NodeSet& restrict) {
  std::vector<char> inside(g.node_count(), 0), seen(g.node_count(), 0);
  for (NodeId v : restrict) inside[v] = 1;
  std::vector<NodeSet> out;
  std::deque<NodeId> queue;
  for (NodeId root : restrict) {
    if (seen[root]) continue;
    NodeSet comp;
    seen[root] = 1;
    queue.push_back(root);
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (NodeId u : g.neighbors(v)) {
        if (inside[u] && !seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const NodeSet& a, const NodeSet& b) { return a.front() < b.front(); });
  return out;
}

std::uint32_t min_degree(const Graph& g, const NodeSet& s) {
  if (s.empty()) throw std::domain_error("min_degree: empty node set");
  std::uint32_t best = UINT32_MAX;
  for (NodeId v : s) {
    std::uint32_t d = 0;
    for (NodeId u : g.neighbors(v)) {
      if (std::binary_search(s.begin(), s.end(), u)) ++d;
    }
    best = std::min(best, d);
  }
  return best;
}

bool is_connected(const Graph& g, const NodeSet& s) {
  if (s.empty()) return false;
  return connected_components(g, s).size() == 1;
}

bool label_less(std::string_view a, std::string_view b) {
  long long x = 0, y = 0;
  auto [pa, ea] = std::from_chars(a.data(), a.data() + a.size(), x);
  auto [pb, eb] = std::from_chars(b.data(), b.data() + b.size(), y);
  bool na = ea == std::errc() && pa == a.data() + a.size();
  bool nb = eb == std::errc() && pb == b.data() + b.size();
  // Integer labels sort first, by value; everything else lexicographically.
  if (na != nb) return na;
  if (na && x != y) return x < y;
  return a < b;
}

std::vector<std::string> format_node_set(const Graph& g, const NodeSet& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (NodeId v : s) out.push_back(g.label(v));
  std::sort(out.begin(), out.end(), label_less);
  return out;
}

}  // namespace ocsm
