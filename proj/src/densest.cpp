#include "ocsm/densest.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace ocsm {

std::size_t FlowNetwork::add_arc(std::size_t from, std::size_t to, double capacity, double reverse_capacity) {
  if (from >= node_count() || to >= node_count()) throw std::out_of_range("FlowNetwork::add_arc: node out of range");
  if (capacity < 0.0 || reverse_capacity < 0.0) throw std::invalid_argument("FlowNetwork::add_arc: negative capacity");
  const std::size_t id = arcs_.size();
  arcs_.push_back({from, to, capacity});
  arcs_.push_back({to, from, reverse_capacity});
  first_[from].push_back(id);
  first_[to].push_back(id + 1);
  return id;
}

namespace {

class Dinic {
 public:
  Dinic(const FlowNetwork& net, std::size_t s, std::size_t t)
      : net_(net), s_(s), t_(t), residual_(net.arcs().size()), level_(net.node_count()), next_(net.node_count()) {
    double scale = 0.0;
    for (std::size_t i = 0; i < residual_.size(); ++i) {
      residual_[i] = net.arcs()[i].capacity;
      scale = std::max(scale, residual_[i]);
    }
    eps_ = std::max(scale, 1.0) * 1e-12;
  }

  double run() {
    double flow = 0.0;
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      flow += blocking_flow();
    }
    return flow;
  }

  std::vector<std::size_t> reachable() const {
    std::vector<char> seen(net_.node_count(), 0);
    std::deque<std::size_t> queue{s_};
    seen[s_] = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto a : net_.out_arcs(v)) {
        auto w = net_.arcs()[a].to;
        if (!seen[w] && residual_[a] > eps_) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < seen.size(); ++v) {
      if (seen[v]) out.push_back(v);
    }
    return out;
  }

 private:
  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> queue{s_};
    level_[s_] = 0;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto a : net_.out_arcs(v)) {
        auto w = net_.arcs()[a].to;
        if (level_[w] < 0 && residual_[a] > eps_) {
          level_[w] = level_[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return level_[t_] >= 0;
  }

  double blocking_flow() {
    double total = 0.0;
    std::vector<std::size_t> path;
    std::size_t v = s_;
    while (true) {
      if (v == t_) {
        double bottleneck = std::numeric_limits<double>::infinity();
        for (auto a : path) bottleneck = std::min(bottleneck, residual_[a]);
        std::size_t cut_at = path.size();
        for (std::size_t i = 0; i < path.size(); ++i) {
          auto a = path[i];
          residual_[a] -= bottleneck;
          residual_[a ^ 1] += bottleneck;
          if (residual_[a] <= eps_ && cut_at == path.size()) cut_at = i;
        }
        total += bottleneck;
        v = net_.arcs()[path[cut_at]].from;
        path.resize(cut_at);
        continue;
      }
      auto out = net_.out_arcs(v);
      while (next_[v] < out.size()) {
        auto a = out[next_[v]];
        auto w = net_.arcs()[a].to;
        if (residual_[a] > eps_ && level_[w] == level_[v] + 1) break;
        ++next_[v];
      }
      if (next_[v] < out.size()) {
        auto a = out[next_[v]];
        path.push_back(a);
        v = net_.arcs()[a].to;
        continue;
      }
      level_[v] = -1;  // dead end
      if (path.empty()) break;
      v = net_.arcs()[path.back()].from;
      path.pop_back();
      ++next_[v];
    }
    return total;
  }

  const FlowNetwork& net_;
  std::size_t s_, t_;
  std::vector<double> residual_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
  double eps_ = 0.0;
};

struct LocalEdge {
  std::size_t u, v;
  double w;
};

double local_density(const std::vector<std::size_t>& members, const std::vector<LocalEdge>& edges,
                     std::vector<char>& mark) {
  for (auto v : members) mark[v] = 1;
  double sum = 0.0;
  for (const auto& e : edges) {
    if (mark[e.u] && mark[e.v]) sum += e.w;
  }
  for (auto v : members) mark[v] = 0;
  return members.empty() ? 0.0 : sum / static_cast<double>(members.size());
}

}  // namespace

MinCut min_st_cut(const FlowNetwork& net, std::size_t source, std::size_t sink) {
  if (source == sink) throw std::invalid_argument("min_st_cut: source equals sink");
  Dinic dinic(net, source, sink);
  dinic.run();
  MinCut cut;
  cut.source_side = dinic.reachable();
  std::vector<char> inside(net.node_count(), 0);
  for (auto v : cut.source_side) inside[v] = 1;
  for (const auto& arc : net.arcs()) {
    if (inside[arc.from] && !inside[arc.to]) cut.value += arc.capacity;
  }
  return cut;
}

DensestSubgraph goldberg_densest(const LinkGraph& lg, std::span<const LinkNodeId> restrict,
                                 std::span<const double> weights) {
  if (restrict.empty()) throw std::domain_error("goldberg_densest: empty restriction");
  std::vector<LinkNodeId> nodes(restrict.begin(), restrict.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const std::size_t n = nodes.size();

  std::unordered_map<LinkNodeId, std::size_t> local;
  local.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) local.emplace(nodes[i], i);

  std::vector<LocalEdge> edges;
  std::vector<double> degree(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& arc : lg.arcs(nodes[i])) {
      if (arc.to <= nodes[i]) continue;
      auto it = local.find(arc.to);
      const double w = weights[arc.edge];
      if (it == local.end() || !(w > 0.0)) continue;
      edges.push_back({i, it->second, w});
      degree[i] += w;
      degree[it->second] += w;
      total += w;
    }
  }

  DensestSubgraph result;
  if (edges.empty()) {
    result.subgraph = LinkSubgraph(lg, {nodes.front()});
    return result;
  }

  // For a guess g: source->v (d_w(v)), u<->v (w), v->sink (2g). The min cut
  // equals 2W - 2 max_S (w(E[S]) - g|S|), so a non-trivial source side has
  // density above g.
  const std::size_t source = n, sink = n + 1;
  std::vector<char> mark(n, 0);
  std::vector<std::size_t> best;
  double lo = 0.0, hi = total;
  const double tolerance = 1e-9 * std::max(1.0, total);
  for (int iter = 0; iter < 64 && hi - lo >= tolerance; ++iter) {
    const double guess = 0.5 * (lo + hi);
    FlowNetwork net(n + 2);
    for (std::size_t v = 0; v < n; ++v) {
      if (degree[v] > 0.0) net.add_arc(source, v, degree[v]);
      net.add_arc(v, sink, 2.0 * guess);
    }
    for (const auto& e : edges) net.add_arc(e.u, e.v, e.w, e.w);
    auto cut = min_st_cut(net, source, sink);
    ++result.iterations;

    std::vector<std::size_t> side;
    for (auto v : cut.source_side) {
      if (v < n) side.push_back(v);
    }
    const double d = local_density(side, edges, mark);
    if (!side.empty() && d > guess) {
      best = std::move(side);
      lo = std::max(guess, d);
    } else {
      hi = guess;
    }
  }
  if (best.empty()) {
    auto heaviest = std::max_element(edges.begin(), edges.end(), [](const LocalEdge& a, const LocalEdge& b) { return a.w < b.w; });
    best = {std::min(heaviest->u, heaviest->v), std::max(heaviest->u, heaviest->v)};
  }

  // Split into positively weighted connected components and keep the densest.
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& e : edges) {
    adjacency[e.u].push_back(e.v);
    adjacency[e.v].push_back(e.u);
  }
  std::vector<char> in_best(n, 0), seen(n, 0);
  for (auto v : best) in_best[v] = 1;
  std::vector<std::size_t> chosen;
  double chosen_density = -1.0;
  for (auto root : best) {  // ascending, so components come by smallest member
    if (seen[root]) continue;
    std::vector<std::size_t> comp{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (auto u : adjacency[comp[i]]) {
        if (in_best[u] && !seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
      }
    }
    const double d = local_density(comp, edges, mark);
    if (d > chosen_density + 1e-12 * std::max(1.0, chosen_density)) {
      chosen_density = d;
      chosen = std::move(comp);
    }
  }

  std::vector<LinkNodeId> ids;
  ids.reserve(chosen.size());
  for (auto v : chosen) ids.push_back(nodes[v]);
  result.subgraph = LinkSubgraph(lg, std::move(ids));
  result.density = chosen_density;
  return result;
}

}  // namespace ocsm
