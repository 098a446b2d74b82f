#pragma once

// Random instances and independent brute-force oracles shared by the tests.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ocsm/densest.hpp"
#include "ocsm/graph.hpp"
#include "ocsm/link_graph.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(OCSM_TEST_DATA) + "/" + name; }

inline ocsm::Graph parse(const std::string& text) {
  std::istringstream in(text);
  return ocsm::load_edge_list(in);
}

inline ocsm::Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<ocsm::NodeId, ocsm::NodeId>> pairs;
  for (ocsm::NodeId u = 0; u < n; ++u) {
    for (ocsm::NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) pairs.emplace_back(u, v);
    }
  }
  return ocsm::graph_from_pairs(n, pairs);
}

inline ocsm::Graph from_pairs(std::size_t n, std::vector<std::pair<ocsm::NodeId, ocsm::NodeId>> pairs) {
  return ocsm::graph_from_pairs(n, pairs);
}

// Adjacency matrix view; every oracle below works on it rather than on the
// CSR structure under test.
inline std::vector<std::vector<char>> adjacency_matrix(const ocsm::Graph& g) {
  const auto n = g.node_count();
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

// Delete any node of degree < k until none is left.
inline ocsm::NodeSet naive_k_core(const ocsm::Graph& g, std::uint32_t k) {
  const auto a = adjacency_matrix(g);
  const auto n = g.node_count();
  std::vector<char> alive(n, 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::uint32_t d = 0;
      for (std::size_t u = 0; u < n; ++u) d += alive[u] && a[v][u];
      if (d < k) {
        alive[v] = 0;
        changed = true;
      }
    }
  }
  ocsm::NodeSet out;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v]) out.push_back(static_cast<ocsm::NodeId>(v));
  }
  return out;
}

inline std::size_t count_triangles(const ocsm::Graph& g) {
  const auto a = adjacency_matrix(g);
  const auto n = g.node_count();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[i][j])
        for (std::size_t l = j + 1; l < n; ++l) count += a[i][l] && a[j][l];
  return count;
}

// Minimum over every partition with source inside and sink outside.
inline double brute_min_cut(const ocsm::FlowNetwork& net, std::size_t s, std::size_t t) {
  const std::size_t n = net.node_count();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> s & 1) || (mask >> t & 1)) continue;
    double cut = 0.0;
    for (const auto& arc : net.arcs()) {
      if ((mask >> arc.from & 1) && !(mask >> arc.to & 1)) cut += arc.capacity;
    }
    best = std::min(best, cut);
  }
  return best;
}

// Weighted link graph on `n` link-nodes with random edges; the source graph is
// a star whose edges provide the endpoints, and must outlive the result.
inline ocsm::Graph star_source(std::size_t leaves) {
  std::vector<std::pair<ocsm::NodeId, ocsm::NodeId>> pairs;
  for (ocsm::NodeId v = 1; v <= leaves; ++v) pairs.emplace_back(0, v);
  return ocsm::graph_from_pairs(leaves + 1, pairs);
}

inline ocsm::LinkGraph custom_link_graph(const ocsm::Graph& star, std::vector<ocsm::LinkEdge> edges) {
  std::vector<ocsm::Edge> endpoints = star.edges();
  std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
  return ocsm::LinkGraph(star, ocsm::LinkMode::skein, std::move(endpoints), std::move(edges));
}

inline ocsm::LinkGraph random_link_graph(const ocsm::Graph& star, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const auto n = static_cast<ocsm::LinkNodeId>(star.edge_count());
  std::vector<ocsm::LinkEdge> edges;
  for (ocsm::LinkNodeId a = 0; a < n; ++a)
    for (ocsm::LinkNodeId b = a + 1; b < n; ++b)
      if (coin(rng)) edges.push_back({a, b, weight(rng)});
  return custom_link_graph(star, std::move(edges));
}

// max over non-empty subsets S of w(E[S]) / |S|.
inline double exhaustive_densest(const ocsm::LinkGraph& lg, const std::vector<double>& weights) {
  const auto n = lg.node_count();
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double w = 0.0;
    for (ocsm::LinkEdgeId e = 0; e < lg.edge_count(); ++e) {
      const auto& edge = lg.edge(e);
      if ((mask >> edge.a & 1) && (mask >> edge.b & 1)) w += weights[e];
    }
    best = std::max(best, w / std::popcount(mask));
  }
  return best;
}

// Every subset S that is connected with min degree >= k, by bitmask.
inline std::vector<ocsm::NodeSet> brute_feasible_sets(const ocsm::Graph& g, std::uint32_t k) {
  const auto a = adjacency_matrix(g);
  const auto n = g.node_count();
  std::vector<ocsm::NodeSet> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    ocsm::NodeSet s;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) s.push_back(static_cast<ocsm::NodeId>(v));
    bool ok = true;
    for (auto v : s) {
      std::uint32_t d = 0;
      for (auto u : s) d += a[v][u];
      if (d < k) ok = false;
    }
    if (!ok) continue;
    std::uint32_t reached = 1u << s.front();
    for (bool grew = true; grew;) {
      grew = false;
      for (auto v : s)
        if (reached >> v & 1)
          for (auto u : s)
            if (a[v][u] && !(reached >> u & 1)) {
              reached |= 1u << u;
              grew = true;
            }
    }
    if (reached == mask) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

// Node ids by external label, for graphs loaded from 1-based edge lists.
inline ocsm::NodeSet ids(const ocsm::Graph& g, std::initializer_list<const char*> labels) {
  ocsm::NodeSet out;
  for (auto l : labels) out.push_back(*g.find(l));
  std::sort(out.begin(), out.end());
  return out;
}

inline ocsm::LinkNodeId link(const ocsm::LinkGraph& lg, const char* u, const char* v) {
  const auto& g = lg.source();
  return *lg.find_node(*g.find(u), *g.find(v));
}

}  // namespace testing
