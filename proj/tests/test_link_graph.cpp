#include <doctest.h>

#include <sstream>

#include "ocsm/link_graph.hpp"
#include "support.hpp"

using namespace ocsm;
using testing::link;
using testing::parse;

namespace {

const char* const kDiamond = "1 2\n1 3\n1 4\n2 3\n2 4";
const char* const kBowtie = "1 2\n1 3\n2 3\n3 4\n3 5\n4 5";

double weight_between(const LinkGraph& lg, LinkNodeId a, LinkNodeId b) {
  auto e = lg.find_edge(a, b);
  REQUIRE(e.has_value());
  return lg.weight(*e);
}

// Σ_v C(deg v, 2)
std::size_t wedge_count(const Graph& g) {
  std::size_t total = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) total += g.degree(v) * (g.degree(v) - (g.degree(v) > 0)) / 2;
  return total;
}

bool same_graph(const LinkGraph& x, const LinkGraph& y) {
  if (x.node_count() != y.node_count() || x.edge_count() != y.edge_count()) return false;
  for (LinkEdgeId e = 0; e < x.edge_count(); ++e) {
    const auto &a = x.edge(e), &b = y.edge(e);
    if (a.a != b.a || a.b != b.b || a.weight != b.weight) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("link_graph") {
  TEST_CASE("similarity examples") {
    const Graph k3 = parse("1 2\n2 3\n3 1");
    CHECK(closed_neighborhood_similarity(k3, 0, 1) == doctest::Approx(1.0));
    const Graph path = parse("1 2\n2 3");
    CHECK(closed_neighborhood_similarity(path, *path.find("1"), *path.find("3")) == doctest::Approx(1.0 / 3.0));
    const Graph bowtie = parse(kBowtie);
    CHECK(closed_neighborhood_similarity(bowtie, *bowtie.find("1"), *bowtie.find("2")) == doctest::Approx(1.0));
    CHECK_THROWS_AS(closed_neighborhood_similarity(k3, 1, 1), std::domain_error);
  }

  TEST_CASE("similarity is symmetric and in (0, 1]") {
    const Graph g = testing::random_graph(30, 0.2, 3);
    for (NodeId i = 0; i < g.node_count(); ++i) {
      for (NodeId j = i + 1; j < g.node_count(); ++j) {
        const double s = closed_neighborhood_similarity(g, i, j);
        CHECK(s == closed_neighborhood_similarity(g, j, i));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        if (g.has_edge(i, j)) CHECK(s > 0.0);
      }
    }
  }

  TEST_CASE("skein examples") {
    const Graph k3 = parse("1 2\n2 3\n3 1");
    const LinkGraph tri = build_link_skein(k3);
    CHECK(tri.node_count() == 3);
    CHECK(tri.edge_count() == 3);
    for (const auto& e : tri.edges()) CHECK(e.weight == doctest::Approx(1.0));

    const Graph path = parse("1 2\n2 3\n3 4");
    const LinkGraph p = build_link_skein(path);
    CHECK(p.node_count() == 3);
    CHECK(p.edge_count() == 0);

    const Graph diamond = parse(kDiamond);
    const LinkGraph d = build_link_skein(diamond);
    CHECK(d.node_count() == 5);
    CHECK(d.edge_count() == 6);
    CHECK(weight_between(d, link(d, "1", "2"), link(d, "1", "3")) == doctest::Approx(0.75));
    CHECK(weight_between(d, link(d, "1", "2"), link(d, "2", "3")) == doctest::Approx(0.75));
    CHECK(weight_between(d, link(d, "1", "3"), link(d, "2", "3")) == doctest::Approx(1.0));
    CHECK(weight_between(d, link(d, "1", "2"), link(d, "1", "4")) == doctest::Approx(0.75));
    CHECK(weight_between(d, link(d, "1", "2"), link(d, "2", "4")) == doctest::Approx(0.75));
    CHECK(weight_between(d, link(d, "1", "4"), link(d, "2", "4")) == doctest::Approx(1.0));
  }

  TEST_CASE("space examples") {
    const Graph path = parse("1 2\n2 3");
    const LinkGraph p = build_link_space(path);
    REQUIRE(p.edge_count() == 1);
    CHECK(p.edge(0).weight == doctest::Approx(1.0 / 3.0));

    const Graph k3 = parse("1 2\n2 3\n3 1");
    CHECK(same_graph(build_link_space(k3), build_link_skein(k3)));

    const Graph star = parse("c a\nc b\nc d");
    const LinkGraph s = build_link_space(star);
    CHECK(s.edge_count() == 3);
    for (const auto& e : s.edges()) CHECK(e.weight == doctest::Approx(1.0 / 3.0));
    CHECK(build_link_skein(star).edge_count() == 0);
  }

  TEST_CASE("link-node ids follow lexicographic endpoint order") {
    const Graph g = testing::random_graph(25, 0.3, 11);
    const LinkGraph lg = build_link_skein(g);
    const auto edges = g.edges();
    REQUIRE(lg.node_count() == edges.size());
    for (LinkNodeId v = 0; v < lg.node_count(); ++v) {
      CHECK(lg.endpoints(v) == edges[v]);
      CHECK(lg.find_node(edges[v].v, edges[v].u) == v);
    }
  }

  TEST_CASE("edge counts, inclusion and weights on random graphs") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::size_t n = 5 + seed % 26;
      const Graph g = testing::random_graph(n, 0.15 + 0.005 * static_cast<double>(seed % 60), 1000 + seed);
      const LinkGraph skein = build_link_skein(g);
      const LinkGraph space = build_link_space(g);
      CHECK(skein.edge_count() == 3 * testing::count_triangles(g));
      CHECK(space.edge_count() == wedge_count(g));
      for (const auto& e : skein.edges()) {
        auto in_space = space.find_edge(e.a, e.b);
        REQUIRE(in_space.has_value());
        CHECK(space.weight(*in_space) == e.weight);
        CHECK(e.weight > 0.0);
        CHECK(e.weight <= 1.0);
      }
    }
  }

  TEST_CASE("parallel builders equal the serial reference") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Graph g = testing::random_graph(60, 0.12, 500 + seed);
      CHECK(same_graph(build_link_skein(g), reference::build_link_skein(g)));
      CHECK(same_graph(build_link_space(g), reference::build_link_space(g)));
    }
  }

  TEST_CASE("arcs are sorted and mirror edges") {
    const Graph g = testing::random_graph(30, 0.25, 21);
    const LinkGraph lg = build_link_skein(g);
    std::size_t arcs = 0;
    for (LinkNodeId v = 0; v < lg.node_count(); ++v) {
      auto a = lg.arcs(v);
      arcs += a.size();
      CHECK(std::is_sorted(a.begin(), a.end(), [](auto x, auto y) { return x.to < y.to; }));
      for (const auto& arc : a) {
        const auto& e = lg.edge(arc.edge);
        CHECK(((e.a == v && e.b == arc.to) || (e.b == v && e.a == arc.to)));
      }
    }
    CHECK(arcs == 2 * lg.edge_count());
  }

  TEST_CASE("restore and occurrence examples") {
    const Graph g = parse("1 2\n1 3\n2 3\n3 4");
    const LinkGraph lg = build_link_skein(g);
    const LinkSubgraph single(lg, {link(lg, "1", "2")});
    CHECK(restore(single) == testing::ids(g, {"1", "2"}));
    CHECK(min_occurrence(single) == 1);

    const LinkSubgraph tri(lg, {link(lg, "1", "2"), link(lg, "1", "3"), link(lg, "2", "3")});
    CHECK(restore(tri) == testing::ids(g, {"1", "2", "3"}));
    CHECK(min_occurrence(tri) == 2);

    const LinkSubgraph tail(lg, {link(lg, "1", "2"), link(lg, "1", "3"), link(lg, "2", "3"), link(lg, "3", "4")});
    CHECK(restore(tail) == testing::ids(g, {"1", "2", "3", "4"}));
    CHECK(min_occurrence(tail) == 1);
    const auto profile = occurrence_profile(tail);
    CHECK(profile.at(*g.find("3")) == 3);
    CHECK(profile.at(*g.find("4")) == 1);

    const LinkSubgraph empty(lg, {});
    CHECK_THROWS_AS(restore(empty), std::domain_error);
    CHECK_THROWS_AS(min_occurrence(empty), std::domain_error);
    CHECK_THROWS_AS(r_connected(empty), std::domain_error);
    CHECK_THROWS_AS(LinkSubgraph(lg, {99}), std::out_of_range);
  }

  TEST_CASE("r-connectivity examples") {
    const Graph path = parse("1 2\n2 3\n3 4");
    const LinkGraph lg = build_link_skein(path);
    CHECK(r_connected(LinkSubgraph(lg, {link(lg, "1", "2"), link(lg, "2", "3")})));
    CHECK_FALSE(r_connected(LinkSubgraph(lg, {link(lg, "1", "2"), link(lg, "3", "4")})));
    const Graph diamond = parse(kDiamond);
    const LinkGraph d = build_link_skein(diamond);
    CHECK(r_connected(LinkSubgraph(d, {0, 1, 2, 3, 4})));
  }

  TEST_CASE("occurrence equals degree in the represented edge set") {
    std::mt19937_64 rng(5);
    const Graph g = testing::random_graph(25, 0.3, 8);
    const LinkGraph lg = build_link_skein(g);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<LinkNodeId> nodes;
      for (LinkNodeId v = 0; v < lg.node_count(); ++v)
        if (rng() % 4 == 0) nodes.push_back(v);
      if (nodes.empty()) continue;
      const LinkSubgraph h(lg, nodes);
      for (const auto& [u, count] : occurrence_profile(h)) {
        std::uint32_t degree = 0;
        for (auto v : h.nodes()) degree += lg.endpoints(v).u == u || lg.endpoints(v).v == u;
        CHECK(count == degree);
      }
      if (min_occurrence(h) >= 2) CHECK(min_degree(g, restore(h)) >= 2);
      if (link_connected(h)) CHECK(r_connected(h));
    }
  }

  TEST_CASE("induced link subgraph and serialization") {
    const Graph diamond = parse(kDiamond);
    const LinkGraph lg = build_link_skein(diamond);
    const auto h = induced_link_subgraph(lg, testing::ids(diamond, {"1", "2", "3"}));
    CHECK(h.size() == 3);
    CHECK(h.induced_edges().size() == 3);

    const Graph k3 = parse("1 2\n2 3\n3 1");
    const LinkGraph tri = build_link_skein(k3);
    std::ostringstream os;
    write_link_graph(os, tri);
    CHECK(os.str() == "skein 3 3\n1,2 1,3 1.000000\n1,2 2,3 1.000000\n1,3 2,3 1.000000\n");
  }

  TEST_CASE("mode names") {
    CHECK(parse_link_mode("space") == LinkMode::space);
    CHECK(to_string(LinkMode::skein) == "skein");
    CHECK_THROWS(parse_link_mode("line"));
  }
}
