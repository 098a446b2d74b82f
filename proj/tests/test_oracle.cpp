#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ocsm/oracle.hpp"
#include "support.hpp"

using namespace ocsm;
using testing::parse;

namespace {

const char* const kBowtie = "1 2\n1 3\n2 3\n3 4\n3 5\n4 5";

// Best γ over all t-subsets of the candidates, straight from the definition.
double best_gamma(const LinkGraph& lg, const std::vector<LinkSubgraph>& cands, std::size_t t) {
  double best = 0.0;
  std::vector<char> pick(cands.size(), 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(t), pick.end(), 1);
  do {
    Solution sol(lg);
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (pick[i]) sol.add(cands[i]);
    best = std::max(best, link_density(sol));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("enumeration examples") {
    const Graph k3 = parse("1 2\n2 3\n3 1");
    CHECK(enumerate_feasible_subgraphs(k3, 2) == std::vector<NodeSet>{{0, 1, 2}});

    const Graph bowtie = parse(kBowtie);
    const auto sets = enumerate_feasible_subgraphs(bowtie, 2);
    REQUIRE(sets.size() == 3);
    CHECK(sets[0] == testing::ids(bowtie, {"1", "2", "3"}));
    CHECK(sets[1] == testing::ids(bowtie, {"3", "4", "5"}));
    CHECK(sets[2].size() == 5);
    CHECK(count_feasible_subgraphs(bowtie, 2) == 3);
  }

  TEST_CASE("enumeration equals subset brute force on random graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Graph g = testing::random_graph(8 + seed % 7, 0.3 + 0.05 * static_cast<double>(seed % 6), 60 + seed);
      for (std::uint32_t k = 1; k <= 3; ++k) {
        const auto expect = testing::brute_feasible_sets(g, k);
        CHECK(enumerate_feasible_subgraphs(g, k) == expect);
        CHECK(count_feasible_subgraphs(g, k) == expect.size());
      }
    }
  }

  TEST_CASE("threshold counts") {
    const Graph bowtie = parse(kBowtie);
    const auto c = count_by_threshold(bowtie, 2);
    CHECK(c.at_least_k == 3);
    CHECK(c.at_least_k_plus_one == 0);
  }

  TEST_CASE("limits") {
    const Graph g = testing::random_graph(45, 0.1, 1);
    CHECK_THROWS_AS(enumerate_feasible_subgraphs(g, 2), std::invalid_argument);
    OracleLimits too_wide;
    too_wide.max_graph_nodes = 65;
    CHECK_THROWS_AS(enumerate_feasible_subgraphs(parse(kBowtie), 2, too_wide), std::invalid_argument);

    const Graph dense = testing::random_graph(16, 0.7, 2);
    OracleLimits tight;
    tight.max_candidates = 10;
    try {
      enumerate_feasible_subgraphs(dense, 2, tight);
      FAIL("expected EnumerationLimitError");
    } catch (const EnumerationLimitError& e) {
      CHECK(e.partial_count() > 10);
    }
  }

  TEST_CASE("exact top-t examples") {
    const Graph bowtie = parse(kBowtie);
    auto r = exact_top_t(bowtie, 2, 2);
    CHECK(r.exhaustive);
    CHECK(r.candidate_count == 3);
    REQUIRE(r.outcome.solution.size() == 2);
    CHECK(restore(r.outcome.solution.members()[0]) == testing::ids(bowtie, {"1", "2", "3"}));
    CHECK(restore(r.outcome.solution.members()[1]) == testing::ids(bowtie, {"3", "4", "5"}));
    CHECK(std::abs(link_density(r.outcome.solution) - 1.4667) < 1e-4);

    const Graph k3 = parse("1 2\n2 3\n3 1");
    r = exact_top_t(k3, 2, 1);
    CHECK(link_density(r.outcome.solution) == doctest::Approx(1.0));
    r = exact_top_t(k3, 2, 2);
    CHECK_FALSE(r.outcome.complete);

    const Graph path = parse("1 2\n2 3");
    CHECK_THROWS_AS(exact_top_t(path, 2, 1), FeasibilityError);
    CHECK_THROWS_AS(exact_top_t(k3, 2, 0), std::invalid_argument);
  }

  TEST_CASE("exhaustive selection is optimal and dominates the miners") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const Graph g = testing::random_graph(10, 0.45, 200 + seed);
      if (max_coreness(g) < 2) continue;
      const auto r = exact_top_t(g, 2, 2);
      if (!r.exhaustive) continue;
      const LinkGraph& lg = *r.outcome.link_graph;
      std::vector<LinkSubgraph> cands;
      for (const auto& s : enumerate_feasible_subgraphs(g, 2)) cands.push_back(induced_link_subgraph(lg, s));
      const std::size_t t = std::min<std::size_t>(2, cands.size());
      const double opt = link_density(r.outcome.solution);
      CHECK(opt == doctest::Approx(best_gamma(lg, cands, t)));
      // Miner members are R-induced candidates only when closed under G[S];
      // compare against induced versions of their node sets.
      for (auto algo : {Algorithm::pa, Algorithm::apa, Algorithm::sea}) {
        const auto out = mine(algo, g, {.k = 2, .t = 2});
        Solution induced(lg);
        for (const auto& h : out.solution.members()) induced.add(induced_link_subgraph(lg, restore(h)));
        if (induced.size() == t) CHECK(link_density(induced) <= opt + 1e-9);
      }
    }
  }

  TEST_CASE("greedy fallback on many candidates") {
    const Graph g = parse(kBowtie);
    OracleLimits limits;
    limits.exact_combination_limit = 1;
    const auto r = exact_top_t(g, 2, 2, limits);
    CHECK_FALSE(r.exhaustive);
    CHECK(link_density(r.outcome.solution) == doctest::Approx(2 * 2.2 / 3.0));
  }
}
