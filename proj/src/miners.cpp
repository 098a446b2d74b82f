#include "ocsm/miners.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <string>
#include <unordered_map>

#include "ocsm/densest.hpp"

namespace ocsm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

bool contains_sorted(std::span<const LinkNodeId> nodes, LinkNodeId v) {
  return std::binary_search(nodes.begin(), nodes.end(), v);
}

// Link-connected parts of `nodes` (sorted), ordered by smallest member.
std::vector<std::vector<LinkNodeId>> split_components(const LinkGraph& lg, std::span<const LinkNodeId> nodes) {
  std::vector<char> seen(nodes.size(), 0);
  auto rank = [&](LinkNodeId v) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };
  std::vector<std::vector<LinkNodeId>> out;
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    if (seen[r]) continue;
    std::vector<LinkNodeId> comp{nodes[r]};
    seen[r] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (const auto& arc : lg.arcs(comp[i])) {
        if (!contains_sorted(nodes, arc.to)) continue;
        auto q = rank(arc.to);
        if (!seen[q]) {
          seen[q] = 1;
          comp.push_back(arc.to);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

double density_under(const LinkGraph& lg, std::span<const LinkNodeId> nodes, std::span<const double> weights) {
  double sum = 0.0;
  for (LinkNodeId v : nodes) {
    for (const auto& arc : lg.arcs(v)) {
      if (arc.to > v && contains_sorted(nodes, arc.to)) sum += weights[arc.edge];
    }
  }
  return nodes.empty() ? 0.0 : sum / static_cast<double>(nodes.size());
}

// Link-nodes whose endpoints both lie in the k-core.
std::vector<LinkNodeId> core_link_nodes(const LinkGraph& lg, std::uint32_t k) {
  const Graph& g = lg.source();
  const auto core = coreness(g);
  std::vector<LinkNodeId> out;
  for (LinkNodeId v = 0; v < lg.node_count(); ++v) {
    auto e = lg.endpoints(v);
    if (core[e.u] >= k && core[e.v] >= k) out.push_back(v);
  }
  if (out.empty()) {
    std::uint32_t best = 0;
    for (auto c : core) best = std::max(best, c);
    throw FeasibilityError(k, best);
  }
  return out;
}

bool is_member(const Solution& sol, const LinkSubgraph& h) {
  return std::any_of(sol.members().begin(), sol.members().end(), [&](const LinkSubgraph& m) { return m == h; });
}

void finish(MinerOutcome& out, const MinerConfig& cfg, Clock::time_point started) {
  out.complete = out.solution.size() == cfg.t;
  out.diagnostics.member_gamma = out.solution.member_contributions();
  out.diagnostics.mine_ms = elapsed_ms(started);
}

// Feasible components of the k-core part of the link graph; the PA candidates.
std::vector<LinkSubgraph> pa_candidates(const LinkGraph& lg, std::uint32_t k) {
  const auto allowed = core_link_nodes(lg, k);
  std::vector<LinkSubgraph> out;
  for (auto& comp : split_components(lg, allowed)) {
    for (auto& part : feasible_components(LinkSubgraph(lg, std::move(comp)), k)) out.push_back(std::move(part));
  }
  return out;
}

}  // namespace

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::pa: return "pa";
    case Algorithm::apa: return "apa";
    case Algorithm::sea: return "sea";
  }
  return "?";
}

std::string_view to_string(ExpansionStrategy strategy) {
  return strategy == ExpansionStrategy::li ? "li" : "lg";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "pa") return Algorithm::pa;
  if (text == "apa") return Algorithm::apa;
  if (text == "sea") return Algorithm::sea;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

ExpansionStrategy parse_strategy(std::string_view text) {
  if (text == "li") return ExpansionStrategy::li;
  if (text == "lg") return ExpansionStrategy::lg;
  throw std::invalid_argument("unknown expansion strategy '" + std::string(text) + "'");
}

void MinerConfig::validate() const {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  if (expansion_cap && *expansion_cap < static_cast<std::size_t>(k) + 1) {
    throw std::invalid_argument("expansion cap must be at least k + 1");
  }
  if (max_outer_iterations && *max_outer_iterations < 1) {
    throw std::invalid_argument("max outer iterations must be positive");
  }
}

FeasibilityError::FeasibilityError(std::uint32_t k, std::uint32_t max_coreness)
    : std::runtime_error("the " + std::to_string(k) + "-core is empty; maximum coreness is " +
                         std::to_string(max_coreness) + ", choose k <= " + std::to_string(max_coreness)),
      k_(k),
      max_coreness_(max_coreness) {}

LinkSubgraph peel_to_feasible(const LinkSubgraph& h, std::uint32_t k) {
  if (h.empty()) return h;
  const LinkGraph& lg = h.graph();
  const auto nodes = h.nodes();

  // Compact the original endpoints and build their incidence lists.
  std::vector<NodeId> originals;
  originals.reserve(2 * nodes.size());
  for (LinkNodeId v : nodes) {
    auto e = lg.endpoints(v);
    originals.push_back(e.u);
    originals.push_back(e.v);
  }
  std::sort(originals.begin(), originals.end());
  originals.erase(std::unique(originals.begin(), originals.end()), originals.end());
  auto local = [&](NodeId u) {
    return static_cast<std::size_t>(std::lower_bound(originals.begin(), originals.end(), u) - originals.begin());
  };
  std::vector<std::vector<std::size_t>> incident(originals.size());
  std::vector<std::uint32_t> occurrence(originals.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto e = lg.endpoints(nodes[i]);
    for (auto x : {local(e.u), local(e.v)}) {
      incident[x].push_back(i);
      ++occurrence[x];
    }
  }

  std::vector<char> alive(nodes.size(), 1), dead(originals.size(), 0);
  std::vector<std::size_t> queue;
  for (std::size_t x = 0; x < originals.size(); ++x) {
    if (occurrence[x] < k) {
      dead[x] = 1;
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    const auto x = queue.back();
    queue.pop_back();
    for (auto i : incident[x]) {
      if (!alive[i]) continue;
      alive[i] = 0;
      auto e = lg.endpoints(nodes[i]);
      for (auto y : {local(e.u), local(e.v)}) {
        --occurrence[y];
        if (!dead[y] && occurrence[y] < k) {
          dead[y] = 1;
          queue.push_back(y);
        }
      }
    }
  }
  std::vector<LinkNodeId> kept;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (alive[i]) kept.push_back(nodes[i]);
  }
  return LinkSubgraph(lg, std::move(kept));
}

std::vector<LinkSubgraph> feasible_components(const LinkSubgraph& h, std::uint32_t k) {
  std::vector<LinkSubgraph> done;
  std::vector<LinkSubgraph> work{h};
  while (!work.empty()) {
    LinkSubgraph current = peel_to_feasible(work.back(), k);
    work.pop_back();
    if (current.empty()) continue;
    auto parts = split_components(current.graph(), current.nodes());
    if (parts.size() == 1) {
      done.push_back(std::move(current));
      continue;
    }
    for (auto& part : parts) {
      LinkSubgraph sub(current.graph(), std::move(part));
      if (min_occurrence(sub) >= k && link_connected(sub)) {
        done.push_back(std::move(sub));
      } else {
        work.push_back(std::move(sub));
      }
    }
  }
  std::sort(done.begin(), done.end(),
            [](const LinkSubgraph& a, const LinkSubgraph& b) { return a.nodes().front() < b.nodes().front(); });
  return done;
}

std::optional<LinkSubgraph> sea_expand(const LinkSubgraph& seed, const MinerConfig& cfg,
                                       std::span<const char> allowed) {
  if (seed.empty()) return std::nullopt;
  const LinkGraph& lg = seed.graph();
  const std::uint32_t k = cfg.k;
  const std::size_t cap = cfg.expansion_cap.value_or(lg.node_count());

  std::vector<LinkNodeId> members(seed.nodes().begin(), seed.nodes().end());
  std::unordered_map<LinkNodeId, char> inside;
  for (auto v : members) inside[v] = 1;
  std::unordered_map<NodeId, std::uint32_t> occurrence;
  std::map<std::uint32_t, std::size_t> histogram;  // occurrence value -> node count
  auto bump = [&](NodeId u) {
    auto& c = occurrence[u];
    if (c > 0 && --histogram[c] == 0) histogram.erase(c);
    ++c;
    ++histogram[c];
  };
  for (auto v : members) {
    auto e = lg.endpoints(v);
    bump(e.u);
    bump(e.v);
  }
  auto beta = [&] { return histogram.begin()->first; };

  // Frontier: outside neighbors with their number of links into the set.
  std::map<LinkNodeId, std::uint32_t> frontier;
  auto admit = [&](LinkNodeId v) {
    for (const auto& arc : lg.arcs(v)) {
      if (inside.count(arc.to)) continue;
      if (!allowed.empty() && !allowed[arc.to]) continue;
      ++frontier[arc.to];
    }
  };
  for (auto v : members) admit(v);

  while (beta() < k) {
    if (frontier.empty() || members.size() >= cap) return std::nullopt;
    const std::uint32_t current = beta();
    LinkNodeId pick = frontier.begin()->first;
    long best_score = -1;
    for (const auto& [v, links] : frontier) {  // ascending id, strict > keeps the smallest
      long score;
      if (cfg.strategy == ExpansionStrategy::li) {
        score = links;
      } else {
        auto e = lg.endpoints(v);
        auto ou = occurrence.find(e.u);
        auto ov = occurrence.find(e.v);
        std::uint32_t next;
        if (ou == occurrence.end() || ov == occurrence.end()) {
          next = 1;
        } else {
          std::size_t at_min = histogram.begin()->second;
          if (ou->second == current) --at_min;
          if (ov->second == current) --at_min;
          next = at_min > 0 ? current : current + 1;
        }
        score = static_cast<long>(next) - static_cast<long>(current);
      }
      if (score > best_score) {
        best_score = score;
        pick = v;
      }
    }
    frontier.erase(pick);
    inside[pick] = 1;
    members.push_back(pick);
    auto e = lg.endpoints(pick);
    bump(e.u);
    bump(e.v);
    admit(pick);
  }
  return LinkSubgraph(lg, std::move(members));
}

MinerOutcome pa_mine(std::shared_ptr<const LinkGraph> lg, const MinerConfig& cfg) {
  cfg.validate();
  const auto started = Clock::now();
  MinerOutcome out(lg);
  auto candidates = pa_candidates(*lg, cfg.k);
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < candidates.size(); ++i) ranked.emplace_back(weighted_subgraph_density(candidates[i]), i);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < ranked.size() && out.solution.size() < cfg.t; ++i) {
    out.solution.add(candidates[ranked[i].second]);
  }
  out.diagnostics.outer_iterations = 1;
  finish(out, cfg, started);
  return out;
}

MinerOutcome apa_mine(std::shared_ptr<const LinkGraph> lg, const MinerConfig& cfg) {
  cfg.validate();
  const auto started = Clock::now();
  MinerOutcome out(lg);
  Solution& sol = out.solution;
  const LinkGraph& graph = *lg;

  std::vector<LinkSubgraph> pool = pa_candidates(graph, cfg.k);
  std::vector<double> effective = graph.weights();
  auto known = [&](const LinkSubgraph& h) {
    return std::any_of(pool.begin(), pool.end(), [&](const LinkSubgraph& p) { return p == h; });
  };

  // Peeling chain T_1, T_2, ... from one component under the effective weights.
  auto chain_from = [&](const LinkSubgraph& start) {
    std::vector<LinkSubgraph> recorded{start};
    std::vector<LinkSubgraph> split_off;
    std::vector<LinkNodeId> current(start.nodes().begin(), start.nodes().end());
    while (true) {
      LinkNodeId weakest = current.front();
      double weakest_avg = 0.0;
      bool first = true;
      for (LinkNodeId v : current) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& arc : graph.arcs(v)) {
          if (contains_sorted(current, arc.to)) {
            sum += effective[arc.edge];
            ++count;
          }
        }
        const double avg = count ? sum / static_cast<double>(count) : 0.0;
        if (first || avg < weakest_avg) {
          first = false;
          weakest_avg = avg;
          weakest = v;
        }
      }
      current.erase(std::lower_bound(current.begin(), current.end(), weakest));
      if (current.empty()) break;
      auto parts = feasible_components(LinkSubgraph(graph, current), cfg.k);
      if (parts.empty()) break;
      std::size_t chosen = 0;
      double chosen_density = -1.0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const double d = density_under(graph, parts[i].nodes(), effective);
        if (d > chosen_density) {
          chosen_density = d;
          chosen = i;
        }
      }
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != chosen) split_off.push_back(parts[i]);
      }
      current.assign(parts[chosen].nodes().begin(), parts[chosen].nodes().end());
      recorded.push_back(std::move(parts[chosen]));
    }
    return std::pair{std::move(recorded), std::move(split_off)};
  };

  while (sol.size() < cfg.t) {
    ++out.diagnostics.outer_iterations;
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      ranked.emplace_back(density_under(graph, pool[i].nodes(), effective), i);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    bool accepted = false;
    for (const auto& [density, index] : ranked) {
      auto [recorded, split_off] = chain_from(pool[index]);
      for (auto& part : split_off) {
        if (!known(part)) pool.push_back(std::move(part));
      }
      // pickBest: largest γ after adding; ties keep the earliest (largest) set.
      std::optional<std::size_t> best;
      double best_gain = 0.0;
      for (std::size_t i = 0; i < recorded.size(); ++i) {
        if (is_member(sol, recorded[i])) continue;
        const double gain = sol.gain_if_added(recorded[i]);
        if (!best || gain > best_gain) {
          best = i;
          best_gain = gain;
        }
      }
      if (!best) continue;
      out.diagnostics.member_iterations.push_back(recorded.size());
      sol.add(recorded[*best]);
      const auto edges = sol.induced_edges(sol.size() - 1);
      for (LinkEdgeId e : edges) effective[e] = graph.weight(e) / (1.0 + sol.occurrence(e));
      accepted = true;
      break;
    }
    if (!accepted) break;
  }
  finish(out, cfg, started);
  return out;
}

MinerOutcome sea_mine(std::shared_ptr<const LinkGraph> lg, const MinerConfig& cfg) {
  cfg.validate();
  const auto started = Clock::now();
  MinerOutcome out(lg);
  Solution& sol = out.solution;
  const LinkGraph& graph = *lg;

  std::vector<LinkNodeId> working = core_link_nodes(graph, cfg.k);
  std::vector<char> allowed(graph.node_count(), 0);
  for (auto v : working) allowed[v] = 1;
  std::vector<double> effective = graph.weights();
  const std::size_t max_outer = cfg.max_outer_iterations.value_or(3 * static_cast<std::size_t>(cfg.t));

  while (sol.size() < cfg.t && !working.empty() && out.diagnostics.outer_iterations < max_outer) {
    ++out.diagnostics.outer_iterations;
    auto seed = goldberg_densest(graph, working, effective).subgraph;
    auto expanded = sea_expand(seed, cfg, allowed);
    if (expanded && !is_member(sol, *expanded)) {
      out.diagnostics.member_iterations.push_back(expanded->size() - seed.size());
      sol.add(std::move(*expanded));
      for (LinkEdgeId e : sol.induced_edges(sol.size() - 1)) effective[e] = 0.0;
      continue;
    }
    ++out.diagnostics.failed_seeds;
    for (auto v : seed.nodes()) allowed[v] = 0;
    std::erase_if(working, [&](LinkNodeId v) { return !allowed[v]; });
  }
  finish(out, cfg, started);
  return out;
}

MinerOutcome mine(Algorithm algo, std::shared_ptr<const LinkGraph> lg, const MinerConfig& cfg) {
  switch (algo) {
    case Algorithm::pa: return pa_mine(std::move(lg), cfg);
    case Algorithm::apa: return apa_mine(std::move(lg), cfg);
    case Algorithm::sea: return sea_mine(std::move(lg), cfg);
  }
  throw std::invalid_argument("unknown algorithm");
}

MinerOutcome mine(Algorithm algo, const Graph& g, const MinerConfig& cfg) {
  cfg.validate();
  const auto started = Clock::now();
  auto lg = std::make_shared<const LinkGraph>(build_link_skein(g));
  const double build_ms = elapsed_ms(started);
  auto out = mine(algo, std::move(lg), cfg);
  out.diagnostics.build_ms = build_ms;
  return out;
}

bool member_is_feasible(const LinkSubgraph& h, std::uint32_t k) {
  if (h.empty()) return false;
  if (min_occurrence(h) < k || !r_connected(h)) return false;
  return min_degree(h.graph().source(), restore(h)) >= k;
}

}  // namespace ocsm
