#include "ocsm/density.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocsm {

Solution::Solution(const LinkGraph& lg)
    : graph_(&lg), occurrence_(lg.edge_count(), 0), inverse_size_sum_(lg.edge_count(), 0.0) {}

void Solution::add(LinkSubgraph h) {
  if (h.empty()) throw std::domain_error("Solution::add: empty member");
  if (h.graph_ptr() != graph_) throw std::invalid_argument("Solution::add: member of another link graph");
  auto edges = h.induced_edges();
  const double inv = 1.0 / static_cast<double>(h.size());
  for (LinkEdgeId e : edges) {
    ++occurrence_[e];
    inverse_size_sum_[e] += inv;
  }
  induced_.push_back(std::move(edges));
  members_.push_back(std::move(h));
}

void Solution::pop_back() {
  if (members_.empty()) throw std::logic_error("Solution::pop_back: no members");
  const double inv = 1.0 / static_cast<double>(members_.back().size());
  for (LinkEdgeId e : induced_.back()) {
    --occurrence_[e];
    inverse_size_sum_[e] = occurrence_[e] == 0 ? 0.0 : inverse_size_sum_[e] - inv;
  }
  induced_.pop_back();
  members_.pop_back();
}

double Solution::gain_if_added(const LinkSubgraph& h) const {
  if (h.empty()) throw std::domain_error("Solution::gain_if_added: empty member");
  return gain_if_added(h.size(), h.induced_edges());
}

double Solution::gain_if_added(std::size_t h_size, std::span<const LinkEdgeId> h_edges) const {
  if (h_size == 0) throw std::domain_error("Solution::gain_if_added: empty member");
  const double inv = 1.0 / static_cast<double>(h_size);
  double gain = 0.0;
  for (LinkEdgeId e : h_edges) {
    const double w = graph_->weight(e);
    const double o = occurrence_[e];
    gain += w / (o + 1.0) * inv;
    // Existing members inducing e see their share drop from w/o to w/(o+1).
    if (o > 0) gain -= inverse_size_sum_[e] * (w / o - w / (o + 1.0));
  }
  return gain;
}

std::vector<double> Solution::member_contributions() const {
  std::vector<double> out;
  out.reserve(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    double sum = 0.0;
    for (LinkEdgeId e : induced_[i]) sum += graph_->weight(e) / occurrence_[e];
    out.push_back(sum / static_cast<double>(members_[i].size()));
  }
  return out;
}

double link_density(const Solution& sol) {
  double total = 0.0;
  for (double c : sol.member_contributions()) total += c;
  return total;
}

double weighted_subgraph_density(const LinkSubgraph& h, std::span<const double> weights) {
  if (h.empty()) throw std::domain_error("weighted_subgraph_density: empty link subgraph");
  double sum = 0.0;
  for (LinkEdgeId e : h.induced_edges()) sum += weights[e];
  return sum / static_cast<double>(h.size());
}

double weighted_subgraph_density(const LinkSubgraph& h) {
  if (h.empty()) throw std::domain_error("weighted_subgraph_density: empty link subgraph");
  double sum = 0.0;
  for (LinkEdgeId e : h.induced_edges()) sum += h.graph().weight(e);
  return sum / static_cast<double>(h.size());
}

double ratio_bound(const LinkGraph& lg, double result_density) {
  if (!(result_density > 0.0)) throw std::domain_error("ratio_bound: density must be positive");
  return lg.max_weight() / result_density;
}

double modularity_eval(const Graph& g, const Solution& sol) {
  const std::size_t n = g.node_count();
  const double m = static_cast<double>(g.edge_count());
  if (m == 0) return 0.0;
  constexpr std::size_t unassigned = SIZE_MAX;
  std::vector<std::size_t> community(n, unassigned);
  for (std::size_t i = 0; i < sol.size(); ++i) {
    for (NodeId v : restore(sol.members()[i])) {
      if (community[v] == unassigned) community[v] = i;
    }
  }
  std::size_t next = sol.size();
  for (auto& c : community) {
    if (c == unassigned) c = next++;
  }
  std::vector<double> internal(next, 0.0), degree_sum(next, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    degree_sum[community[v]] += static_cast<double>(g.degree(v));
    for (NodeId u : g.neighbors(v)) {
      if (v < u && community[u] == community[v]) internal[community[v]] += 1.0;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < next; ++c) {
    const double share = degree_sum[c] / (2.0 * m);
    q += internal[c] / m - share * share;
  }
  return q;
}

ConductanceSummary conductance_eval(const Graph& g, const Solution& sol) {
  ConductanceSummary out;
  double total_volume = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) total_volume += static_cast<double>(g.degree(v));
  double sum = 0.0;
  for (const auto& member : sol.members()) {
    const NodeSet s = restore(member);
    if (s.size() == g.node_count()) {
      ++out.skipped;
      continue;
    }
    double volume = 0.0, cut = 0.0;
    for (NodeId v : s) {
      volume += static_cast<double>(g.degree(v));
      for (NodeId u : g.neighbors(v)) {
        if (!std::binary_search(s.begin(), s.end(), u)) cut += 1.0;
      }
    }
    const double denom = std::min(volume, total_volume - volume);
    const double phi = denom > 0.0 ? cut / denom : 0.0;
    sum += 1.0 - phi;
    ++out.evaluated;
  }
  if (out.evaluated > 0) out.mean_one_minus_conductance = sum / static_cast<double>(out.evaluated);
  return out;
}

FreeRiderGap free_rider_gap(const LinkGraph& space, const LinkGraph& skein,
                            std::span<const LinkNodeId> c, std::span<const LinkNodeId> opt) {
  if (space.node_count() != skein.node_count()) {
    throw std::invalid_argument("free_rider_gap: link graphs of different source graphs");
  }
  std::vector<LinkNodeId> merged(c.begin(), c.end());
  merged.insert(merged.end(), opt.begin(), opt.end());
  auto density = [](const LinkGraph& lg, std::span<const LinkNodeId> nodes) {
    return weighted_subgraph_density(LinkSubgraph(lg, {nodes.begin(), nodes.end()}));
  };
  return {density(space, merged) - density(space, c), density(skein, merged) - density(skein, c)};
}

DensityReport evaluate(const Graph& g, const Solution& sol) {
  DensityReport r;
  r.link_density = link_density(sol);
  for (const auto& member : sol.members()) r.member_densities.push_back(weighted_subgraph_density(member));
  r.w_max = sol.graph().max_weight();
  r.ratio_bound = r.link_density > 0.0 ? ratio_bound(sol.graph(), r.link_density) : 0.0;
  r.modularity = modularity_eval(g, sol);
  const auto cond = conductance_eval(g, sol);
  r.mean_conductance = cond.mean_one_minus_conductance;
  if (cond.skipped > 0) {
    r.warnings.push_back(std::to_string(cond.skipped) + " member(s) cover every node; skipped in conductance");
  }
  return r;
}

}  // namespace ocsm
