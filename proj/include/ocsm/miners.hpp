#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ocsm/density.hpp"
#include "ocsm/graph.hpp"
#include "ocsm/link_graph.hpp"

namespace ocsm {

enum class Algorithm { pa, apa, sea };
enum class ExpansionStrategy { li, lg };

std::string_view to_string(Algorithm algo);
std::string_view to_string(ExpansionStrategy strategy);
Algorithm parse_algorithm(std::string_view text);
ExpansionStrategy parse_strategy(std::string_view text);

struct MinerConfig {
  std::uint32_t k = 1;  // minimum degree
  std::uint32_t t = 1;  // number of subgraphs
  ExpansionStrategy strategy = ExpansionStrategy::lg;
  std::optional<std::size_t> expansion_cap;         // default: link-node count
  std::optional<std::size_t> max_outer_iterations;  // default: 3t

  /// Throws std::invalid_argument unless k >= 1, t >= 1 and cap >= k + 1.
  void validate() const;
};

/// The k-core is empty, so no member can satisfy the degree constraint.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(std::uint32_t k, std::uint32_t max_coreness);
  std::uint32_t k() const noexcept { return k_; }
  std::uint32_t max_coreness() const noexcept { return max_coreness_; }

 private:
  std::uint32_t k_;
  std::uint32_t max_coreness_;
};

struct MinerDiagnostics {
  std::vector<double> member_gamma;          // each member's term of γ
  std::vector<std::size_t> member_iterations; // peel steps (APA) or expansion steps (SEA)
  std::size_t outer_iterations = 0;
  std::size_t failed_seeds = 0;  // SEA only
  double build_ms = 0.0;
  double mine_ms = 0.0;
};

struct MinerOutcome {
  explicit MinerOutcome(std::shared_ptr<const LinkGraph> lg)
      : link_graph(std::move(lg)), solution(*link_graph) {}

  std::shared_ptr<const LinkGraph> link_graph;
  Solution solution;
  bool complete = false;
  MinerDiagnostics diagnostics;
};

/// Cascading removal of every link-node incident to an original node whose
/// occurrence is below k. The result is the unique maximal subset with
/// β >= k, possibly empty.
LinkSubgraph peel_to_feasible(const LinkSubgraph& h, std::uint32_t k);

/// Repeated peel-and-split until every part is link-connected with β >= k.
/// Parts are ordered by smallest link-node id.
std::vector<LinkSubgraph> feasible_components(const LinkSubgraph& h, std::uint32_t k);

/// Grows `seed` through link-graph neighbors (restricted to `allowed` when
/// non-empty, indexed by link-node id) until β >= k. li picks the candidate
/// with most links into the set, lg the largest β increment; ties go to the
/// smallest id. Returns nullopt when the frontier empties or the set exceeds
/// the expansion cap.
std::optional<LinkSubgraph> sea_expand(const LinkSubgraph& seed, const MinerConfig& cfg,
                                       std::span<const char> allowed = {});

/// The miners take a link graph built from the full input graph and restrict
/// the search to link-nodes of the k-core.
MinerOutcome pa_mine(std::shared_ptr<const LinkGraph> lg, const MinerConfig& cfg);
MinerOutcome apa_mine(std::shared_ptr<const LinkGraph> lg, const MinerConfig& cfg);
MinerOutcome sea_mine(std::shared_ptr<const LinkGraph> lg, const MinerConfig& cfg);

MinerOutcome mine(Algorithm algo, std::shared_ptr<const LinkGraph> lg, const MinerConfig& cfg);

/// Builds the link-skein graph of g (timed into diagnostics.build_ms) and mines.
MinerOutcome mine(Algorithm algo, const Graph& g, const MinerConfig& cfg);
MinerOutcome mine(Algorithm, const Graph&&, const MinerConfig&) = delete;

inline MinerOutcome pa_mine(const Graph& g, const MinerConfig& cfg) { return mine(Algorithm::pa, g, cfg); }
MinerOutcome pa_mine(const Graph&&, const MinerConfig&) = delete;
inline MinerOutcome apa_mine(const Graph& g, const MinerConfig& cfg) { return mine(Algorithm::apa, g, cfg); }
MinerOutcome apa_mine(const Graph&&, const MinerConfig&) = delete;
inline MinerOutcome sea_mine(const Graph& g, const MinerConfig& cfg) { return mine(Algorithm::sea, g, cfg); }
MinerOutcome sea_mine(const Graph&&, const MinerConfig&) = delete;

/// Independent re-check of the member constraints: β >= k, R-connectivity and
/// induced minimum degree >= k in the original graph.
bool member_is_feasible(const LinkSubgraph& h, std::uint32_t k);

}  // namespace ocsm
