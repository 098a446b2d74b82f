#include "ocsm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ocsm/density.hpp"
#include "ocsm/graph.hpp"
#include "ocsm/link_graph.hpp"
#include "ocsm/miners.hpp"
#include "ocsm/oracle.hpp"

namespace ocsm::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

double ms_since(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// nlohmann prints floats in shortest round-trip form; reports want a fixed
// six decimals, so the layout is written here.
void write_json(std::ostream& os, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(key).dump() << ": ";
        write_json(os, value, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        os << "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", std::abs(x) < 5e-7 ? 0.0 : x);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

std::string render(const Json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << "\n";
  return os.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
  if (!file) throw std::runtime_error("write failed: " + path);
}

Json input_summary(const std::string& path, const Graph& g, const LinkGraph& lg) {
  Json j;
  j["path"] = path;
  j["nodes"] = g.node_count();
  j["edges"] = g.edge_count();
  j["link_mode"] = std::string(to_string(lg.mode()));
  j["link_nodes"] = lg.node_count();
  j["link_edges"] = lg.edge_count();
  return j;
}

Json members_json(const Graph& g, const Solution& sol) {
  Json arr = Json::array();
  const auto gamma = sol.member_contributions();
  for (std::size_t i = 0; i < sol.size(); ++i) {
    const auto& h = sol.members()[i];
    Json m;
    m["nodes"] = format_node_set(g, restore(h));
    m["link_nodes"] = h.size();
    m["min_occurrence"] = min_occurrence(h);
    m["gamma"] = gamma[i];
    m["density"] = weighted_subgraph_density(h);
    arr.push_back(std::move(m));
  }
  return arr;
}

Json density_json(const DensityReport& r) {
  Json j;
  j["link_density"] = r.link_density;
  j["w_max"] = r.w_max;
  j["ratio_bound"] = r.ratio_bound;
  j["modularity"] = r.modularity;
  j["mean_one_minus_conductance"] = r.mean_conductance;
  j["warnings"] = r.warnings;
  return j;
}

void recheck(const Solution& sol, std::uint32_t k) {
  for (std::size_t i = 0; i < sol.size(); ++i) {
    if (!member_is_feasible(sol.members()[i], k)) {
      throw std::logic_error("member " + std::to_string(i) + " failed the feasibility recheck");
    }
  }
}

struct Common {
  std::string input;
  std::string out;
  std::string mode = "skein";
};

void add_common(CLI::App* sub, Common& c, bool with_mode) {
  sub->add_option("--input", c.input, "Edge list file")->required();
  sub->add_option("--out", c.out, "Output path (default stdout)");
  if (with_mode) {
    sub->add_option("--mode", c.mode, "Link graph variant")
        ->check(CLI::IsMember({"space", "skein"}))
        ->capture_default_str();
  }
}

// --- linkgraph -------------------------------------------------------------

int cmd_linkgraph(const Common& c, std::ostream& out) {
  const Graph g = load_edge_list_file(c.input);
  const LinkGraph lg = build_link_graph(g, parse_link_mode(c.mode));
  std::ostringstream os;
  write_link_graph(os, lg);
  emit(os.str(), c.out, out);
  return 0;
}

// --- mine ------------------------------------------------------------------

struct MineOptions {
  std::string algo;
  std::uint32_t k = 1;
  std::uint32_t t = 1;
  std::string strategy = "lg";
  std::optional<std::uint64_t> seed;
};

int cmd_mine(const Common& c, const MineOptions& o, std::ostream& out) {
  auto started = Clock::now();
  const Graph g = load_edge_list_file(c.input);
  const double load_ms = ms_since(started);

  MinerConfig cfg;
  cfg.k = o.k;
  cfg.t = o.t;
  cfg.strategy = parse_strategy(o.strategy);
  cfg.validate();
  const Algorithm algo = parse_algorithm(o.algo);

  started = Clock::now();
  auto lg = std::make_shared<const LinkGraph>(build_link_graph(g, parse_link_mode(c.mode)));
  const double build_ms = ms_since(started);

  MinerOutcome result = mine(algo, lg, cfg);
  recheck(result.solution, cfg.k);

  started = Clock::now();
  const DensityReport report = evaluate(g, result.solution);
  const double eval_ms = ms_since(started);

  Json j;
  j["command"] = "mine";
  j["config"] = {{"algorithm", o.algo}, {"k", cfg.k}, {"t", cfg.t}, {"strategy", o.strategy}};
  j["input"] = input_summary(c.input, g, *lg);
  j["complete"] = result.complete;
  j["members"] = members_json(g, result.solution);
  j["density"] = density_json(report);
  j["diagnostics"] = {{"outer_iterations", result.diagnostics.outer_iterations},
                      {"failed_seeds", result.diagnostics.failed_seeds}};
  j["timings_ms"] = {{"load", load_ms}, {"build", build_ms}, {"mine", result.diagnostics.mine_ms}, {"eval", eval_ms}};
  emit(render(j), c.out, out);
  return 0;
}

// --- eval ------------------------------------------------------------------

// Member files hold one member per line as whitespace separated node labels,
// or are a report written by `mine` / `oracle`.
std::vector<std::vector<std::string>> read_members(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::vector<std::vector<std::string>> out;

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const Json report = Json::parse(text);
    for (const auto& m : report.at("members")) out.push_back(m.at("nodes").get<std::vector<std::string>>());
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream tokens(line);
    std::vector<std::string> labels;
    for (std::string tok; tokens >> tok;) labels.push_back(tok);
    if (!labels.empty()) out.push_back(std::move(labels));
  }
  return out;
}

int cmd_eval(const Common& c, const std::string& members_path, std::ostream& out) {
  const Graph g = load_edge_list_file(c.input);
  auto started = Clock::now();
  const LinkGraph lg = build_link_graph(g, parse_link_mode(c.mode));
  const double build_ms = ms_since(started);

  Solution sol(lg);
  for (const auto& labels : read_members(members_path)) {
    NodeSet s;
    for (const auto& label : labels) {
      auto id = g.find(label);
      if (!id) throw std::runtime_error("unknown node label '" + label + "' in " + members_path);
      s.push_back(*id);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto h = induced_link_subgraph(lg, s);
    if (h.empty()) throw std::runtime_error("member with no internal edge in " + members_path);
    sol.add(std::move(h));
  }

  started = Clock::now();
  const DensityReport report = evaluate(g, sol);
  const double eval_ms = ms_since(started);

  Json j;
  j["command"] = "eval";
  j["input"] = input_summary(c.input, g, lg);
  j["members"] = members_json(g, sol);
  j["density"] = density_json(report);
  j["timings_ms"] = {{"build", build_ms}, {"eval", eval_ms}};
  emit(render(j), c.out, out);
  return 0;
}

// --- oracle ----------------------------------------------------------------

struct OracleOptions {
  std::uint32_t k = 1;
  std::uint32_t t = 1;
  std::size_t max_nodes = OracleLimits{}.max_graph_nodes;
};

int cmd_oracle(const Common& c, const OracleOptions& o, std::ostream& out) {
  const Graph g = load_edge_list_file(c.input);
  OracleLimits limits;
  limits.max_graph_nodes = o.max_nodes;

  const auto started = Clock::now();
  OracleResult result = exact_top_t(g, o.k, o.t, limits);
  const auto counts = count_by_threshold(g, o.k, limits);
  const double mine_ms = ms_since(started);
  recheck(result.outcome.solution, o.k);

  Json j;
  j["command"] = "oracle";
  j["config"] = {{"k", o.k}, {"t", o.t}};
  j["input"] = input_summary(c.input, g, *result.outcome.link_graph);
  j["candidates"] = {{"min_degree_at_least_k", counts.at_least_k},
                     {"min_degree_at_least_k_plus_1", counts.at_least_k_plus_one},
                     {"selection", result.exhaustive ? "exhaustive" : "greedy"}};
  j["complete"] = result.outcome.complete;
  j["members"] = members_json(g, result.outcome.solution);
  j["density"] = density_json(evaluate(g, result.outcome.solution));
  j["timings_ms"] = {{"oracle", mine_ms}};
  emit(render(j), c.out, out);
  return 0;
}

// --- bench -----------------------------------------------------------------

struct BenchOptions {
  std::vector<std::string> algos{"pa", "apa", "sea"};
  std::string k = "1:3";
  std::string t = "1:5";
  std::string strategy = "lg";
};

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& text, const char* flag) {
  unsigned long lo = 0, hi = 0;
  try {
    const auto colon = text.find(':');
    std::size_t used = 0;
    lo = std::stoul(text.substr(0, colon), &used);
    if (used != text.substr(0, colon).size()) throw std::invalid_argument(text);
    hi = lo;
    if (colon != std::string::npos) {
      const std::string rest = text.substr(colon + 1);
      hi = std::stoul(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + " expects N or LO:HI, got '" + text + "'");
  }
  if (lo < 1 || hi < lo) throw UsageError(std::string(flag) + " range must satisfy 1 <= LO <= HI");
  return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
}

struct BenchRow {
  std::string algo;
  std::uint32_t k = 0, t = 0;
  double gamma = 0.0;
  std::string status;
  double mine_ms = 0.0, eval_ms = 0.0;
};

int cmd_bench(const Common& c, const BenchOptions& o, std::ostream& out) {
  const auto [k_lo, k_hi] = parse_range(o.k, "--k");
  const auto [t_lo, t_hi] = parse_range(o.t, "--t");
  const Graph g = load_edge_list_file(c.input);
  auto started = Clock::now();
  auto lg = std::make_shared<const LinkGraph>(build_link_graph(g, parse_link_mode(c.mode)));
  const double build_ms = ms_since(started);

  std::vector<BenchRow> rows;
  for (const auto& a : o.algos) {
    for (auto k = k_lo; k <= k_hi; ++k) {
      for (auto t = t_lo; t <= t_hi; ++t) rows.push_back({a, k, t, 0.0, "", 0.0, 0.0});
    }
  }

  // Cells share only the read-only link graph.
  const auto strategy = parse_strategy(o.strategy);
  const long n = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    auto& row = rows[i];
    try {
      MinerConfig cfg;
      cfg.k = row.k;
      cfg.t = row.t;
      cfg.strategy = strategy;
      auto result = mine(parse_algorithm(row.algo), lg, cfg);
      row.mine_ms = result.diagnostics.mine_ms;
      const auto eval_start = Clock::now();
      row.gamma = link_density(result.solution);
      row.eval_ms = ms_since(eval_start);
      row.status = result.complete ? "complete" : "partial";
    } catch (const FeasibilityError&) {
      row.status = "infeasible";
    } catch (const std::exception& e) {
      row.status = "error";
    }
  }

  std::ostringstream os;
  os << "algo\tk\tt\tgamma\tstatus\tbuild_ms\tmine_ms\teval_ms\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s\t%u\t%u\t%.6f\t%s\t%.3f\t%.3f\t%.3f\n", r.algo.c_str(), r.k, r.t, r.gamma,
                  r.status.c_str(), build_ms, r.mine_ms, r.eval_ms);
    os << buf;
  }
  emit(os.str(), c.out, out);
  return 0;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Overlapping cohesive subgraph mining with a minimum-degree constraint", "ocsm"};
  app.require_subcommand(1);

  Common lg_opts, mine_common, eval_common, oracle_common, bench_common;
  MineOptions mine_opts;
  OracleOptions oracle_opts;
  BenchOptions bench_opts;
  std::string members_path;

  auto* linkgraph = app.add_subcommand("linkgraph", "Write the link graph of an edge list");
  add_common(linkgraph, lg_opts, true);

  auto* mine_cmd = app.add_subcommand("mine", "Mine top-t cohesive subgraphs");
  add_common(mine_cmd, mine_common, true);
  mine_cmd->add_option("--algo", mine_opts.algo, "Miner")->required()->check(CLI::IsMember({"pa", "apa", "sea"}));
  mine_cmd->add_option("--k", mine_opts.k, "Minimum degree")->check(CLI::PositiveNumber)->capture_default_str();
  mine_cmd->add_option("--t", mine_opts.t, "Number of subgraphs")->check(CLI::PositiveNumber)->capture_default_str();
  mine_cmd->add_option("--strategy", mine_opts.strategy, "SEA expansion strategy")
      ->check(CLI::IsMember({"li", "lg"}))
      ->capture_default_str();
  mine_cmd->add_option("--seed", mine_opts.seed, "Reserved; every miner is deterministic");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a given set of members");
  add_common(eval_cmd, eval_common, true);
  eval_cmd->add_option("--members", members_path, "Member file: one member per line, or a report")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force top-t on a small graph");
  add_common(oracle_cmd, oracle_common, false);
  oracle_cmd->add_option("--k", oracle_opts.k, "Minimum degree")->check(CLI::PositiveNumber)->capture_default_str();
  oracle_cmd->add_option("--t", oracle_opts.t, "Number of subgraphs")->check(CLI::PositiveNumber)->capture_default_str();
  oracle_cmd->add_option("--max-nodes", oracle_opts.max_nodes, "Refuse larger graphs")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "Run a k x t matrix and print one TSV row per run");
  add_common(bench_cmd, bench_common, true);
  bench_cmd->add_option("--algo", bench_opts.algos, "Miners")
      ->check(CLI::IsMember({"pa", "apa", "sea"}))
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--k", bench_opts.k, "N or LO:HI")->capture_default_str();
  bench_cmd->add_option("--t", bench_opts.t, "N or LO:HI")->capture_default_str();
  bench_cmd->add_option("--strategy", bench_opts.strategy, "SEA expansion strategy")
      ->check(CLI::IsMember({"li", "lg"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (linkgraph->parsed()) return cmd_linkgraph(lg_opts, out);
    if (mine_cmd->parsed()) return cmd_mine(mine_common, mine_opts, out);
    if (eval_cmd->parsed()) return cmd_eval(eval_common, members_path, out);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_common, oracle_opts, out);
    return cmd_bench(bench_common, bench_opts, out);
  } catch (const FeasibilityError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ocsm::cli
