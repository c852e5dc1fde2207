#include "eulerdel/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "eulerdel/oracle.hpp"
#include "eulerdel/tjoin_dp.hpp"

namespace eulerdel {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string mode = "ueed";
  int k = 0;
  std::string input;
  std::uint64_t seed = 0;
  std::string truncate = "random";
  int field_bits = 16;
  bool json = false;
  bool oracle_check = false;
};

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in);
}

Problem problem_or_throw(const std::string& mode) {
  const auto p = parse_problem(mode);
  if (!p) throw std::invalid_argument("unknown mode " + mode);
  return *p;
}

DpOptions options_for(const RunConfig& cfg) {
  DpOptions o;
  o.prune = cfg.truncate == "off" ? PruneMode::exact : PruneMode::truncated;
  o.field_bits = cfg.field_bits;
  o.seed = cfg.seed;
  return o;
}

SolveResult solve(Problem p, const Instance& instance, int k, const DpOptions& o) {
  switch (p) {
    case Problem::ueed:
    case Problem::ucoed: {
      const auto* g = std::get_if<Graph>(&instance);
      if (!g) throw std::invalid_argument(std::string(to_string(p)) + " needs a `p edge` instance");
      return p == Problem::ueed ? solve_ueed(*g, k, o) : solve_ucoed(*g, k, o);
    }
    case Problem::deed: {
      const auto* d = std::get_if<Digraph>(&instance);
      if (!d) throw std::invalid_argument("deed needs a `p arc` instance");
      return solve_directed(*d, k, o);
    }
  }
  throw std::logic_error("unreachable");
}

int edge_count(const Instance& instance) {
  return std::visit(
      [](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Graph>) {
          return g.edge_count();
        } else {
          return g.arc_count();
        }
      },
      instance);
}

std::string listing(const Instance& instance, const EdgeSet& s) {
  return std::visit([&s](const auto& g) { return format_solution(g, s); }, instance);
}

Json edge_list(const Instance& instance, const EdgeSet& s) {
  Json list = Json::array();
  for (EdgeId e : s.ids()) {
    const Edge& x = std::visit(
        [e](const auto& g) -> const Edge& {
          if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Graph>) {
            return g.edge(e);
          } else {
            return g.arc(e);
          }
        },
        instance);
    list.push_back({x.u + 1, x.v + 1});
  }
  return list;
}

void print_verdict(std::ostream& out, const Instance& instance, const std::optional<EdgeSet>& s) {
  if (!s) {
    out << "NO\n";
    return;
  }
  out << "YES " << s->size() << "\n" << listing(instance, *s);
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Problem p = problem_or_throw(cfg.mode);
  const Instance instance = read_instance(cfg.input);
  const auto started = std::chrono::steady_clock::now();
  const SolveResult r = solve(p, instance, cfg.k, options_for(cfg));
  const auto wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();

  if (cfg.json) {
    Json j;
    j["verdict"] = r.solution ? "YES" : "NO";
    j["size"] = r.solution ? Json(r.solution->size()) : Json(nullptr);
    j["edges"] = r.solution ? edge_list(instance, *r.solution) : Json::array();
    j["rounds"] = r.stats.rounds;
    j["cells"] = r.stats.cells;
    j["repset_sizes"] = r.stats.repset_sizes;
    j["seed"] = cfg.seed;
    j["wall_ms"] = wall_ms;
    out << j.dump() << "\n";
  } else {
    print_verdict(out, instance, r.solution);
  }

  if (cfg.oracle_check) {
    const int m = edge_count(instance);
    if (m > 22) {
      err << "oracle check skipped: " << m << " edges exceed the brute-force ceiling of 22\n";
    } else {
      const auto truth = brute_force(p, instance, cfg.k);
      const std::optional<int> mine =
          r.solution ? std::optional<int>(static_cast<int>(r.solution->size())) : std::nullopt;
      if (mine != truth.min_size) {
        err << "oracle mismatch: solver "
            << (mine ? "YES " + std::to_string(*mine) : std::string("NO")) << ", brute force "
            << (truth.min_size ? "YES " + std::to_string(*truth.min_size) : std::string("NO")) << "\n";
        return kExitOracleMismatch;
      }
    }
  }
  return r.solution ? kExitYes : kExitNo;
}

int cmd_verify(const std::string& mode, const std::string& input, const std::string& solution, std::ostream& out) {
  const Problem p = problem_or_throw(mode);
  const Instance instance = read_instance(input);
  std::ifstream in(solution);
  if (!in) throw std::runtime_error("cannot open " + solution);
  EdgeSet s;
  try {
    s = parse_solution(in, instance);
  } catch (const ParseError& e) {
    out << "INVALID " << e.what() << "\n";
    return kExitNo;
  }
  const bool ok = is_solution(p, instance, s);
  out << (ok ? "VALID" : "INVALID") << "\n";
  return ok ? kExitYes : kExitNo;
}

GenMode gen_mode(const std::string& mode) {
  if (mode == "ueed" || mode == "ucoed") return GenMode::ueed;
  if (mode == "deed") return GenMode::deed;
  throw std::invalid_argument("unknown mode " + mode);
}

std::string serialize_instance(const Instance& instance) {
  return std::visit([](const auto& g) { return serialize(g); }, instance);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int cmd_gen(const std::string& mode, int n, int extra, std::uint64_t seed, int base_edges, const std::string& output,
            std::ostream& out) {
  const auto gen = gen_yes_instance(gen_mode(mode), n, extra, seed, base_edges);
  const std::string text = serialize_instance(gen.instance);
  const std::string planted = listing(gen.instance, gen.planted);
  if (output.empty() || output == "-") {
    out << text;
  } else {
    write_file(output, text);
    write_file(output + ".planted", planted);
  }
  return kExitYes;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const Problem p = problem_or_throw(cfg.mode);
  const Instance instance = read_instance(cfg.input);
  const auto v = brute_force(p, instance, cfg.k);
  print_verdict(out, instance, v.witness);
  return v.min_size ? kExitYes : kExitNo;
}

struct BenchConfig {
  std::vector<int> n{20};
  int k_min = 1;
  int k_max = 4;
  int seeds = 3;
  int base_edges = 0;
  std::string output;
};

int cmd_bench(const RunConfig& cfg, const BenchConfig& bc, std::ostream& out) {
  const Problem p = problem_or_throw(cfg.mode);
  std::ostringstream csv;
  csv << "n,m,k,mode,verdict,size,wall_ms,max_cell,repset_max\n";
  for (int n : bc.n) {
    for (int k = bc.k_min; k <= bc.k_max; ++k) {
      for (int s = 0; s < bc.seeds; ++s) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
        const auto gen = gen_yes_instance(gen_mode(cfg.mode), n, k, seed, bc.base_edges);
        RunConfig run = cfg;
        run.seed = seed;
        const auto started = std::chrono::steady_clock::now();
        const auto r = solve(p, gen.instance, k, options_for(run));
        const auto wall_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
        csv << n << ',' << edge_count(gen.instance) << ',' << k << ',' << cfg.mode << ','
            << (r.solution ? "YES" : "NO") << ',' << (r.solution ? std::to_string(r.solution->size()) : "") << ','
            << wall_ms << ',' << r.stats.max_cell << ',' << r.stats.repset_max << '\n';
      }
    }
  }
  if (bc.output.empty() || bc.output == "-") {
    out << csv.str();
  } else {
    write_file(bc.output, csv.str());
  }
  return kExitYes;
}

void add_mode(CLI::App* app, std::string& mode) {
  app->add_option("--mode", mode, "Problem: ueed, ucoed or deed")->check(CLI::IsMember({"ueed", "ucoed", "deed"}));
}

void add_solver_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--seed", cfg.seed, "Seed for the random truncation")->capture_default_str();
  app->add_option("--truncate", cfg.truncate, "random: rank-truncated pruning; off: exact pruning")
      ->check(CLI::IsMember({"random", "off"}))
      ->capture_default_str();
  app->add_option("--field-bits", cfg.field_bits, "Extension degree s of GF(2^s)")
      ->check(CLI::Range(8, 32))
      ->capture_default_str();
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solver for Eulerian and connected-odd edge deletion"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  add_mode(solve_cmd, cfg.mode);
  solve_cmd->add_option("--k", cfg.k, "Deletion budget")->required()->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--input", cfg.input, "Instance file")->required();
  add_solver_flags(solve_cmd, cfg);
  solve_cmd->add_flag("--json", cfg.json, "Print a JSON report");
  solve_cmd->add_flag("--oracle-check", cfg.oracle_check, "Compare with brute force (at most 22 edges)");

  std::string solution;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution listing");
  add_mode(verify_cmd, cfg.mode);
  verify_cmd->add_option("--input", cfg.input, "Instance file")->required();
  verify_cmd->add_option("--solution", solution, "Solution listing")->required();

  int gen_n = 0;
  int gen_extra = 0;
  int base_edges = 0;
  std::string output;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a YES instance with a planted deletion set");
  add_mode(gen_cmd, cfg.mode);
  gen_cmd->add_option("--n", gen_n, "Vertex count")->required();
  gen_cmd->add_option("--extra", gen_extra, "Edges added on top of the Eulerian base")->required();
  gen_cmd->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--base-edges", base_edges, "Target size of the Eulerian base (0: one cycle)");
  gen_cmd->add_option("--output", output, "Instance path; the planted set goes to <path>.planted");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force verdict");
  add_mode(oracle_cmd, cfg.mode);
  oracle_cmd->add_option("--k", cfg.k, "Deletion budget")->required()->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--input", cfg.input, "Instance file")->required();

  BenchConfig bc;
  auto* bench_cmd = app.add_subcommand("bench", "Solve a seeded grid of generated instances, CSV out");
  add_mode(bench_cmd, cfg.mode);
  add_solver_flags(bench_cmd, cfg);
  bench_cmd->add_option("--n", bc.n, "Vertex counts")->capture_default_str();
  bench_cmd->add_option("--k-min", bc.k_min, "Smallest planted k")->capture_default_str();
  bench_cmd->add_option("--k-max", bc.k_max, "Largest planted k")->capture_default_str();
  bench_cmd->add_option("--seeds", bc.seeds, "Seeds per grid point")->capture_default_str();
  bench_cmd->add_option("--base-edges", bc.base_edges, "Target size of the Eulerian base");
  bench_cmd->add_option("--output", bc.output, "CSV path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(cfg, out, err);
    if (verify_cmd->parsed()) return cmd_verify(cfg.mode, cfg.input, solution, out);
    if (gen_cmd->parsed()) return cmd_gen(cfg.mode, gen_n, gen_extra, cfg.seed, base_edges, output, out);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, out);
    if (bench_cmd->parsed()) return cmd_bench(cfg, bc, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace eulerdel
