#include "qplace/errors.hpp"
#include "qplace/instance_gen.hpp"
#include "qplace/io.hpp"
#include "qplace/oracle.hpp"
#include "qplace/placer.hpp"
#include "qplace/swap_router.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qplace;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write '" + path + "'");
  }
  out << text;
}

std::optional<Rational> threshold_arg(const std::string& text) {
  if (text == "auto") {
    return std::nullopt;
  }
  return parse_rational(text);
}

/// "M=C1,C1=C2,C2=M": value on the left vertex goes to the right one.
std::vector<VertexId> parse_perm(const std::string& text,
                                 const PhysicalEnvironment& env) {
  std::vector<VertexId> target(env.size());
  for (VertexId v = 0; v < env.size(); ++v) {
    target[v] = v;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("expected src=dst in --perm, got '" + item + "'");
    }
    const auto src = env.find(item.substr(0, eq));
    const auto dst = env.find(item.substr(eq + 1));
    if (!src || !dst) {
      throw ValidationError("unknown vertex in --perm item '" + item + "'");
    }
    target[*src] = *dst;
  }
  return target;
}

struct PlaceArgs {
  std::string env;
  std::string circuit;
  std::string threshold = "auto";
  std::size_t k = 100;
  std::string mode = "pipelined";
  bool no_lookahead = false;
  std::uint64_t seed = 0;
  std::string report;
};

void run_place(const PlaceArgs& args) {
  const auto env = parse_environment(read_file(args.env));
  const auto circuit = parse_circuit(read_file(args.circuit));
  PlacementConfig config;
  config.threshold = threshold_arg(args.threshold);
  config.k = args.k;
  config.mode = parse_mode(args.mode);
  config.lookahead = !args.no_lookahead;
  config.seed = args.seed;
  const auto program = place(circuit, env, config);
  const auto report = emit_report(program);
  if (args.report.empty()) {
    std::cout << report;
  } else {
    write_file(args.report, report);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runtime-aware qubit placement with SWAP stitching"};
  app.require_subcommand(1);

  PlaceArgs place_args;
  auto* place_cmd = app.add_subcommand("place", "place a circuit on an environment");
  place_cmd->add_option("--env", place_args.env, "environment file")->required();
  place_cmd->add_option("--circuit", place_args.circuit, "circuit file")->required();
  place_cmd->add_option("--threshold", place_args.threshold, "fast-interaction cutoff or 'auto'");
  place_cmd->add_option("--k", place_args.k, "monomorphisms per stage");
  place_cmd->add_option("--mode", place_args.mode, "pipelined or sequential");
  place_cmd->add_flag("--no-lookahead", place_args.no_lookahead, "score stages one at a time");
  place_cmd->add_option("--seed", place_args.seed, "recorded in the report");
  place_cmd->add_option("--report", place_args.report, "write the report here instead of stdout");

  std::string route_env;
  std::string route_threshold = "auto";
  std::string route_perm;
  auto* route_cmd = app.add_subcommand("route", "SWAP layers for a permutation");
  route_cmd->add_option("--env", route_env, "environment file")->required();
  route_cmd->add_option("--threshold", route_threshold, "fast-interaction cutoff or 'auto'");
  route_cmd->add_option("--perm", route_perm, "src=dst pairs, comma separated")->required();

  std::string oracle_env;
  std::string oracle_circuit;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
  std::string oracle_mode = "pipelined";
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive placement without SWAPs");
  oracle_cmd->add_option("--env", oracle_env, "environment file")->required();
  oracle_cmd->add_option("--circuit", oracle_circuit, "circuit file")->required();
  oracle_cmd->add_option("--budget", oracle_budget, "maximum placements to evaluate");
  oracle_cmd->add_option("--mode", oracle_mode, "pipelined or sequential");

  std::size_t chain_n = 8;
  std::uint64_t chain_seed = 0;
  std::string chain_out;
  auto* chain_cmd = app.add_subcommand("gen-chain", "hidden-stage chain benchmark");
  chain_cmd->add_option("--n", chain_n, "chain length, power of two >= 4");
  chain_cmd->add_option("--seed", chain_seed, "generator seed");
  chain_cmd->add_option("--out", chain_out, "prefix for .env, .circ and .meta files");

  std::string graph_file;
  std::string reduction_out;
  auto* reduction_cmd = app.add_subcommand("gen-reduction", "Hamiltonian-cycle reduction instance");
  reduction_cmd->add_option("--graph", graph_file, "graph file")->required();
  reduction_cmd->add_option("--out", reduction_out, "prefix for .env and .circ files");

  std::string sweep_env;
  std::string sweep_circuit;
  std::vector<std::string> sweep_thresholds;
  std::size_t sweep_k = 100;
  auto* sweep_cmd = app.add_subcommand("sweep", "place under several thresholds");
  sweep_cmd->add_option("--env", sweep_env, "environment file")->required();
  sweep_cmd->add_option("--circuit", sweep_circuit, "circuit file")->required();
  sweep_cmd->add_option("--thresholds", sweep_thresholds, "threshold values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--k", sweep_k, "monomorphisms per stage");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*place_cmd) {
      run_place(place_args);
    } else if (*route_cmd) {
      const auto env = parse_environment(read_file(route_env));
      const auto t = threshold_arg(route_threshold);
      const auto g = fast_graph(env, t ? *t : min_connecting_threshold(env));
      const auto schedule = route_permutation(g, parse_perm(route_perm, env));
      std::cout << "depth: " << schedule.depth() << "\n";
      std::cout << "swaps: " << schedule.swap_count() << "\n";
      std::cout << emit_schedule(schedule, env);
    } else if (*oracle_cmd) {
      const auto env = parse_environment(read_file(oracle_env));
      const auto circuit = parse_circuit(read_file(oracle_circuit));
      const auto best =
          exhaustive_place(circuit, env, parse_mode(oracle_mode), oracle_budget);
      std::cout << "search_space: " << best.search_space.str() << "\n";
      std::cout << "runtime_units: " << format_rational(best.runtime) << "\n";
      std::cout << "runtime_seconds: "
                << format_decimal(best.runtime * env.time_unit_seconds()) << "\n";
      std::cout << "placement:\n";
      for (QubitId q = 0; q < circuit.qubit_count(); ++q) {
        std::cout << "  " << circuit.qubits()[q] << ": "
                  << env.name(best.best.at(q)) << "\n";
      }
    } else if (*chain_cmd) {
      const auto bench = gen_chain_benchmark(chain_n, chain_seed);
      if (chain_out.empty()) {
        std::cout << emit_chain_header(bench) << emit_environment(bench.env)
                  << emit_circuit(bench.circuit);
      } else {
        write_file(chain_out + ".env", emit_environment(bench.env));
        write_file(chain_out + ".circ", emit_circuit(bench.circuit));
        write_file(chain_out + ".meta", emit_chain_header(bench));
      }
    } else if (*reduction_cmd) {
      const auto inst = gen_hamiltonian_reduction(parse_graph(read_file(graph_file)));
      if (reduction_out.empty()) {
        std::cout << emit_environment(inst.env) << emit_circuit(inst.circuit);
      } else {
        write_file(reduction_out + ".env", emit_environment(inst.env));
        write_file(reduction_out + ".circ", emit_circuit(inst.circuit));
      }
    } else if (*sweep_cmd) {
      const auto env = parse_environment(read_file(sweep_env));
      const auto circuit = parse_circuit(read_file(sweep_circuit));
      std::cout << "threshold\tsubcircuits\tswaps\truntime_seconds\n";
      for (const auto& text : sweep_thresholds) {
        PlacementConfig config;
        config.threshold = threshold_arg(text);
        config.k = sweep_k;
        std::cout << text << '\t';
        try {
          const auto program = place(circuit, env, config);
          std::size_t swaps = 0;
          for (const auto& t : program.transitions) {
            swaps += t.schedule.swap_count();
          }
          std::cout << program.stages.size() << '\t' << swaps << '\t'
                    << format_decimal(program.total_seconds()) << "\n";
        } catch (const InfeasibleError& e) {
          std::cout << "-\t-\tinfeasible\n";
        }
      }
      try {
        const auto best = exhaustive_place(circuit, env, EvalMode::kPipelined);
        std::cout << "exhaustive\t1\t0\t"
                  << format_decimal(best.runtime * env.time_unit_seconds()) << "\n";
      } catch (const BudgetExceededError& e) {
        std::cout << "exhaustive\t-\t-\tover budget (" << e.count() << ")\n";
      } catch (const InfeasibleError&) {
        std::cout << "exhaustive\t-\t-\tinfeasible\n";
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
