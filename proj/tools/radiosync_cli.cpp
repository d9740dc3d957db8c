#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "radiosync/analysis.hpp"
#include "radiosync/io.hpp"
#include "radiosync/oracle.hpp"
#include "radiosync/protocols.hpp"
#include "radiosync/radionet.hpp"

// Exit codes: 0 success/verified, 1 falsified or generation exhausted,
// 2 exhaustive-budget refusal, 3 parse failure or incompatible inputs.

namespace {

using namespace radiosync;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::domain_error("cannot open output file '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::domain_error("cannot open input file '" + path + "'");
  return in;
}

struct GenArgs {
  std::string kind;
  int n = 0;
  int k = 0;
  int ecc = 0;
  int delta = 0;
  double c = 3.0;
  std::uint64_t seed = 0;
  int max_attempts = 100;
  bool sampled = false;
  std::uint64_t trials = 100000;
  std::string out_path;
};

int run_gen(const GenArgs& args) {
  const VerifyMode mode =
      args.sampled ? VerifyMode::sampled(args.trials, args.seed) : VerifyMode::exhaustive();
  // The output file is only created once generation succeeds.
  try {
    if (args.kind == "selective") {
      const SelectiveFamily family =
          generate_verified_selective(args.n, args.k, args.c, args.max_attempts, args.seed, mode);
      std::ofstream out = open_out(args.out_path);
      write_family(out, family);
      std::cout << "selective family n=" << args.n << " k=" << args.k << " m="
                << family.length() << " attempts=" << family.attempts << " -> "
                << args.out_path << '\n';
    } else if (args.kind == "urs") {
      const SynchronizerFamily family =
          generate_verified_urs(args.n, args.c, args.max_attempts, args.seed, mode);
      std::ofstream out = open_out(args.out_path);
      write_family(out, family);
      std::cout << "urs family n=" << args.n << " m=" << family.length() << " attempts="
                << family.attempts << " -> " << args.out_path << '\n';
    } else {
      const SynchronizerFamily family = generate_verified_block(
          args.n, args.ecc, args.delta, args.c, args.max_attempts, args.seed, mode);
      std::ofstream out = open_out(args.out_path);
      write_family(out, family);
      std::cout << "block synchronizer n=" << args.n << " D=" << args.ecc << " delta="
                << args.delta << " BB=" << family.composite_block << " attempts="
                << family.attempts << " -> " << args.out_path << '\n';
    }
  } catch (const GenerationFailed& fail) {
    std::cerr << "generation failed after " << fail.attempts << " attempts: " << fail.what()
              << '\n'
              << verdict_text(fail.last_verdict);
    return 1;
  }
  return 0;
}

struct VerifyArgs {
  std::string family_path;
  bool sampled = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& args) {
  std::ifstream in = open_in(args.family_path);
  const AnyFamily family = read_family(in);
  const VerifyMode mode =
      args.sampled ? VerifyMode::sampled(args.trials, args.seed) : VerifyMode::exhaustive();
  Verdict verdict;
  if (const auto* sel = std::get_if<SelectiveFamily>(&family)) {
    verdict = verify_selective_family(*sel, mode);
  } else {
    const auto& sync = std::get<SynchronizerFamily>(family);
    switch (sync.kind) {
      case SyncKind::urs:
        verdict = verify_urs(sync, mode);
        break;
      case SyncKind::block:
        verdict = verify_block_synchronizer(sync, sync.params.delta, mode);
        break;
      case SyncKind::upper_block:
        throw std::domain_error("upper-block families have no standalone contract; compose first");
    }
  }
  std::cout << verdict_text(verdict);
  return verdict.status == VerdictStatus::falsified ? 1 : 0;
}

struct SimArgs {
  std::string mode;
  std::string graph_path;
  std::string family_path;
  std::string wake_path;
  std::string out_path;
  std::uint64_t max_steps = 0;  // 0: 10x the mode's bound
  double c = 3.0;
  std::uint64_t seed = 0;
  bool k_fixed = false;
  int max_attempts = 200;
  std::uint64_t trials = 20000;
};

std::uint64_t baseline_cycle_length(int n, int delta, double c) {
  std::uint64_t total = 0;
  bool any = false;
  for (int k = 2; k / 2 < delta; k *= 2) {
    total += selective_family_length(n, std::min(k, n), c);
    any = true;
  }
  if (!any) total = selective_family_length(n, 1, c);
  return total;
}

int run_sim(const SimArgs& args) {
  std::ifstream gin = open_in(args.graph_path);
  const RadioNetwork net = read_graph(gin);
  if (!net.source()) throw std::domain_error("simulation requires a graph with a source");
  const int n = net.size();
  const int ecc = net.eccentricity();
  const int delta = net.max_indegree();

  SimulationTrace trace;
  std::uint64_t header_seed = 0;

  if (args.mode == "broadcast" || args.mode == "wakeup") {
    if (args.family_path.empty())
      throw std::domain_error("sim " + args.mode + " requires --family");
    std::ifstream fin = open_in(args.family_path);
    const AnyFamily loaded = read_family(fin);
    const auto* sync = std::get_if<SynchronizerFamily>(&loaded);
    if (!sync) throw std::domain_error("sim " + args.mode + " needs a synchronizer family");
    header_seed = sync->params.seed;
    if (args.mode == "broadcast") {
      const std::uint64_t steps =
          args.max_steps ? args.max_steps : default_max_steps(broadcast_bound(*sync));
      trace = run_broadcast(net, *sync, steps);
    } else {
      if (args.wake_path.empty()) throw std::domain_error("sim wakeup requires --wake");
      std::ifstream win = open_in(args.wake_path);
      const WakeSchedule wake = read_wake(win, n);
      const std::uint64_t steps =
          args.max_steps
              ? args.max_steps
              : default_max_steps(wakeup_bound(n, ecc, delta, sync->params.c));
      trace = run_wakeup(net, *sync, wake, steps);
    }
  } else {
    BaselineOptions options;
    options.k_doubling = !args.k_fixed;
    options.c = args.c;
    options.seed = args.seed;
    options.max_attempts = args.max_attempts;
    options.sampled_trials = args.trials;
    header_seed = args.seed;
    const std::uint64_t steps =
        args.max_steps
            ? args.max_steps
            : default_max_steps(static_cast<std::uint64_t>(ecc + 1) *
                                baseline_cycle_length(n, delta, args.c));
    trace = run_baseline_selective(net, options, steps);
  }

  std::ofstream out = open_out(args.out_path);
  write_trace_csv(out, trace, header_seed, n, ecc, delta);
  if (trace.completion)
    std::cout << "completed at step " << *trace.completion << " -> " << args.out_path << '\n';
  else
    std::cout << "did not complete within " << trace.steps_run << " steps -> " << args.out_path
              << '\n';
  return 0;
}

struct GraphArgs {
  std::string model;
  int n = 0;
  int leaves = 0;
  int layers = 0;
  int width = 0;
  double p = 0.3;
  int delta_cap = 0;
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_gen_graph(const GraphArgs& args) {
  RadioNetwork net = [&] {
    if (args.model == "path") return gen_path(args.n);
    if (args.model == "star") return gen_star(args.leaves);
    if (args.model == "layered") return gen_layered(args.layers, args.width, args.seed);
    if (args.model == "dag") return gen_random_dag(args.n, args.p, args.seed);
    return gen_bounded_indeg(args.n, args.delta_cap, args.seed);
  }();
  std::ofstream out = open_out(args.out_path);
  write_graph(out, net);
  std::cout << "graph n=" << net.size() << " D=" << net.eccentricity() << " delta="
            << net.max_indegree() << " -> " << args.out_path << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// bench: sweep cells x modes, generate-or-reuse families, emit summary.csv
// ---------------------------------------------------------------------------

struct BenchContext {
  double c = 2.0;
  int max_attempts = 500;
  std::uint64_t trials = 20000;
  std::uint64_t family_seed = 1000;
  std::string wake_scheme = "source";
  std::map<std::string, SynchronizerFamily> sync_cache;
  OracleBudget budget;
};

const SynchronizerFamily& bench_family(BenchContext& ctx, const std::string& kind, int n,
                                       int ecc, int delta) {
  std::ostringstream key;
  key << kind << " n=" << n;
  if (kind == "block") key << " D=" << ecc << " delta=" << delta;
  key << " c=" << format_double(ctx.c) << " seed=" << ctx.family_seed;
  auto it = ctx.sync_cache.find(key.str());
  if (it != ctx.sync_cache.end()) {
    std::cout << "family cache hit: " << key.str() << '\n';
    return it->second;
  }
  SynchronizerFamily family = [&] {
    if (kind == "urs") {
      const VerifyMode mode = n <= ctx.budget.urs_max_n
                                  ? VerifyMode::exhaustive()
                                  : VerifyMode::sampled(ctx.trials, ctx.family_seed);
      return generate_verified_urs(n, ctx.c, ctx.max_attempts, ctx.family_seed, mode);
    }
    const VerifyMode mode = n <= ctx.budget.block_max_n
                                ? VerifyMode::exhaustive()
                                : VerifyMode::sampled(ctx.trials, ctx.family_seed);
    return generate_verified_block(n, ecc, delta, ctx.c, ctx.max_attempts, ctx.family_seed,
                                   mode);
  }();
  return ctx.sync_cache.emplace(key.str(), std::move(family)).first->second;
}

std::string bench_row(BenchContext& ctx, const RadioNetwork& net, const std::string& model,
                      const std::string& mode) {
  const int n = net.size();
  const int ecc = net.eccentricity();
  const int delta = net.max_indegree();
  std::ostringstream row;
  row << model << ',' << n << ',' << ecc << ',' << delta << ',' << mode << ',';
  try {
    SimulationTrace trace;
    std::uint64_t bound = 0;
    if (mode == "broadcast") {
      // Conservative delta puts the family in the n < D*delta regime even on
      // sparse nets where the true delta is below n/D.
      const int family_delta =
          std::max(delta, static_cast<int>(block_increment(n, ecc)) + 1);
      const SynchronizerFamily& family = bench_family(ctx, "block", n, ecc, family_delta);
      bound = broadcast_bound(family);
      trace = run_broadcast(net, family, default_max_steps(bound));
    } else if (mode == "wakeup") {
      const SynchronizerFamily& family = bench_family(ctx, "urs", n, 0, 0);
      bound = wakeup_bound(n, ecc, delta, ctx.c);
      WakeSchedule wake = WakeSchedule::none(n);
      if (ctx.wake_scheme == "all-zero")
        wake = WakeSchedule::all_at(n, 0);
      else
        wake.spontaneous[static_cast<std::size_t>(*net.source() - 1)] = 0;
      trace = run_wakeup(net, family, wake, default_max_steps(bound));
    } else if (mode == "baseline") {
      BaselineOptions options;
      options.c = ctx.c;
      options.seed = ctx.family_seed;
      options.max_attempts = ctx.max_attempts;
      options.sampled_trials = ctx.trials;
      bound = static_cast<std::uint64_t>(ecc + 1) * baseline_cycle_length(n, delta, ctx.c);
      trace = run_baseline_selective(net, options, default_max_steps(bound));
    } else {
      throw std::domain_error("unknown bench mode '" + mode + "'");
    }
    if (trace.completion) {
      const double ratio = static_cast<double>(*trace.completion) / static_cast<double>(bound);
      row << *trace.completion << ',' << bound << ',' << format_double(ratio) << ",ok";
    } else {
      row << "," << bound << ",,timeout";
    }
  } catch (const std::exception& err) {
    std::string what = err.what();
    for (char& ch : what)
      if (ch == ',' || ch == '\n') ch = ' ';
    row << ",,,error: " << what;
  }
  return row.str();
}

int run_bench(const std::string& config_path, const std::string& out_dir) {
  std::ifstream cin_file = open_in(config_path);
  nlohmann::json config;
  try {
    cin_file >> config;
  } catch (const nlohmann::json::exception& err) {
    throw FileParseError(0, std::string("bench config: ") + err.what());
  }

  BenchContext ctx;
  std::vector<std::string> modes{"broadcast", "wakeup", "baseline"};
  try {
    if (config.contains("c")) ctx.c = config["c"].get<double>();
    if (config.contains("max_attempts")) ctx.max_attempts = config["max_attempts"].get<int>();
    if (config.contains("sampled_trials"))
      ctx.trials = config["sampled_trials"].get<std::uint64_t>();
    if (config.contains("family_seed"))
      ctx.family_seed = config["family_seed"].get<std::uint64_t>();
    if (config.contains("wake")) ctx.wake_scheme = config["wake"].get<std::string>();
    if (config.contains("modes")) modes = config["modes"].get<std::vector<std::string>>();
    if (!config.contains("cells") || !config["cells"].is_array())
      throw FileParseError(0, "bench config: missing 'cells' array");

    std::filesystem::create_directories(out_dir);
    std::ofstream summary = open_out(out_dir + "/summary.csv");
    summary << "model,n,D,delta,mode,completion,bound,ratio,status\n";
    for (const auto& cell : config["cells"]) {
      const std::string model = cell.at("model").get<std::string>();
      const std::uint64_t seed = cell.value("seed", std::uint64_t{0});
      RadioNetwork net = [&] {
        if (model == "path") return gen_path(cell.at("n").get<int>());
        if (model == "star") return gen_star(cell.at("leaves").get<int>());
        if (model == "layered")
          return gen_layered(cell.at("layers").get<int>(), cell.at("width").get<int>(), seed);
        if (model == "dag")
          return gen_random_dag(cell.at("n").get<int>(), cell.value("p", 0.3), seed);
        if (model == "bounded")
          return gen_bounded_indeg(cell.at("n").get<int>(), cell.at("delta_cap").get<int>(),
                                   seed);
        throw std::domain_error("unknown cell model '" + model + "'");
      }();
      for (const std::string& mode : modes)
        summary << bench_row(ctx, net, model, mode) << '\n';
    }
  } catch (const nlohmann::json::exception& err) {
    throw FileParseError(0, std::string("bench config: ") + err.what());
  }
  std::cout << "summary -> " << out_dir << "/summary.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"selective families, radio synchronizers, and collision-model simulation"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a verified family (Las Vegas)");
  gen->add_option("kind", gen_args.kind, "selective | urs | block")
      ->required()
      ->check(CLI::IsMember({"selective", "urs", "block"}));
  gen->add_option("--n", gen_args.n, "universe size")->required();
  gen->add_option("--k", gen_args.k, "selectivity threshold (selective)");
  gen->add_option("--D", gen_args.ecc, "source eccentricity (block)");
  gen->add_option("--delta", gen_args.delta, "max in-degree (block)");
  gen->add_option("--c", gen_args.c, "generator constant");
  gen->add_option("--seed", gen_args.seed, "base seed");
  gen->add_option("--max-attempts", gen_args.max_attempts, "Las Vegas attempt cap");
  gen->add_flag("--sampled", gen_args.sampled, "verify candidates by sampling");
  gen->add_option("--trials", gen_args.trials, "sampling trials");
  gen->add_option("-o,--out", gen_args.out_path, "output family file")->required();

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "verify a family file");
  verify->add_option("family", verify_args.family_path, "family file")->required();
  verify->add_flag("--sampled", verify_args.sampled, "Monte-Carlo falsification only");
  verify->add_option("--trials", verify_args.trials, "sampling trials");
  verify->add_option("--seed", verify_args.seed, "sampling seed");

  SimArgs sim_args;
  CLI::App* sim = app.add_subcommand("sim", "simulate a protocol on a graph");
  sim->add_option("mode", sim_args.mode, "broadcast | wakeup | baseline")
      ->required()
      ->check(CLI::IsMember({"broadcast", "wakeup", "baseline"}));
  sim->add_option("--graph", sim_args.graph_path, "graph file")->required();
  sim->add_option("--family", sim_args.family_path, "family file (broadcast/wakeup)");
  sim->add_option("--wake", sim_args.wake_path, "wake schedule file (wakeup)");
  sim->add_option("--max-steps", sim_args.max_steps, "step cap (default 10x the bound)");
  sim->add_option("--c", sim_args.c, "baseline generator constant");
  sim->add_option("--seed", sim_args.seed, "baseline family seed");
  sim->add_flag("--k-fixed", sim_args.k_fixed, "baseline: fixed k=delta instead of doubling");
  sim->add_option("--max-attempts", sim_args.max_attempts, "baseline Las Vegas attempt cap");
  sim->add_option("--trials", sim_args.trials, "baseline sampled-verification trials");
  sim->add_option("-o,--out", sim_args.out_path, "output trace CSV")->required();

  GraphArgs graph_args;
  CLI::App* gg = app.add_subcommand("gen-graph", "generate a network file");
  gg->add_option("model", graph_args.model, "path | star | layered | dag | bounded")
      ->required()
      ->check(CLI::IsMember({"path", "star", "layered", "dag", "bounded"}));
  gg->add_option("--n", graph_args.n, "node count (path/dag/bounded)");
  gg->add_option("--leaves", graph_args.leaves, "leaf count (star)");
  gg->add_option("--layers", graph_args.layers, "layer count (layered)");
  gg->add_option("--width", graph_args.width, "layer width (layered)");
  gg->add_option("--p", graph_args.p, "edge probability (dag)");
  gg->add_option("--delta-cap", graph_args.delta_cap, "max in-degree (bounded)");
  gg->add_option("--seed", graph_args.seed, "generator seed");
  gg->add_option("-o,--out", graph_args.out_path, "output graph file")->required();

  std::string bench_config;
  std::string bench_out = "bench_out";
  CLI::App* bench = app.add_subcommand("bench", "run a sweep from a JSON config");
  bench->add_option("--config", bench_config, "JSON sweep config")->required();
  bench->add_option("--out-dir", bench_out, "output directory");

  try {
    app.parse(argc, argv);
    if (*gen) return run_gen(gen_args);
    if (*verify) return run_verify(verify_args);
    if (*sim) return run_sim(sim_args);
    if (*gg) return run_gen_graph(graph_args);
    if (*bench) return run_bench(bench_config, bench_out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const FileParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 2;
  } catch (const GenerationFailed& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
