// Command-line front end: reproducible equilibrium-approximation runs,
// parameter sweeps, basin sampling, trajectory projection, and a
// support-enumeration oracle over the builtin and file-based games.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nashtrace/nashtrace.hpp"

namespace {

using namespace nashtrace;

// exit codes: 0 success, 2 usage, 3 input file, 4 runtime numeric
constexpr int kExitUsage = 2;
constexpr int kExitInputFile = 3;
constexpr int kExitRuntime = 4;

constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(',', start);
    const std::string item =
        text.substr(start, pos == std::string::npos ? pos : pos - start);
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad " + what + " value \"" + item + "\"");
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// --game accepts builtin:NAME, random:SHAPE[:SEED] (e.g. random:3x3:7), or a
// JSON game file path.
Game load_game(const std::string& ref) {
  if (ref.rfind("builtin:", 0) == 0) {
    try {
      return builtin_game(ref.substr(8));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (ref.rfind("random:", 0) == 0) {
    const std::string spec = ref.substr(7);
    const std::size_t colon = spec.find(':');
    const std::string shape_text = spec.substr(0, colon);
    std::uint64_t seed = 1;
    if (colon != std::string::npos) {
      try {
        seed = std::stoull(spec.substr(colon + 1));
      } catch (const std::exception&) {
        throw UsageError("bad random game seed in \"" + ref + "\"");
      }
    }
    std::vector<std::size_t> shape;
    std::size_t start = 0;
    while (start <= shape_text.size()) {
      const std::size_t pos = shape_text.find('x', start);
      const std::string item = shape_text.substr(
          start, pos == std::string::npos ? pos : pos - start);
      try {
        shape.push_back(std::stoul(item));
      } catch (const std::exception&) {
        throw UsageError("bad random game shape \"" + shape_text + "\"");
      }
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (shape.size() < 1) {
      throw UsageError("random game needs a shape like 3x3");
    }
    return random_game(shape, seed);
  }
  return parse_game_file(ref);
}

struct CommonRunFlags {
  std::string game_ref;
  std::string rates_text;
  std::vector<std::string> rule_specs;
  std::size_t iterations = 10000;
  std::optional<double> epsilon;
  std::string init = "uniform";
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
  std::size_t record_every = 1;
  std::string out_path;
  std::string format = "csv";
};

void add_game_flag(CLI::App* cmd, CommonRunFlags& flags) {
  cmd->add_option("--game", flags.game_ref,
                  "game: builtin:NAME, random:SHAPE[:SEED], or JSON file")
      ->required();
}

void add_run_flags(CLI::App* cmd, CommonRunFlags& flags, bool with_rules,
                   bool with_init = true) {
  if (with_rules) {
    cmd->add_option("--rate", flags.rates_text,
                    "adjustment rate, single value or comma list per player");
    cmd->add_option("--rule", flags.rule_specs,
                    "update rule spec, e.g. standard:r=0.05 or "
                    "general:r=0.05,alpha=power:2 (repeat per player)");
  }
  cmd->add_option("--iters", flags.iterations, "iteration count")
      ->check(CLI::PositiveNumber);
  if (with_init) {
    cmd->add_option("--epsilon", flags.epsilon,
                    "early stop when overall regret sum falls to this");
    cmd->add_option("--init", flags.init,
                    "initial profile: uniform, random, or JSON file");
  }
  cmd->add_option("--seed", flags.seed, "random seed (fixed default)")
      ->each([&flags](const std::string&) { flags.seed_given = true; });
  cmd->add_option("--record-every", flags.record_every,
                  "record every k-th step (best is tracked every step)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", flags.out_path, "output file");
  cmd->add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

std::vector<UpdateRule> build_rules(const Game& game,
                                    const CommonRunFlags& flags) {
  const std::size_t n = game.num_players();
  if (!flags.rule_specs.empty() && !flags.rates_text.empty()) {
    throw UsageError("--rate and --rule are mutually exclusive");
  }
  if (!flags.rule_specs.empty()) {
    std::vector<UpdateRule> rules;
    try {
      for (const std::string& spec : flags.rule_specs) {
        rules.push_back(parse_rule_spec(spec));
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (rules.size() == 1) rules.assign(n, rules[0]);
    if (rules.size() != n) {
      throw UsageError("need 1 or " + std::to_string(n) + " --rule specs");
    }
    return rules;
  }
  std::vector<double> rates{0.1};
  if (!flags.rates_text.empty()) {
    rates = parse_double_list(flags.rates_text, "--rate");
  }
  if (rates.size() == 1) rates.assign(n, rates[0]);
  if (rates.size() != n) {
    throw UsageError("need 1 or " + std::to_string(n) + " --rate values");
  }
  std::vector<UpdateRule> rules;
  for (double r : rates) {
    if (!(r > 0.0)) throw UsageError("--rate values must be > 0");
    rules.push_back(UpdateRule::standard(r));
  }
  return rules;
}

StrategyProfile build_initial(const Game& game, const CommonRunFlags& flags) {
  if (flags.init == "uniform") return game.uniform_profile();
  if (flags.init == "random") {
    if (!flags.seed_given) {
      std::cerr << "note: no --seed given, using fixed default seed "
                << kDefaultSeed << "\n";
    }
    Rng rng = Rng::substream(flags.seed, 0);
    return random_profile(game, rng);
  }
  StrategyProfile profile = parse_profile_file(flags.init);
  game.check_profile(profile);
  return profile;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    atomic_write(path, content);
  }
}

int cmd_run(const CommonRunFlags& flags, const std::string& metrics_path,
            const std::string& metric_kind) {
  const Game game = load_game(flags.game_ref);
  RunConfig config;
  config.rules = build_rules(game, flags);
  config.iterations = flags.iterations;
  config.epsilon = flags.epsilon;
  config.record_every = flags.record_every;

  const StrategyProfile initial = build_initial(game, flags);
  const IterationTrace trace = run(game, initial, config);

  if (!flags.out_path.empty()) {
    if (flags.format == "json") {
      write_output(flags.out_path, trace_to_json(trace).dump(2) + "\n");
    } else {
      write_output(flags.out_path, trace_to_csv(game, trace));
    }
  }
  if (!metrics_path.empty()) {
    if (trace.profiles.size() < 3) {
      throw UsageError("--metrics needs at least 3 recorded steps");
    }
    const MetricTrace mt = metric_trace(
        trace.profiles,
        metric_kind == "max" ? MetricKind::max : MetricKind::sum);
    write_output(metrics_path, metric_trace_to_csv(mt, trace.steps));
  }

  std::printf("best overall regret sum %.6g at step %zu; ran %zu steps%s\n",
              trace.best_total, trace.best_step, trace.last_step,
              trace.stopped_early ? "; stopped early" : "");
  return 0;
}

int cmd_sweep_rate(const CommonRunFlags& flags, const std::string& rates_text) {
  const Game game = load_game(flags.game_ref);
  const std::vector<double> rates = parse_double_list(rates_text, "--rates");
  for (double r : rates) {
    if (!(r > 0.0)) throw UsageError("--rates values must be > 0");
  }
  const StrategyProfile initial = build_initial(game, flags);
  const SweepResult sweep = sweep_rates(game, initial, rates, flags.iterations);
  write_output(flags.out_path, flags.format == "json"
                                   ? sweep_to_json(sweep).dump(2) + "\n"
                                   : sweep_to_csv(sweep));
  std::printf("swept %zu rates on %zu iterations\n", sweep.rows.size(),
              flags.iterations);
  return 0;
}

int cmd_sweep_scale(const CommonRunFlags& flags, const std::string& scales_text,
                    double rate) {
  const Game game = load_game(flags.game_ref);
  const std::vector<double> scales = parse_double_list(scales_text, "--scales");
  for (double a : scales) {
    if (!(a > 0.0)) throw UsageError("--scales values must be > 0");
  }
  if (!(rate > 0.0)) throw UsageError("--rate must be > 0");
  const StrategyProfile initial = build_initial(game, flags);
  const SweepResult sweep =
      sweep_scales(game, initial, scales, flags.iterations, rate);
  write_output(flags.out_path, flags.format == "json"
                                   ? sweep_to_json(sweep).dump(2) + "\n"
                                   : sweep_to_csv(sweep));
  std::printf("swept %zu scales on %zu iterations\n", sweep.rows.size(),
              flags.iterations);
  return 0;
}

int cmd_basin(const CommonRunFlags& flags, std::size_t starts,
              double eps_conv) {
  const Game game = load_game(flags.game_ref);
  RunConfig config;
  config.rules = build_rules(game, flags);
  config.iterations = flags.iterations;
  config.record_every = flags.iterations;  // endpoints are enough here
  if (!flags.seed_given) {
    std::cerr << "note: no --seed given, using fixed default seed "
              << kDefaultSeed << "\n";
  }
  const BasinReport report =
      basin_sample(game, starts, flags.seed, config, eps_conv);
  write_output(flags.out_path, flags.format == "json"
                                   ? basin_to_json(report).dump(2) + "\n"
                                   : basin_to_csv(report));
  std::size_t converged = 0;
  for (const BasinStart& s : report.starts) converged += s.converged ? 1 : 0;
  std::printf("%zu/%zu starts converged below %.3g\n", converged,
              report.starts.size(), eps_conv);
  return 0;
}

int cmd_project(const std::string& in_path, std::size_t player,
                const std::string& mode, int dims,
                const std::string& out_path) {
  const TraceTable table = read_trace_csv(in_path);
  if (player < 1 || player > table.player_paths.size()) {
    throw UsageError("--player must be in 1.." +
                     std::to_string(table.player_paths.size()));
  }
  const auto& path = table.player_paths[player - 1];
  const std::size_t g = path[0].size();

  std::string chosen = mode;
  if (chosen == "auto") chosen = g == 3 ? "barycentric" : "pca";

  if (chosen == "barycentric") {
    if (g != 3) {
      throw UsageError(
          "barycentric projection requires exactly 3 strategies; player " +
          std::to_string(player) + " has " + std::to_string(g) +
          " (use --mode pca)");
    }
    std::vector<MixedStrategy> strategies;
    strategies.reserve(path.size());
    for (const auto& w : path) strategies.emplace_back(w);
    const PlanarPath planar = project_barycentric(strategies);
    write_output(out_path, path_to_csv(planar, table.steps));
    std::printf("projected %zu points (barycentric)\n", planar.points.size());
    return 0;
  }
  if (chosen != "pca") {
    throw UsageError("--mode must be barycentric, pca, or auto");
  }
  const PcaResult pca = pca_project(path, dims);
  write_output(out_path, path_to_csv(pca.path, table.steps,
                                     pca.captured_variance_ratio));
  std::printf("projected %zu points (pca, captured variance %.4f%s)\n",
              pca.path.points.size(), pca.captured_variance_ratio,
              pca.degenerate ? ", degenerate" : "");
  return 0;
}

int cmd_enumerate(const std::string& game_ref, double tolerance,
                  const std::string& format) {
  const Game game = load_game(game_ref);
  EquilibriumSet eqs;
  try {
    eqs = support_enumeration(game, tolerance);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (format == "json") {
    nlohmann::json j;
    j["method"] = eqs.method;
    j["tolerance"] = eqs.tolerance;
    j["degenerate"] = eqs.degenerate;
    j["equilibria"] = nlohmann::json::array();
    for (const StrategyProfile& eq : eqs.equilibria) {
      const RegretReport report = regret_report(game, eq);
      nlohmann::json strategies = nlohmann::json::array();
      for (const MixedStrategy& s : eq) strategies.push_back(s.weights());
      j["equilibria"].push_back({{"strategies", std::move(strategies)},
                                 {"regret_sums", report.regret_sums()}});
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::printf("%zu equilibria (support enumeration, tolerance %.3g)%s\n",
              eqs.equilibria.size(), eqs.tolerance,
              eqs.degenerate ? "; degenerate game, points are representatives"
                             : "");
  for (std::size_t k = 0; k < eqs.equilibria.size(); ++k) {
    const StrategyProfile& eq = eqs.equilibria[k];
    const RegretReport report = regret_report(game, eq);
    std::printf("eq %zu:", k);
    for (std::size_t i = 0; i < eq.num_players(); ++i) {
      std::printf(" p%zu=(", i + 1);
      for (std::size_t j = 0; j < eq[i].size(); ++j) {
        std::printf("%s%.6g", j ? "," : "", eq[i][j]);
      }
      std::printf(")");
    }
    std::printf(" regret_sums=(");
    for (std::size_t i = 0; i < report.players.size(); ++i) {
      std::printf("%s%.3g", i ? "," : "", report.players[i].regret_sum);
    }
    std::printf(")\n");
  }
  return 0;
}

int cmd_games(const std::string& dump_name, const std::string& out_path) {
  if (!dump_name.empty()) {
    Game game = [&] {
      try {
        return builtin_game(dump_name);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    if (out_path.empty()) {
      std::cout << game_to_json(game).dump(2) << "\n";
    } else {
      write_game_file(game, out_path);
      std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
  }
  for (const BuiltinGameInfo& info : builtin_game_list()) {
    std::printf("%-12s %s\n", info.name.c_str(), info.summary.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibrium approximation by smooth regret matching"};
  app.require_subcommand(1);

  CommonRunFlags run_flags;
  std::string metrics_path, metric_kind = "sum";
  CLI::App* run_cmd = app.add_subcommand("run", "iterate one game, export trace");
  add_game_flag(run_cmd, run_flags);
  add_run_flags(run_cmd, run_flags, true);
  run_cmd->add_option("--metrics", metrics_path,
                      "also export step-distance metrics CSV");
  run_cmd->add_option("--metric", metric_kind, "metric kind for --metrics")
      ->check(CLI::IsMember({"sum", "max"}));

  CommonRunFlags rate_flags;
  std::string rates_text;
  CLI::App* rate_cmd =
      app.add_subcommand("sweep-rate", "one run per adjustment rate");
  add_game_flag(rate_cmd, rate_flags);
  add_run_flags(rate_cmd, rate_flags, false);
  rate_cmd->add_option("--rates", rates_text, "comma list of rates")
      ->required();

  CommonRunFlags scale_flags;
  std::string scales_text;
  double scale_rate = 0.1;
  CLI::App* scale_cmd = app.add_subcommand(
      "sweep-scale", "one run per payoff scale factor, regret scaled back");
  add_game_flag(scale_cmd, scale_flags);
  add_run_flags(scale_cmd, scale_flags, false);
  scale_cmd->add_option("--scales", scales_text, "comma list of scale factors")
      ->required();
  scale_cmd->add_option("--rate", scale_rate, "adjustment rate for all rows");

  CommonRunFlags basin_flags;
  std::size_t basin_starts = 10;
  double eps_conv = 1e-3;
  CLI::App* basin_cmd = app.add_subcommand(
      "basin", "classify runs from seeded random initial profiles");
  add_game_flag(basin_cmd, basin_flags);
  add_run_flags(basin_cmd, basin_flags, true, /*with_init=*/false);
  basin_cmd->add_option("--starts", basin_starts, "number of random starts")
      ->check(CLI::PositiveNumber);
  basin_cmd->add_option("--eps-conv", eps_conv,
                        "regret threshold for the converged flag");

  std::string project_in, project_mode = "auto", project_out;
  std::size_t project_player = 1;
  int project_dims = 3;
  CLI::App* project_cmd = app.add_subcommand(
      "project", "project a trace to 2-D/3-D coordinates for plotting");
  project_cmd->add_option("--in", project_in, "trace CSV file")->required();
  project_cmd->add_option("--player", project_player, "player number (1-based)");
  project_cmd->add_option("--mode", project_mode, "barycentric, pca, or auto");
  project_cmd->add_option("--dims", project_dims, "pca output dimensions")
      ->check(CLI::IsMember({2, 3}));
  project_cmd->add_option("--out", project_out, "output CSV file");

  std::string enum_game, enum_format = "text";
  double enum_tolerance = 1e-7;
  CLI::App* enum_cmd = app.add_subcommand(
      "enumerate", "support-enumeration equilibria of a two-player game");
  enum_cmd->add_option("--game", enum_game, "game reference")->required();
  enum_cmd->add_option("--tolerance", enum_tolerance, "regret tolerance");
  enum_cmd->add_option("--format", enum_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string games_dump, games_out;
  CLI::App* games_cmd =
      app.add_subcommand("games", "list builtin games or dump one to JSON");
  games_cmd->add_option("--dump", games_dump, "builtin game to export");
  games_cmd->add_option("--out", games_out, "output file for --dump");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags, metrics_path, metric_kind);
    if (rate_cmd->parsed()) return cmd_sweep_rate(rate_flags, rates_text);
    if (scale_cmd->parsed())
      return cmd_sweep_scale(scale_flags, scales_text, scale_rate);
    if (basin_cmd->parsed())
      return cmd_basin(basin_flags, basin_starts, eps_conv);
    if (project_cmd->parsed())
      return cmd_project(project_in, project_player, project_mode,
                         project_dims, project_out);
    if (enum_cmd->parsed())
      return cmd_enumerate(enum_game, enum_tolerance, enum_format);
    if (games_cmd->parsed()) return cmd_games(games_dump, games_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GameFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputFile;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
