#include "coopdyn/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coopdyn/analysis.hpp"
#include "coopdyn/csv.hpp"
#include "coopdyn/record.hpp"
#include "coopdyn/simulation.hpp"

namespace coopdyn::cli {

namespace {

using nlohmann::json;
using csv::format_number;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter validation failures are the caller's fault, not the model's.
template <typename F>
auto validated(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct GameArgs {
  std::optional<double> r;
  std::optional<double> b;
  std::optional<double> c;
};

struct StrengthArgs {
  std::optional<double> k;
  std::optional<double> p;
};

struct OutputArgs {
  std::string out;
  bool json = false;
};

void add_game_flags(CLI::App& cmd, GameArgs& args, const std::string& r_help) {
  auto* r = cmd.add_option("--r", args.r, r_help);
  auto* b = cmd.add_option("--b", args.b, "Donation game benefit b (requires --c; r = c/b)");
  auto* c = cmd.add_option("--c", args.c, "Donation game cost c (requires --b)");
  r->excludes(b)->excludes(c);
  b->needs(c);
  c->needs(b);
}

void add_strength_flags(CLI::App& cmd, StrengthArgs& args) {
  auto* k = cmd.add_option("--k", args.k, "Linear interaction strength f(x) = k x, k > 0");
  auto* p = cmd.add_option("--p", args.p, "Constant interaction strength f(x) = p, p in [0, 1]");
  k->excludes(p);
}

void add_output_flags(CLI::App& cmd, OutputArgs& args, const std::string& out_help) {
  cmd.add_option("--out", args.out, out_help);
  cmd.add_flag("--json", args.json, "Print a JSON record instead of the text report");
}

double resolve_r(const GameArgs& args, std::optional<double> fallback) {
  return validated([&] {
    if (args.r) return ReducedGame(*args.r).r();
    if (args.b && args.c) return donation_to_reduced(DonationGame(*args.b, *args.c)).r();
    if (fallback) return *fallback;
    throw std::invalid_argument("one of --r or --b/--c is required");
  });
}

json game_parameters(const GameArgs& args, double r) {
  json j = {{"r", r}};
  if (args.b) {
    j["b"] = *args.b;
    j["c"] = *args.c;
  }
  return j;
}

InteractionStrength resolve_strength(const StrengthArgs& args) {
  return validated([&] {
    if (args.k) return InteractionStrength::linear(*args.k);
    if (args.p) return InteractionStrength::constant(*args.p);
    throw std::invalid_argument("one of --k or --p is required");
  });
}

std::string describe(const InteractionStrength& s) {
  return (s.kind() == StrengthKind::Constant ? "p=" : "k=") + format_number(s.parameter());
}

void print_json(std::ostream& out, const OutputRecord& record) {
  out << json(record).dump(2) << '\n';
}

void print_fixed_points(std::ostream& out, const std::vector<FixedPoint>& points) {
  out << "fixed points:\n";
  for (const auto& fp : points) {
    out << "  " << std::left << std::setw(22) << format_number(fp.location) << std::setw(12)
        << to_string(fp.stability) << to_string(fp.origin) << '\n';
  }
  out << std::right;
}

int cmd_thresholds(const GameArgs& game, const OutputArgs& output, std::ostream& out) {
  const double r = resolve_r(game, std::nullopt);
  const Thresholds t = critical_thresholds(r);
  json results = t;
  std::optional<CoexistenceWindow> window;
  if (game.b) {
    window = coexistence_window(DonationGame(*game.b, *game.c));
    results["window"] = {{"lower", window->lower}, {"upper", window->upper}};
  }

  if (output.json) {
    print_json(out, make_record("thresholds", game_parameters(game, r), results));
    return kSuccess;
  }
  if (game.b) {
    out << "b = " << format_number(*game.b) << ", c = " << format_number(*game.c) << '\n';
  }
  out << "r  = " << format_number(r) << '\n'
      << "k1 = " << format_number(t.k1) << "  (1/(1+r))\n"
      << "k2 = " << format_number(t.k2) << "  ((1+r)/(4r))\n";
  if (window) {
    out << "coexistence window: " << format_number(window->lower) << " < k < "
        << format_number(window->upper) << "  (b/(b+c) < k < (b+c)/(4c))\n";
  }
  return kSuccess;
}

int cmd_analyze(const GameArgs& game, const StrengthArgs& strength_args,
                const OutputArgs& output, std::ostream& out) {
  const double r = resolve_r(game, std::nullopt);
  const InteractionStrength strength = resolve_strength(strength_args);
  const RegimeReport report = classify_regime(strength, r);

  if (!output.out.empty()) {
    csv::write_file(output.out, [&](std::ostream& os) {
      csv::write_fixed_points(os, report.fixed_points,
                              {"analyze r=" + format_number(r) + " " + describe(strength)});
    });
  }
  if (output.json) {
    json parameters = game_parameters(game, r);
    parameters["strength"] = strength;
    print_json(out, make_record("analyze", parameters, report));
    return kSuccess;
  }
  out << "r = " << format_number(r) << ", " << describe(strength) << '\n'
      << "regime: " << to_string(report.regime) << '\n'
      << "k1 = " << format_number(report.thresholds.k1)
      << ", k2 = " << format_number(report.thresholds.k2) << '\n';
  print_fixed_points(out, report.fixed_points);
  return kSuccess;
}

struct SweepArgs {
  bool linear = false;
  bool constant = false;
  std::optional<double> from;
  std::optional<double> to;
  int points = 100;
};

int cmd_sweep(const GameArgs& game, const SweepArgs& sweep, const OutputArgs& output,
              std::ostream& out) {
  const double r = resolve_r(game, std::nullopt);
  const StrengthKind variant =
      sweep.constant ? StrengthKind::Constant : StrengthKind::LinearInFrequency;
  const bool is_linear = variant == StrengthKind::LinearInFrequency;
  const double from = sweep.from.value_or(is_linear ? 0.1 : 0.0);
  const double to = sweep.to.value_or(is_linear ? 2.0 : 1.0);
  if (sweep.points < 1) throw UsageError("--points must be at least 1");
  if (!(from <= to)) throw UsageError("--from must not exceed --to");

  const auto grid = linear_grid(from, to, static_cast<std::size_t>(sweep.points));
  const auto rows = bifurcation_sweep(r, grid, variant);
  const std::string name = is_linear ? "linear" : "constant";

  if (!output.out.empty()) {
    csv::write_file(output.out, [&](std::ostream& os) {
      csv::write_sweep(os, rows,
                       {"sweep variant=" + name + " r=" + format_number(r),
                        "columns: param (k or p), regime, then location/stability of each "
                        "fixed point in ascending order"});
    });
  }

  if (output.json) {
    json parameters = game_parameters(game, r);
    parameters.update({{"variant", name},
                       {"from", from},
                       {"to", to},
                       {"points", sweep.points}});
    json results = {{"thresholds", critical_thresholds(r)}, {"rows", rows}};
    print_json(out, make_record("sweep", parameters, results));
    return kSuccess;
  }

  const char* symbol = is_linear ? "k" : "p";
  out << "sweep " << name << " r = " << format_number(r) << ", " << symbol << " in ["
      << format_number(from) << ", " << format_number(to) << "], " << rows.size()
      << " points\n";
  std::size_t errors = 0;
  const BifurcationRow* previous = nullptr;
  for (const auto& row : rows) {
    if (!row.regime) {
      ++errors;
      continue;
    }
    if (previous == nullptr) {
      out << "  " << symbol << " = " << format_number(row.parameter) << ": "
          << to_string(*row.regime) << '\n';
    } else if (*previous->regime != *row.regime) {
      out << "  " << symbol << " in (" << format_number(previous->parameter) << ", "
          << format_number(row.parameter) << "]: " << to_string(*previous->regime) << " -> "
          << to_string(*row.regime) << '\n';
    }
    previous = &row;
  }
  if (errors > 0) out << "  " << errors << " grid values rejected\n";
  return kSuccess;
}

struct SimulateArgs {
  std::size_t members = 50;
  std::uint64_t seed = 42;
  std::string method = "euler";
  std::optional<double> step;
  std::size_t max_steps = 100000;
  double tolerance = 1e-8;
  std::size_t stride = 1;
  double bin_radius = 1e-3;
  std::string summary_out;
};

std::string default_summary_path(const std::string& out) {
  std::filesystem::path path(out);
  const std::string stem = path.stem().string();
  path.replace_filename(stem + "_summary.csv");
  return path.string();
}

int cmd_simulate(const GameArgs& game, const StrengthArgs& strength_args,
                 const SimulateArgs& sim, const OutputArgs& output, std::ostream& out) {
  const double r = resolve_r(game, 0.2);
  const InteractionStrength strength = resolve_strength(strength_args);

  IntegratorConfig integrator;
  integrator.method =
      sim.method == "rk4" ? IntegrationMethod::RungeKutta4 : IntegrationMethod::ForwardEuler;
  integrator.step = sim.step.value_or(sim.method == "rk4" ? 0.01 : 1.0);
  integrator.max_steps = sim.max_steps;
  integrator.tolerance = sim.tolerance;
  integrator.sample_stride = sim.stride;

  EnsembleConfig ensemble;
  ensemble.members = sim.members;
  ensemble.seed = sim.seed;
  ensemble.r = r;
  ensemble.strength = strength;
  ensemble.bin_radius = sim.bin_radius;
  validated([&] {
    integrator.validate();
    ensemble.validate();
    return 0;
  });

  const EnsembleResult result = run_ensemble(ensemble, integrator);

  const std::string settings =
      "seed=" + std::to_string(sim.seed) + " members=" + std::to_string(sim.members) +
      " r=" + format_number(r) + " " + describe(strength) +
      " method=" + std::string(to_string(integrator.method)) +
      " step=" + format_number(integrator.step) +
      " max_steps=" + std::to_string(integrator.max_steps) +
      " tolerance=" + format_number(integrator.tolerance);
  std::string summary_path = sim.summary_out;
  if (summary_path.empty() && !output.out.empty()) summary_path = default_summary_path(output.out);
  if (!output.out.empty()) {
    csv::write_file(output.out, [&](std::ostream& os) {
      csv::write_trajectories(os, result.trajectories, {"simulate " + settings});
    });
  }
  if (!summary_path.empty()) {
    csv::write_file(summary_path, [&](std::ostream& os) {
      csv::write_summary(os, result.members, {"simulate " + settings});
    });
  }

  if (output.json) {
    json parameters = game_parameters(game, r);
    parameters.update({{"strength", strength},
                       {"members", sim.members},
                       {"seed", sim.seed},
                       {"method", to_string(integrator.method)},
                       {"step", integrator.step},
                       {"max_steps", integrator.max_steps},
                       {"tolerance", integrator.tolerance},
                       {"bin_radius", sim.bin_radius}});
    json results = {{"regime", to_string(result.report.regime)},
                    {"basins", result.basins},
                    {"unbinned", result.unbinned},
                    {"members", result.members}};
    print_json(out, make_record("simulate", parameters, results));
    return kSuccess;
  }

  out << "simulate " << settings << '\n'
      << "regime: " << to_string(result.report.regime) << '\n'
      << std::left << std::setw(8) << "member" << std::setw(25) << "x0" << std::setw(25)
      << "x_final" << std::setw(25) << "attractor" << "slow_decay\n";
  for (std::size_t m = 0; m < result.members.size(); ++m) {
    const auto& s = result.members[m];
    out << std::setw(8) << m << std::setw(25) << format_number(s.x0) << std::setw(25)
        << format_number(s.x_final) << std::setw(25)
        << (s.attractor ? format_number(*s.attractor) : "-") << (s.slow_decay ? "yes" : "no")
        << '\n';
  }
  out << std::right << "basins:\n";
  for (const auto& basin : result.basins) {
    out << "  x = " << format_number(basin.location) << " (" << to_string(basin.stability)
        << "): " << basin.count << '\n';
  }
  if (result.unbinned > 0) out << "  unbinned: " << result.unbinned << '\n';
  return kSuccess;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Replicator dynamics of the Prisoner's Dilemma with frequency-dependent "
               "interaction strength",
               "coopdyn"};
  app.require_subcommand(1);

  GameArgs game;
  StrengthArgs strength;
  OutputArgs output;
  SweepArgs sweep;
  SimulateArgs sim;

  auto* thresholds = app.add_subcommand("thresholds", "Critical strengths k1 and k2");
  add_game_flags(*thresholds, game, "Unilateral defection profit r in (0, 1)");
  thresholds->add_flag("--json", output.json, "Print a JSON record instead of the text report");

  auto* analyze = app.add_subcommand("analyze", "Fixed points, stability and regime");
  add_game_flags(*analyze, game, "Unilateral defection profit r in (0, 1)");
  add_strength_flags(*analyze, strength);
  add_output_flags(*analyze, output, "Write the fixed points as CSV (x,origin,stability)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Regime and fixed points over a parameter grid");
  add_game_flags(*sweep_cmd, game, "Unilateral defection profit r in (0, 1)");
  auto* linear_flag = sweep_cmd->add_flag("--linear", sweep.linear, "Sweep k of f(x) = k x");
  auto* constant_flag = sweep_cmd->add_flag("--constant", sweep.constant, "Sweep p of f(x) = p");
  linear_flag->excludes(constant_flag);
  sweep_cmd->add_option("--from", sweep.from, "First grid value (0.1 linear, 0 constant)");
  sweep_cmd->add_option("--to", sweep.to, "Last grid value (2.0 linear, 1 constant)");
  sweep_cmd->add_option("--points", sweep.points, "Number of grid values")->capture_default_str();
  add_output_flags(*sweep_cmd, output, "Write the sweep as CSV");

  auto* simulate = app.add_subcommand("simulate", "Integrate a seeded ensemble of trajectories");
  add_game_flags(*simulate, game, "Unilateral defection profit r in (0, 1), default 0.2");
  add_strength_flags(*simulate, strength);
  simulate->add_option("--members", sim.members, "Ensemble size")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Seed of the initial-state generator")
      ->capture_default_str();
  simulate->add_option("--method", sim.method, "Integrator")
      ->check(CLI::IsMember({"euler", "rk4"}))
      ->capture_default_str();
  simulate->add_option("--step", sim.step, "Step size (default 1 for euler, 0.01 for rk4)");
  simulate->add_option("--max-steps", sim.max_steps, "Step cap per member")
      ->capture_default_str();
  simulate->add_option("--tolerance", sim.tolerance, "Convergence threshold on |dx| per step")
      ->capture_default_str();
  simulate->add_option("--stride", sim.stride, "Record every n-th step")->capture_default_str();
  simulate->add_option("--bin-radius", sim.bin_radius, "Attractor binning radius")
      ->capture_default_str();
  simulate->add_option("--summary-out", sim.summary_out,
                       "Summary CSV path (default: <out stem>_summary.csv next to --out)");
  add_output_flags(*simulate, output, "Write trajectories as CSV (member,t,x)");

  std::vector<const char*> argv{"coopdyn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*thresholds) return cmd_thresholds(game, output, out);
    if (*analyze) return cmd_analyze(game, strength, output, out);
    if (*sweep_cmd) return cmd_sweep(game, sweep, output, out);
    if (*simulate) return cmd_simulate(game, strength, sim, output, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const csv::IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputationError;
  }
  return kUsageError;
}

}  // namespace coopdyn::cli
