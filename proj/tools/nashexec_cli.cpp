// Command-line front end: solve equilibria, run scenario sweeps, cross-check
// the two solvers, and test kernels for positive type. Bulk data goes to CSV
// files, a one-line JSON summary goes to stdout, diagnostics go to stderr.
//
// Exit codes: 0 ok, 1 config error, 2 solver failure, 3 verify tolerance
// exceeded, 4 kernel not of positive type.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nashexec/closed_form.hpp"
#include "nashexec/config.hpp"
#include "nashexec/csv.hpp"
#include "nashexec/errors.hpp"
#include "nashexec/fredholm.hpp"
#include "nashexec/game.hpp"
#include "nashexec/kernels.hpp"
#include "nashexec/scenarios.hpp"

namespace {

using namespace nashexec;

std::string quoted(const std::string& text) {
  return nlohmann::json(text).dump();
}

std::string number_array(const Eigen::VectorXd& values) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_sig17(values(i));
  }
  return out + "]";
}

std::string number_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_sig17(values[i]);
  }
  return out + "]";
}

const char* solver_name(SolverKind solver) {
  return solver == SolverKind::closed_form ? "closed-form" : "fredholm";
}

const char* kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::exponential: return "exponential";
    case KernelKind::constant: return "constant";
    case KernelKind::power_law: return "power_law";
    case KernelKind::tabulated: return "tabulated";
  }
  return "unknown";
}

// The game a solve/verify command operates on: a config must provide a
// scenario or a full game, not both.
GameSpec config_game(const LoadedConfig& config) {
  if (config.scenario && config.game)
    throw ConfigError(
        "config: provide either \"scenario\" or \"game\", not both");
  if (config.game) return *config.game;
  if (config.scenario) return build_scenario(*config.scenario);
  throw ConfigError("config: needs a \"scenario\" or a \"game\"");
}

int pick_grid_size(const std::optional<int>& flag, const LoadedConfig& config,
                   int fallback) {
  if (flag) return *flag;
  if (config.grid_size) return *config.grid_size;
  return fallback;
}

SolverKind pick_solver(const std::optional<std::string>& flag,
                       const LoadedConfig& config, const GameSpec& game) {
  SolverKind solver;
  if (flag)
    solver = *flag == "closed-form" ? SolverKind::closed_form
                                    : SolverKind::fredholm;
  else if (config.solver)
    solver = *config.solver;
  else
    solver = game.kernel.kind() == KernelKind::exponential
                 ? SolverKind::closed_form
                 : SolverKind::fredholm;
  if (solver == SolverKind::closed_form &&
      game.kernel.kind() != KernelKind::exponential)
    throw ConfigError(
        "config: the closed-form solver requires an exponential kernel; "
        "use --solver fredholm");
  return solver;
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw ConfigError("config: cannot create output directory \"" + out_dir +
                      "\": " + ec.message());
  return dir;
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ConfigError("config: cannot open \"" + path.string() +
                      "\" for writing");
  writer(out);
  out.flush();
  if (!out)
    throw ConfigError("config: failed writing \"" + path.string() + "\"");
}

int run_solve(const std::string& config_path, const std::optional<int>& grid_flag,
              const std::optional<std::string>& solver_flag,
              const std::string& out_dir) {
  const LoadedConfig config = load_config_file(config_path);
  const GameSpec game = config_game(config);
  game.validate();
  const int m = pick_grid_size(grid_flag, config, 1001);
  const SolverKind solver = pick_solver(solver_flag, config, game);
  const Grid grid = Grid::uniform(game.horizon, m);

  std::cerr << "solving " << game.investor_count() << "-investor game on "
            << m << " nodes with the " << solver_name(solver) << " solver\n";
  const EquilibriumSolution solution =
      solver == SolverKind::closed_form
          ? solve_equilibrium_exponential(game, grid)
          : solve_equilibrium_numeric(game, grid);

  std::vector<double> costs;
  costs.reserve(game.investor_count());
  for (int i = 0; i < game.investor_count(); ++i)
    costs.push_back(execution_cost(i, solution.profile, game.kernel,
                                   game.investors[i].cost_coeff));

  const std::filesystem::path csv_path =
      prepare_out_dir(out_dir) / "solution.csv";
  write_file(csv_path,
             [&](std::ostream& out) { write_solution_csv(out, solution); });

  std::cout << "{\"solver\":" << quoted(solver_name(solution.solver))
            << ",\"eta\":" << number_array(solution.multipliers)
            << ",\"costs\":" << number_array(costs)
            << ",\"sigma\":" << format_sig17(max_deviation(solution.price))
            << ",\"residual\":" << format_sig17(solution.residual)
            << ",\"rows\":" << m << ",\"out\":" << quoted(csv_path.string())
            << "}\n";
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& vary,
              const std::vector<double>& values,
              const std::optional<int>& grid_flag,
              const std::optional<std::string>& solver_flag,
              const std::string& out_dir) {
  const LoadedConfig config = load_config_file(config_path);
  if (!config.scenario)
    throw ConfigError("config: sweep needs a \"scenario\"");
  if (values.empty()) throw ConfigError("config: --values must be nonempty");

  SweepParameter parameter;
  if (vary == "n")
    parameter = SweepParameter::opportunist_count;
  else if (vary == "gamma_opp")
    parameter = SweepParameter::opportunist_cost_coeff;
  else
    parameter = SweepParameter::decay_rate;

  const int m = pick_grid_size(grid_flag, config, 1001);
  SolverKind solver = SolverKind::closed_form;
  if (solver_flag)
    solver = *solver_flag == "closed-form" ? SolverKind::closed_form
                                           : SolverKind::fredholm;
  else if (config.solver)
    solver = *config.solver;

  const Grid grid = Grid::uniform(config.scenario->horizon, m);
  std::cerr << "sweeping " << vary << " over " << values.size()
            << " values on " << m << " nodes with the " << solver_name(solver)
            << " solver\n";
  const std::vector<ScenarioReport> reports =
      sweep(*config.scenario, parameter, values, grid, solver);

  const std::filesystem::path csv_path = prepare_out_dir(out_dir) / "sweep.csv";
  write_file(csv_path,
             [&](std::ostream& out) { write_sweep_csv(out, reports); });

  std::cout << "{\"vary\":" << quoted(vary)
            << ",\"values\":" << number_array(values)
            << ",\"solver\":" << quoted(solver_name(solver))
            << ",\"rows\":" << reports.size()
            << ",\"out\":" << quoted(csv_path.string()) << "}\n";
  return 0;
}

int run_verify(const std::string& config_path,
               const std::optional<int>& grid_flag,
               const std::optional<double>& tol_flag) {
  const LoadedConfig config = load_config_file(config_path);
  const GameSpec game = config_game(config);
  game.validate();
  if (game.kernel.kind() != KernelKind::exponential)
    throw ConfigError("config: verify requires an exponential kernel");
  const int m = pick_grid_size(grid_flag, config, 1001);
  double tol = 1e-3;
  if (config.tolerance) tol = *config.tolerance;
  if (tol_flag) tol = *tol_flag;
  if (!(tol > 0.0)) throw ConfigError("config: tolerance must be positive");

  const Grid grid = Grid::uniform(game.horizon, m);
  std::cerr << "cross-checking both solvers on " << m << " nodes\n";
  const EquilibriumSolution closed = solve_equilibrium_exponential(game, grid);
  const EquilibriumSolution numeric = solve_equilibrium_numeric(game, grid);

  const double strategy_diff =
      (closed.profile.rates - numeric.profile.rates).array().abs().maxCoeff();
  const double eta_diff =
      (closed.multipliers - numeric.multipliers).array().abs().maxCoeff();
  const bool pass = strategy_diff <= tol && eta_diff <= tol &&
                    closed.residual <= tol && numeric.residual <= tol;

  std::cout << "{\"grid\":" << m << ",\"tolerance\":" << format_sig17(tol)
            << ",\"strategy_sup_diff\":" << format_sig17(strategy_diff)
            << ",\"eta_sup_diff\":" << format_sig17(eta_diff)
            << ",\"residual_closed_form\":" << format_sig17(closed.residual)
            << ",\"residual_fredholm\":" << format_sig17(numeric.residual)
            << ",\"pass\":" << (pass ? "true" : "false") << "}\n";
  if (!pass) {
    std::cerr << "solver disagreement exceeds tolerance " << tol << "\n";
    return 3;
  }
  return 0;
}

int run_check_kernel(const std::string& config_path) {
  const LoadedConfig config = load_config_file(config_path);
  const DecayKernel kernel = config_kernel(config);
  const double horizon = config_horizon(config);
  const int m = config.grid_size.value_or(200);

  const PositiveTypeReport report = check_positive_type(kernel, horizon, m);
  std::cout << "{\"kind\":" << quoted(kind_name(kernel.kind()))
            << ",\"horizon\":" << format_sig17(horizon)
            << ",\"grid_size\":" << report.grid_size
            << ",\"min_eigenvalue\":" << format_sig17(report.min_eigenvalue)
            << ",\"tolerance\":" << format_sig17(report.tolerance)
            << ",\"positive_type\":"
            << (report.is_positive_type ? "true" : "false") << "}\n";
  if (!report.is_positive_type) {
    std::cerr << "kernel is not of positive type (min eigenvalue "
              << report.min_eigenvalue << ")\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Nash-equilibrium solver for multi-investor optimal execution under "
      "transient price impact"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> grid_flag;
  std::optional<std::string> solver_flag;
  std::optional<double> tol_flag;
  std::string out_dir = "out";
  std::string vary;
  std::vector<double> values;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--grid", grid_flag, "number of grid nodes")
        ->check(CLI::Range(2, 1000000));
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--solver", solver_flag, "equilibrium solver")
        ->check(CLI::IsMember({"closed-form", "fredholm"}));
  };

  CLI::App* solve = app.add_subcommand(
      "solve", "compute an equilibrium and write solution.csv");
  add_config(solve);
  add_grid(solve);
  add_solver(solve);
  solve->add_option("--out", out_dir, "output directory");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "sweep a scenario parameter and write sweep.csv");
  add_config(sweep_cmd);
  add_grid(sweep_cmd);
  add_solver(sweep_cmd);
  sweep_cmd->add_option("--vary", vary, "parameter to sweep")
      ->required()
      ->check(CLI::IsMember({"n", "gamma_opp", "rho"}));
  sweep_cmd
      ->add_option("--values", values, "comma-separated list of swept values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* verify = app.add_subcommand(
      "verify", "run both solvers and compare them against a tolerance");
  add_config(verify);
  add_grid(verify);
  verify->add_option("--tol", tol_flag, "comparison tolerance");

  CLI::App* check = app.add_subcommand(
      "check-kernel", "test whether the configured kernel is of positive type");
  add_config(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);  // prints the message to stderr
    return 1;
  }

  try {
    if (solve->parsed())
      return run_solve(config_path, grid_flag, solver_flag, out_dir);
    if (sweep_cmd->parsed())
      return run_sweep(config_path, vary, values, grid_flag, solver_flag,
                       out_dir);
    if (verify->parsed()) return run_verify(config_path, grid_flag, tol_flag);
    return run_check_kernel(config_path);
  } catch (const ConfigError& err) {
    std::cerr << err.what() << "\n";
    return 1;
  } catch (const SolverError& err) {
    std::cerr << "solver failure: " << err.what();
    if (err.condition_estimate > 0.0)
      std::cerr << " (condition estimate " << err.condition_estimate << ")";
    std::cerr << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::domain_error& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::out_of_range& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
