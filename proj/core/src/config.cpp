#include "nashexec/config.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nashexec/errors.hpp"

namespace nashexec {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw ConfigError("config: " + message);
}

void require_keys(const json& object, const char* where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) fail(std::string("unknown key \"") + item.key() + "\" in " + where);
  }
}

double get_number(const json& object, const char* where, const char* key) {
  if (!object.contains(key))
    fail(std::string(where) + " is missing \"" + key + "\"");
  const json& value = object.at(key);
  if (!value.is_number())
    fail(std::string("\"") + key + "\" in " + where + " must be a number");
  return value.get<double>();
}

double get_number_or(const json& object, const char* where, const char* key,
                     double fallback) {
  if (!object.contains(key)) return fallback;
  const json& value = object.at(key);
  if (!value.is_number())
    fail(std::string("\"") + key + "\" in " + where + " must be a number");
  return value.get<double>();
}

int get_count(const json& object, const char* where, const char* key) {
  if (!object.contains(key))
    fail(std::string(where) + " is missing \"" + key + "\"");
  const json& value = object.at(key);
  if (!value.is_number_integer() || value.get<long long>() < 0)
    fail(std::string("\"") + key + "\" in " + where +
         " must be a nonnegative integer");
  return static_cast<int>(value.get<long long>());
}

DecayKernel parse_kernel(const json& object, const char* where) {
  if (!object.is_object())
    fail(std::string(where) + " must be an object with a \"kind\" field");
  if (!object.contains("kind") || !object.at("kind").is_string())
    fail(std::string(where) + " needs a string \"kind\" field");
  const std::string kind = object.at("kind").get<std::string>();
  if (kind == "exponential") {
    require_keys(object, where, {"kind", "rho"});
    return DecayKernel::exponential(get_number(object, where, "rho"));
  }
  if (kind == "constant") {
    require_keys(object, where, {"kind"});
    return DecayKernel::constant();
  }
  if (kind == "power_law") {
    require_keys(object, where, {"kind", "delta"});
    return DecayKernel::power_law(get_number(object, where, "delta"));
  }
  if (kind == "tabulated") {
    require_keys(object, where, {"kind", "samples"});
    if (!object.contains("samples") || !object.at("samples").is_array())
      fail(std::string(where) + " needs a \"samples\" array of [t, value] pairs");
    std::vector<std::pair<double, double>> samples;
    for (const json& entry : object.at("samples")) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        fail(std::string("every sample in ") + where +
             " must be a [t, value] number pair");
      samples.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    return DecayKernel::tabulated(std::move(samples));
  }
  fail(std::string(where) + " has unknown kernel kind \"" + kind + "\"");
}

FrontRunningScenario parse_scenario(const json& object) {
  if (!object.is_object()) fail("\"scenario\" must be an object");
  require_keys(object, "\"scenario\"",
               {"n_opportunists", "gamma_liq", "gamma_opp", "rho", "horizon",
                "x_liq"});
  FrontRunningScenario scenario;
  scenario.opportunist_count = get_count(object, "\"scenario\"", "n_opportunists");
  scenario.liquidator_cost_coeff = get_number(object, "\"scenario\"", "gamma_liq");
  scenario.opportunist_cost_coeff = get_number(object, "\"scenario\"", "gamma_opp");
  scenario.decay_rate = get_number(object, "\"scenario\"", "rho");
  scenario.horizon = get_number(object, "\"scenario\"", "horizon");
  scenario.liquidator_net_amount =
      get_number_or(object, "\"scenario\"", "x_liq", -1.0);
  return scenario;
}

GameSpec parse_game(const json& object) {
  if (!object.is_object()) fail("\"game\" must be an object");
  require_keys(object, "\"game\"", {"horizon", "investors", "kernel"});
  if (!object.contains("investors") || !object.at("investors").is_array() ||
      object.at("investors").empty())
    fail("\"game\" needs a nonempty \"investors\" array");
  if (!object.contains("kernel"))
    fail("\"game\" is missing \"kernel\"");

  std::vector<InvestorSpec> investors;
  for (const json& entry : object.at("investors")) {
    if (!entry.is_object()) fail("every investor must be an object");
    require_keys(entry, "an investor entry", {"x", "gamma"});
    investors.push_back({get_number(entry, "an investor entry", "x"),
                         get_number(entry, "an investor entry", "gamma")});
  }
  GameSpec game{get_number(object, "\"game\"", "horizon"),
                std::move(investors),
                parse_kernel(object.at("kernel"), "\"game\".\"kernel\"")};
  game.validate();
  return game;
}

}  // namespace

LoadedConfig parse_config(const std::string& json_text) {
  json document;
  try {
    document = json::parse(json_text);
  } catch (const json::exception& err) {
    fail(std::string("malformed JSON: ") + err.what());
  }
  if (!document.is_object()) fail("top level must be a JSON object");
  require_keys(document, "the top level",
               {"scenario", "game", "kernel", "horizon", "grid", "solver",
                "tolerance"});

  LoadedConfig config;
  if (document.contains("scenario"))
    config.scenario = parse_scenario(document.at("scenario"));
  if (document.contains("game")) config.game = parse_game(document.at("game"));
  if (document.contains("kernel"))
    config.kernel = parse_kernel(document.at("kernel"), "\"kernel\"");
  if (document.contains("horizon"))
    config.horizon = get_number(document, "the top level", "horizon");
  if (document.contains("grid")) {
    const int size = get_count(document, "the top level", "grid");
    if (size < 2) fail("\"grid\" must be at least 2");
    config.grid_size = size;
  }
  if (document.contains("solver")) {
    const json& value = document.at("solver");
    if (!value.is_string()) fail("\"solver\" must be a string");
    const std::string name = value.get<std::string>();
    if (name == "closed-form")
      config.solver = SolverKind::closed_form;
    else if (name == "fredholm")
      config.solver = SolverKind::fredholm;
    else
      fail("\"solver\" must be \"closed-form\" or \"fredholm\", got \"" + name +
           "\"");
  }
  if (document.contains("tolerance")) {
    const double tol = get_number(document, "the top level", "tolerance");
    if (!(tol > 0.0)) fail("\"tolerance\" must be positive");
    config.tolerance = tol;
  }
  return config;
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

DecayKernel config_kernel(const LoadedConfig& config) {
  if (config.kernel) return *config.kernel;
  if (config.game) return config.game->kernel;
  if (config.scenario) {
    if (!(config.scenario->decay_rate > 0.0))
      fail("scenario decay rate must be positive");
    return DecayKernel::exponential(config.scenario->decay_rate);
  }
  fail("no kernel: provide \"kernel\", \"game\", or \"scenario\"");
}

double config_horizon(const LoadedConfig& config) {
  if (config.horizon) return *config.horizon;
  if (config.game) return config.game->horizon;
  if (config.scenario) return config.scenario->horizon;
  return 1.0;
}

}  // namespace nashexec
