#include "ddfl/presets.hpp"

#include <algorithm>
#include <set>

#include "ddfl/errors.hpp"

namespace ddfl {
namespace {

const std::vector<double> kSweepGrid{0.04, 0.02, 0.01, 0.005, 0.0025};

Eigen::VectorXd to_vector(const Json& a, const char* key) {
  if (!a.is_array()) throw ConfigError(std::string(key) + " must be an array of numbers");
  Eigen::VectorXd v(a.size());
  Eigen::Index i = 0;
  for (const auto& e : a) {
    if (!e.is_number()) throw ConfigError(std::string(key) + " must be an array of numbers");
    v(i++) = e.get<double>();
  }
  return v;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"case1", "case2", "sweep-beta", "sweep-xi", "zero-dynamics", "custom"};
}

bool is_preset(const std::string& name) {
  const auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool preset_is_sweep(const std::string& name) {
  return name == "sweep-beta" || name == "sweep-xi";
}

ExperimentConfig make_preset(const std::string& name) {
  ExperimentConfig cfg;  // defaults are the case-study numbers
  cfg.scenario = name;
  if (name == "case1") {
    cfg.delta = 1;
    cfg.perturbation_gain = 0.3;
  } else if (name == "case2") {
    cfg.delta = 0;
    cfg.perturbation_gain = 0.0;
  } else if (name == "sweep-beta" || name == "sweep-xi") {
    cfg.delta = 1;
    cfg.perturbation_gain = 0.0;
    cfg.T_grid = kSweepGrid;
  } else if (name == "zero-dynamics") {
    cfg.zero_dynamics = true;
    cfg.delta = 1;
    cfg.perturbation_gain = 0.0;
    cfg.xi0 = Eigen::VectorXd::Zero(2);
    cfg.horizon = 40.0;
  } else if (name == "custom") {
    // bare defaults; a config file is expected to fill in the scenario
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return cfg;
}

ExperimentConfig config_from_json(const Json& j, ExperimentConfig base) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  static const std::set<std::string> known{
      "scenario",     "delta",          "perturbation_gain", "T",
      "horizon",      "initial_state",  "l",                 "m",
      "K",            "poles",          "excitation_amplitude",
      "seed",         "substeps",       "noise_amplitude",   "noise_kind",
      "zero_dynamics", "sweep_fresh_seeds", "transient_cut", "tail_window",
      "T_grid"};
  for (const auto& [key, val] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

  if (j.contains("scenario")) base.scenario = j["scenario"].get<std::string>();
  if (j.contains("delta")) base.delta = j["delta"].get<int>();
  if (j.contains("perturbation_gain"))
    base.perturbation_gain = j["perturbation_gain"].get<double>();
  if (j.contains("T")) base.T = j["T"].get<double>();
  if (j.contains("horizon")) base.horizon = j["horizon"].get<double>();
  if (j.contains("initial_state")) {
    const auto& s = j["initial_state"];
    if (!s.is_object() || !s.contains("eta") || !s.contains("xi"))
      throw ConfigError("initial_state must be {\"eta\": [...], \"xi\": [...]}");
    base.eta0 = to_vector(s["eta"], "initial_state.eta");
    base.xi0 = to_vector(s["xi"], "initial_state.xi");
  }
  if (j.contains("l")) base.l = j["l"].get<int>();
  if (j.contains("m")) base.m = j["m"].get<int>();
  if (j.contains("K")) base.K = to_vector(j["K"], "K").transpose();
  if (j.contains("poles")) {
    base.poles.clear();
    for (const auto& p : j["poles"]) {
      if (p.is_number())
        base.poles.emplace_back(p.get<double>(), 0.0);
      else if (p.is_array() && p.size() == 2)
        base.poles.emplace_back(p[0].get<double>(), p[1].get<double>());
      else
        throw ConfigError("poles entries must be numbers or [re, im] pairs");
    }
    if (j.contains("poles") && !j.contains("K")) base.K = Eigen::RowVectorXd();
  }
  if (j.contains("excitation_amplitude"))
    base.excitation_amplitude = j["excitation_amplitude"].get<double>();
  if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("substeps")) base.substeps = j["substeps"].get<int>();
  if (j.contains("noise_amplitude")) base.noise_amplitude = j["noise_amplitude"].get<double>();
  if (j.contains("noise_kind")) base.noise_kind = j["noise_kind"].get<std::string>();
  if (j.contains("zero_dynamics")) base.zero_dynamics = j["zero_dynamics"].get<bool>();
  if (j.contains("sweep_fresh_seeds"))
    base.sweep_fresh_seeds = j["sweep_fresh_seeds"].get<bool>();
  if (j.contains("transient_cut")) base.transient_cut = j["transient_cut"].get<double>();
  if (j.contains("tail_window")) base.tail_window = j["tail_window"].get<double>();
  if (j.contains("T_grid")) {
    base.T_grid.clear();
    for (const auto& t : j["T_grid"]) base.T_grid.push_back(t.get<double>());
  }
  return base;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["scenario"] = cfg.scenario;
  j["delta"] = cfg.delta;
  j["perturbation_gain"] = cfg.perturbation_gain;
  j["T"] = cfg.T;
  j["horizon"] = cfg.horizon;
  j["initial_state"] = {
      {"eta", std::vector<double>(cfg.eta0.begin(), cfg.eta0.end())},
      {"xi", std::vector<double>(cfg.xi0.begin(), cfg.xi0.end())}};
  j["l"] = cfg.l;
  j["m"] = cfg.m;
  j["K"] = std::vector<double>(cfg.K.begin(), cfg.K.end());
  Json poles = Json::array();
  for (const auto& p : cfg.poles) poles.push_back({p.real(), p.imag()});
  j["poles"] = poles;
  j["excitation_amplitude"] = cfg.excitation_amplitude;
  j["seed"] = cfg.seed;
  j["substeps"] = cfg.substeps;
  j["noise_amplitude"] = cfg.noise_amplitude;
  j["noise_kind"] = cfg.noise_kind;
  j["zero_dynamics"] = cfg.zero_dynamics;
  j["sweep_fresh_seeds"] = cfg.sweep_fresh_seeds;
  j["transient_cut"] = cfg.transient_cut;
  j["tail_window"] = cfg.tail_window;
  j["T_grid"] = cfg.T_grid;
  return j;
}

}  // namespace ddfl
