#include "config.hpp"

#include "netcast/errors.hpp"

#include <cmath>
#include <set>

namespace netcast::cli {

using nlohmann::json;

namespace {

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (!j.contains(key))
    return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

} // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (schemes.empty())
    fail("at least one scheme is required");
  if (!(photons_min > 0.0) || !(photons_max >= photons_min))
    fail("photon grid needs 0 < photons-min <= photons-max");
  if (photons_steps < 1)
    fail("photons-steps must be at least 1");
  if (photons_steps == 1 && photons_max != photons_min)
    fail("a single-step photon grid needs photons-min == photons-max");
  if (!(photons > 0.0))
    fail("photons must be positive");
  if (!(capacitance > 0.0) || !(temperature > 0.0))
    fail("capacitance and temperature must be positive");
  if (!(band_hz >= 0.0))
    fail("band must be non-negative");
  if (bits < 1)
    fail("bits per weight must be at least 1");
  if (kernel_range < 0)
    fail("kernel range must be non-negative");
  if (lo_amplitude < 0.0)
    fail("lo amplitude must be non-negative");
}

std::vector<double> RunConfig::photon_grid() const {
  std::vector<double> g;
  if (photons_steps == 1)
    return {photons_min};
  const double a = std::log10(photons_min), b = std::log10(photons_max);
  for (int i = 0; i < photons_steps; ++i) {
    if (i == 0)
      g.push_back(photons_min);
    else if (i == photons_steps - 1)
      g.push_back(photons_max);
    else
      g.push_back(std::pow(10.0, a + (b - a) * i / (photons_steps - 1)));
  }
  return g;
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["mnist_dir"] = c.mnist_dir;
  j["schemes"] = c.schemes;
  j["budget_mode"] = c.budget_mode;
  j["dataflow"] = c.dataflow;
  j["lo_amplitude"] = c.lo_amplitude;
  j["photons_min"] = c.photons_min;
  j["photons_max"] = c.photons_max;
  j["photons_steps"] = c.photons_steps;
  j["photons"] = c.photons;
  j["chi_list"] = c.chi_list;
  j["xtalk_modes"] = c.xtalk_modes;
  j["chi_t_list"] = c.chi_t_list;
  j["chi_omega_list"] = c.chi_omega_list;
  j["chi_t"] = c.chi_t;
  j["chi_omega"] = c.chi_omega;
  j["xtalk_noise"] = c.xtalk_noise;
  j["johnson"] = c.johnson;
  j["shot"] = c.shot;
  j["johnson_on_coherent"] = c.johnson_on_coherent;
  j["capacitance"] = c.capacitance;
  j["temperature"] = c.temperature;
  j["band_hz"] = c.band_hz;
  j["bits"] = c.bits;
  j["kernel_mode"] = c.kernel_mode;
  j["kappa"] = c.kappa;
  j["step_time"] = c.step_time;
  j["comb_spacing"] = c.comb_spacing;
  j["n_channels"] = c.n_channels;
  j["grid_step"] = c.grid_step;
  j["duty"] = c.duty;
  j["rc"] = c.rc ? json(*c.rc) : json(nullptr);
  j["kernel_range"] = c.kernel_range;
  j["t_list"] = c.t_list;
  j["omega_list"] = c.omega_list;
  j["seed"] = c.seed;
  j["subset"] = c.subset;
  j["out"] = c.out;
  j["plot"] = c.plot;
  return j;
}

RunConfig from_json(const json& j, RunConfig c) {
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");
  const std::set<std::string> known = [] {
    std::set<std::string> k;
    const json defaults = to_json(RunConfig{});
    for (const auto& [key, v] : defaults.items())
      k.insert(key);
    return k;
  }();
  for (const auto& [key, v] : j.items())
    if (!known.count(key))
      throw ConfigError("unknown config key '" + key + "'");

  take(j, "command", c.command);
  take(j, "model", c.model);
  take(j, "mnist_dir", c.mnist_dir);
  take(j, "schemes", c.schemes);
  take(j, "budget_mode", c.budget_mode);
  take(j, "dataflow", c.dataflow);
  take(j, "lo_amplitude", c.lo_amplitude);
  take(j, "photons_min", c.photons_min);
  take(j, "photons_max", c.photons_max);
  take(j, "photons_steps", c.photons_steps);
  take(j, "photons", c.photons);
  take(j, "chi_list", c.chi_list);
  take(j, "xtalk_modes", c.xtalk_modes);
  take(j, "chi_t_list", c.chi_t_list);
  take(j, "chi_omega_list", c.chi_omega_list);
  take(j, "chi_t", c.chi_t);
  take(j, "chi_omega", c.chi_omega);
  take(j, "xtalk_noise", c.xtalk_noise);
  take(j, "johnson", c.johnson);
  take(j, "shot", c.shot);
  take(j, "johnson_on_coherent", c.johnson_on_coherent);
  take(j, "capacitance", c.capacitance);
  take(j, "temperature", c.temperature);
  take(j, "band_hz", c.band_hz);
  take(j, "bits", c.bits);
  take(j, "kernel_mode", c.kernel_mode);
  take(j, "kappa", c.kappa);
  take(j, "step_time", c.step_time);
  take(j, "comb_spacing", c.comb_spacing);
  take(j, "n_channels", c.n_channels);
  take(j, "grid_step", c.grid_step);
  take(j, "duty", c.duty);
  if (j.contains("rc")) {
    if (j["rc"].is_null())
      c.rc.reset();
    else
      take(j, "rc", c.rc.emplace());
  }
  take(j, "kernel_range", c.kernel_range);
  take(j, "t_list", c.t_list);
  take(j, "omega_list", c.omega_list);
  take(j, "seed", c.seed);
  take(j, "subset", c.subset);
  take(j, "out", c.out);
  take(j, "plot", c.plot);
  return c;
}

} // namespace netcast::cli
