#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace netcast::cli {

/// Every knob of every subcommand. Serialized flat, one key per flag.
struct RunConfig {
  std::string command;
  std::string model;
  std::string mnist_dir = "data/mnist";
  std::vector<std::string> schemes{"ss"};
  std::string budget_mode = "source";
  std::string dataflow = "tifs";
  double lo_amplitude = 0.0;

  double photons_min = 1.0;
  double photons_max = 1e5;
  int photons_steps = 11;
  double photons = 1e3;

  std::vector<double> chi_list{0.0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3};
  std::vector<std::string> xtalk_modes{"temporal", "frequency", "joint"};
  std::vector<double> chi_t_list;
  std::vector<double> chi_omega_list;
  double chi_t = 0.0;
  double chi_omega = 0.0;
  bool xtalk_noise = false;

  bool johnson = true;
  bool shot = true;
  bool johnson_on_coherent = false;
  double capacitance = 0.1e-12;
  double temperature = 300.0;

  double band_hz = 4.4e12;
  int bits = 8;

  std::string kernel_mode = "single";
  double kappa = 1.0;
  double step_time = 4.0;
  double comb_spacing = 10.0;
  int n_channels = 7;
  double grid_step = 0.0;
  double duty = 0.5;
  std::optional<double> rc;
  int kernel_range = 1;
  std::vector<double> t_list{2.0, 4.0, 8.0};
  std::vector<double> omega_list{5.0, 10.0, 20.0};

  std::uint64_t seed = 1;
  std::size_t subset = 2000;
  std::string out = "out";
  bool plot = false;

  /// Throws ConfigError on inconsistent values.
  void validate() const;
  /// Log-spaced budgets from photons_min to photons_max.
  std::vector<double> photon_grid() const;
};

nlohmann::json to_json(const RunConfig& c);
/// Starts from `base` and overrides the keys present; unknown keys are a ConfigError.
RunConfig from_json(const nlohmann::json& j, RunConfig base = {});

} // namespace netcast::cli
