#pragma once

#include "netcast/kernel.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace netcast::fullmodel {

using Complex = std::complex<double>;

/// Microring server + ring demultiplexer link, small-signal regime.
///
/// Frequencies are offsets from the probe channel's comb line. Any consistent
/// unit system works; the defaults use kappa = 1, so times are in units of
/// 1/kappa and frequencies in units of kappa.
struct FullModelParams {
  double kappa = 1.0;             ///< ring linewidth shared by modulator and WDM rings
  std::optional<double> rc;       ///< modulator RC constant, default 1/kappa
  double step_time = 4.0;         ///< T
  double comb_spacing = 10.0;     ///< Omega
  int n_channels = 7;             ///< odd; channel 0 (center) is the probe
  double grid_step = 0.0;         ///< 0 selects kappa/100
  double window_half_width = 0.0; ///< 0 selects n_channels Omega / 2 + 5 kappa
  double duty = 0.5;              ///< square-pulse duty cycle
  double drive_amplitude = 1.0;   ///< V_w pulse height
  double lo_drive_amplitude = 1.0;///< V_x pulse height
  std::optional<double> rc_mzm;   ///< client MZM time constant, default: modulator RC
  std::optional<double> kappa_wdm;///< demultiplexer ring linewidth, default: kappa

  double resolved_rc() const { return rc.value_or(1.0 / kappa); }
  double resolved_rc_mzm() const { return rc_mzm.value_or(resolved_rc()); }
  double resolved_kappa_wdm() const { return kappa_wdm.value_or(kappa); }
  double resolved_grid_step() const { return grid_step > 0.0 ? grid_step : kappa / 100.0; }
  double resolved_half_width() const;
  int half_channels() const { return (n_channels - 1) / 2; }

  /// Throws ConfigError unless the grid resolves the ring lineshape
  /// (step <= kappa/50) and the window spans every comb line plus 5 kappa.
  void validate() const;
};

/// Uniform frequency grid omega_i = start + i * step.
struct FrequencyGrid {
  double start = 0.0;
  double step = 0.0;
  std::size_t size = 0;

  double omega(std::size_t i) const { return start + step * static_cast<double>(i); }
};

FrequencyGrid make_grid(const FullModelParams& p);

/// A field sampled on the grid, with any discrete comb lines kept apart.
struct SpectralField {
  FrequencyGrid grid;
  std::vector<Complex> values;
  std::vector<std::pair<int, Complex>> comb_lines; ///< channel index -> delta-line amplitude
};

/// Critically coupled all-pass ring: -i dw / (kappa - i dw).
Complex ring_through(double delta_omega, double kappa);
/// Ring drop response kappa / (kappa - i omega).
Complex ring_drop(double omega, double kappa);
/// Single-pole filter 1 / (1 - i omega tau).
Complex single_pole(double omega, double tau);

/// Drive detuning spectrum V_w(omega) K_RC(omega) at one frequency; the
/// square pulse of width duty*T is centered on time step `delay_steps`.
Complex modulation_at(const FullModelParams& p, double omega, int delay_steps = 0);
SpectralField modulation_spectrum(const FullModelParams& p, int delay_steps = 0);

/// Unperturbed intra-ring comb of modulator `source_channel` (steps 1-3).
SpectralField modulator_comb(const FullModelParams& p, int source_channel);

/// Weight signal from modulator `source_channel`, pulse in step `delay_steps`,
/// as it reaches detector `detector_channel` (steps 1-6).
SpectralField weight_path(const FullModelParams& p, int source_channel, int delay_steps = 0,
                          int detector_channel = 0);

/// Local-oscillator field at detector `detector_channel`: MZM-filtered pulse
/// on every comb line, then demultiplexed.
SpectralField lo_path(const FullModelParams& p, int detector_channel = 0);

/// Re of the trapezoidal overlap integral of conj(lo) * weight * exp(i q omega T).
double homodyne_overlap(const SpectralField& lo, const SpectralField& weight, int delay_steps,
                        double step_time);

/// X_pq at the probe detector for |p| <= range_p, |q| <= range_q, normalized to X_00 = 1.
CrosstalkKernel compute_kernel(const FullModelParams& p, int range_p = 1, int range_q = 1);

struct ScanPoint {
  double step_time;
  double comb_spacing;
  double c0; ///< 2 pi / (T Omega)
  CrosstalkKernel kernel;
};

/// One kernel per (T, Omega), ordered by T then Omega. Other fields come from `base`.
std::vector<ScanPoint> kernel_grid_scan(const FullModelParams& base, std::span<const double> t_values,
                                        std::span<const double> omega_values, int range_p = 1,
                                        int range_q = 1, unsigned threads = 0);

} // namespace netcast::fullmodel
