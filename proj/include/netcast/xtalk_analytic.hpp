#pragma once

#include "netcast/kernel.hpp"

#include <span>
#include <vector>

namespace netcast::xtalk {

/// Ring modulator / demultiplexer link parameters for the closed-form estimates.
struct LinkParams {
  double kappa = 0.0;           ///< ring linewidth, rad/s
  double rc = 0.0;              ///< modulator RC time constant, s
  double step_time = 0.0;       ///< time between weights T, s
  double channel_spacing = 0.0; ///< WDM spacing, rad/s
  double carrier = 0.0;         ///< optical carrier f0, Hz
  double q_factor = 0.0;        ///< ring Q (2 pi f0 / kappa)
  double band = 0.0;            ///< optical bandwidth B, Hz
};

/// Ring linewidth from carrier frequency and loaded Q: 2 pi f0 / Q.
double kappa_from_q(double carrier, double q_factor);

/// tau = sqrt(1/kappa^2 + RC^2).
double response_time(double kappa, double rc);

/// chi_t = exp(-T / tau).
double temporal_crosstalk(double step_time, double tau);

/// Symbol rate bound R = kappa / (sqrt2 ln(1/chi_t)).
double max_symbol_rate(double kappa, double chi_t);

/// Lorentzian leakage (kappa/2)^2 / (dw^2 + (kappa/2)^2).
double frequency_crosstalk(double delta_omega, double kappa);

/// Channel spacing bound kappa / (2 sqrt(chi_omega)).
double min_channel_spacing(double kappa, double chi_omega);

/// Normalized capacity C0 = 2 pi sqrt(2 chi) / ln(1/chi), weights per second per Hz.
double capacity(double chi);

struct CapacityRow {
  double chi;
  double c0;
  double weights_per_s;
  double bits_per_s;
};

std::vector<CapacityRow> capacity_table(std::span<const double> chis, double band,
                                        double bits_per_weight = 8.0);

/// X_00 = 1, X_{0,+-1} = chi_t, X_{+-1,0} = chi_omega.
CrosstalkKernel nearest_neighbor_kernel(double chi_t, double chi_omega);

} // namespace netcast::xtalk
