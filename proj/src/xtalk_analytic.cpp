#include "netcast/xtalk_analytic.hpp"

#include "netcast/constants.hpp"

#include "check.hpp"

#include <cmath>

namespace netcast::xtalk {

namespace {

void require_open_unit(double chi, const char* name) {
  if (!(chi > 0.0 && chi < 1.0))
    detail::domain_error(name, " = ", chi, " must lie in (0, 1)");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0))
    detail::domain_error(name, " must be positive, got ", v);
}

} // namespace

double kappa_from_q(double carrier, double q_factor) {
  require_positive(carrier, "carrier frequency");
  require_positive(q_factor, "Q factor");
  return 2.0 * constants::pi * carrier / q_factor;
}

double response_time(double kappa, double rc) {
  require_positive(kappa, "kappa");
  if (!(rc >= 0.0))
    detail::domain_error("RC must be nonnegative, got ", rc);
  return std::sqrt(1.0 / (kappa * kappa) + rc * rc);
}

double temporal_crosstalk(double step_time, double tau) {
  if (!(step_time >= 0.0))
    detail::domain_error("step time must be nonnegative, got ", step_time);
  require_positive(tau, "response time");
  return std::exp(-step_time / tau);
}

double max_symbol_rate(double kappa, double chi_t) {
  require_positive(kappa, "kappa");
  require_open_unit(chi_t, "chi_t");
  return kappa / (std::sqrt(2.0) * std::log(1.0 / chi_t));
}

double frequency_crosstalk(double delta_omega, double kappa) {
  require_positive(kappa, "kappa");
  const double hw2 = 0.25 * kappa * kappa;
  return hw2 / (delta_omega * delta_omega + hw2);
}

double min_channel_spacing(double kappa, double chi_omega) {
  require_positive(kappa, "kappa");
  require_open_unit(chi_omega, "chi_omega");
  return kappa / (2.0 * std::sqrt(chi_omega));
}

double capacity(double chi) {
  require_open_unit(chi, "chi");
  return 2.0 * constants::pi * std::sqrt(2.0 * chi) / std::log(1.0 / chi);
}

std::vector<CapacityRow> capacity_table(std::span<const double> chis, double band,
                                        double bits_per_weight) {
  if (!(band >= 0.0))
    detail::domain_error("bandwidth must be nonnegative, got ", band);
  std::vector<CapacityRow> rows;
  rows.reserve(chis.size());
  for (double chi : chis) {
    const double c0 = capacity(chi);
    const double rate = c0 * band;
    rows.push_back({chi, c0, rate, rate * bits_per_weight});
  }
  return rows;
}

CrosstalkKernel nearest_neighbor_kernel(double chi_t, double chi_omega) {
  if (!(chi_t >= 0.0 && chi_t < 1.0))
    detail::domain_error("chi_t = ", chi_t, " must lie in [0, 1)");
  if (!(chi_omega >= 0.0 && chi_omega < 1.0))
    detail::domain_error("chi_omega = ", chi_omega, " must lie in [0, 1)");
  CrosstalkKernel k(1, 1);
  k.set(0, 1, chi_t);
  k.set(0, -1, chi_t);
  k.set(1, 0, chi_omega);
  k.set(-1, 0, chi_omega);
  return k;
}

} // namespace netcast::xtalk
