#include "netcast/noise.hpp"

#include "netcast/constants.hpp"

#include "check.hpp"

#include <cmath>
#include <random>

namespace netcast {

namespace {

double mean_of(std::span<const double> v, auto&& f) {
  double acc = 0.0;
  for (double e : v)
    acc += f(e);
  return acc / static_cast<double>(v.size());
}

double abs_of(double v) { return std::abs(v); }
double sq_of(double v) { return v * v; }

void require_nonempty(std::span<const double> v, const char* what) {
  if (v.empty())
    detail::domain_error("noise factors need a nonempty ", what, " ensemble");
}

} // namespace

void NoiseModel::validate() const {
  if (!(capacitance >= 0.0))
    detail::config_error("capacitance must be >= 0 F, got ", capacitance);
  if (!(temperature > 0.0))
    detail::config_error("temperature must be > 0 K, got ", temperature);
}

double NoiseBudget::sigma() const { return std::sqrt(sigma_j * sigma_j + sigma_s * sigma_s); }

double ktc_electrons(const NoiseModel& m) {
  if (!m.johnson_enabled)
    return 0.0;
  return std::sqrt(constants::boltzmann * m.temperature * m.capacitance) /
         constants::elementary_charge;
}

double johnson_sigma(double gain, const NoiseModel& m) {
  if (!(gain > 0.0))
    detail::domain_error("Johnson noise needs a positive photon budget, got ", gain);
  if (std::isinf(gain))
    return 0.0;
  return ktc_electrons(m) / gain;
}

double transmit_fraction(SchemeKind s, std::span<const double> weights) {
  switch (s) {
  case SchemeKind::SS:
  case SchemeKind::SLN: return 1.0;
  case SchemeKind::LNS:
  case SchemeKind::LNLN: require_nonempty(weights, "weight"); return mean_of(weights, abs_of);
  case SchemeKind::Coherent: require_nonempty(weights, "weight"); return mean_of(weights, sq_of);
  }
  return 1.0;
}

NoiseFactors noise_factors(SchemeKind s, std::span<const double> weights,
                           std::span<const double> activations) {
  require_nonempty(weights, "weight");
  require_nonempty(activations, "activation");
  switch (s) {
  case SchemeKind::SS: return {1.0, 1.0};
  case SchemeKind::SLN: {
    const double ax = mean_of(activations, abs_of);
    return {ax, ax};
  }
  case SchemeKind::LNS: {
    const double aw = mean_of(weights, abs_of);
    return {aw, aw * aw};
  }
  case SchemeKind::LNLN: {
    const double aw = mean_of(weights, abs_of);
    double awx = 0.0;
    if (weights.size() % activations.size() == 0) {
      // Row-major matrix over the activation vector: pair w_mn with x_n.
      const std::size_t n = activations.size();
      for (std::size_t k = 0; k < weights.size(); ++k)
        awx += std::abs(weights[k] * activations[k % n]);
      awx /= static_cast<double>(weights.size());
    } else {
      awx = aw * mean_of(activations, abs_of);
    }
    return {awx, aw * awx};
  }
  case SchemeKind::Coherent: {
    const double x2 = mean_of(activations, sq_of);
    const double w2 = mean_of(weights, sq_of);
    return {0.25 * x2, 0.25 * w2 * x2};
  }
  }
  return {1.0, 1.0};
}

double shot_sigma(double f, double n_terms, double n_budget) {
  if (!(n_budget > 0.0))
    detail::domain_error("shot noise needs a positive photon budget, got ", n_budget);
  if (!(n_terms >= 1.0))
    detail::domain_error("shot noise needs at least one accumulated term, got ", n_terms);
  return std::sqrt(f * n_terms / n_budget);
}

NoiseBudget noise_budget(const Scheme& s, std::span<const double> weights,
                         std::span<const double> activations, double n_terms, double n_src,
                         const NoiseModel& m) {
  const auto f = noise_factors(s.kind, weights, activations);
  NoiseBudget b{0.0, 0.0, f.f_src, f.f_tr};
  if (m.johnson_applies(s))
    b.sigma_j = johnson_sigma(signal_gain(s, n_src), m);
  if (m.shot_enabled)
    b.sigma_s = shot_sigma(f.f_src, n_terms, n_src);
  return b;
}

double accumulated_total_charge(const Scheme& s, std::span<const double> w_row,
                                std::span<const double> x, double n_src) {
  const std::size_t n = w_row.size();
  double acc = 0.0;
  switch (s.kind) {
  case SchemeKind::SS: return static_cast<double>(n) * n_src;
  case SchemeKind::SLN:
    for (std::size_t i = 0; i < n; ++i)
      acc += std::abs(x[i]);
    return acc * n_src;
  case SchemeKind::LNS:
    for (std::size_t i = 0; i < n; ++i)
      acc += std::abs(w_row[i]);
    return acc * n_src;
  case SchemeKind::LNLN:
    for (std::size_t i = 0; i < n; ++i)
      acc += std::abs(w_row[i] * x[i]);
    return acc * n_src;
  case SchemeKind::Coherent: {
    const double alpha_x = s.resolved_lo_amplitude(std::sqrt(n_src));
    for (std::size_t i = 0; i < n; ++i)
      acc += x[i] * x[i];
    return acc * alpha_x * alpha_x;
  }
  }
  return 0.0;
}

double readout_variance(const Scheme& s, double q_tot_sum, double n_src, const NoiseModel& m) {
  double charge_var = 0.0;
  if (m.johnson_applies(s)) {
    const double e = ktc_electrons(m);
    charge_var += e * e;
  }
  if (m.shot_enabled)
    charge_var += q_tot_sum;
  const double gain = signal_gain(s, n_src);
  return charge_var / (gain * gain);
}

double photons_to_energy(double photons, double wavelength) {
  if (!(wavelength > 0.0))
    detail::domain_error("wavelength must be positive, got ", wavelength);
  return photons * constants::planck * constants::speed_of_light / wavelength;
}

double standard_normal(CounterRng& rng) {
  std::normal_distribution<double> dist;
  return dist(rng);
}

NoiseSampler::NoiseSampler(const NoiseModel& m) : NoiseSampler(m, CounterRng::stream(m.seed, {})) {}

NoiseSampler::NoiseSampler(const NoiseModel& m, CounterRng rng) : model_(m), rng_(rng) {
  model_.validate();
}

double NoiseSampler::sample_noisy_accumulation(std::span<const double> w_row,
                                               std::span<const double> x, const Scheme& s,
                                               double n_src) {
  if (w_row.size() != x.size())
    detail::domain_error("weight row has ", w_row.size(), " entries but activation vector has ",
                         x.size());
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    dot += w_row[i] * x[i];
  if (!model_.any_enabled())
    return dot;
  const double var =
      readout_variance(s, accumulated_total_charge(s, w_row, x, n_src), n_src, model_);
  return dot + std::sqrt(var) * standard_normal(rng_);
}

} // namespace netcast
