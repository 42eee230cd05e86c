#pragma once

#include "netcast/rng.hpp"
#include "netcast/schemes.hpp"

#include <cstdint>
#include <span>

namespace netcast {

/// Detector readout model: integrating photodiode with kTC reset noise and shot noise.
struct NoiseModel {
  double capacitance = 0.1e-12; ///< farads
  double temperature = 300.0;   ///< kelvin
  bool johnson_enabled = true;
  bool shot_enabled = true;
  /// Johnson noise belongs to incoherent receivers; homodyne runs skip it unless set.
  bool johnson_on_coherent = false;
  std::uint64_t seed = 0;

  static NoiseModel disabled() {
    NoiseModel m;
    m.johnson_enabled = false;
    m.shot_enabled = false;
    return m;
  }

  bool any_enabled() const noexcept { return johnson_enabled || shot_enabled; }
  bool johnson_applies(const Scheme& s) const noexcept {
    return johnson_enabled && (!s.coherent() || johnson_on_coherent);
  }
  void validate() const;
};

struct NoiseFactors {
  double f_src;
  double f_tr;
};

/// Output-referred noise amplitudes, in units of the weight-activation product.
struct NoiseBudget {
  double sigma_j;
  double sigma_s;
  double f_src;
  double f_tr;

  double sigma() const;
};

/// Johnson charge noise sqrt(kTC)/e in electrons (0 when disabled).
double ktc_electrons(const NoiseModel& m);

/// Output-referred Johnson std sqrt(kTC)/e divided by the signal gain
/// (the gain is n_src for incoherent detection).
double johnson_sigma(double gain, const NoiseModel& m);

/// Ensemble-average transmitted fraction <N_tr/N_src>: 1, 1, <|w|>, <|w|>, <|w|^2>.
double transmit_fraction(SchemeKind s, std::span<const double> weights);

/// Ensemble shot-noise factors of each scheme (source- and transmit-referred).
///
/// `weights` is a row-major M x N matrix when its size is a multiple of the
/// activation count; <|w x|> then pairs w_mn with x_n. Otherwise the two
/// ensembles are treated as independent.
NoiseFactors noise_factors(SchemeKind s, std::span<const double> weights,
                           std::span<const double> activations);

/// sqrt(f * n_terms / n_budget).
double shot_sigma(double f, double n_terms, double n_budget);

/// Full analytic budget for an n_terms-long accumulation at n_src photons per weight.
NoiseBudget noise_budget(const Scheme& s, std::span<const double> weights,
                         std::span<const double> activations, double n_terms, double n_src,
                         const NoiseModel& m);

/// Sum over the row of the per-term total detector charge Q_tot.
///
/// Uses the closed forms of transmit_detect without range checks, so it also
/// accepts crosstalk-corrupted weights whose magnitude may exceed one.
double accumulated_total_charge(const Scheme& s, std::span<const double> w_row,
                                std::span<const double> x, double n_src);

/// Variance of the output-referred error: (kTC/e^2 + sum Q_tot) / gain^2, per enabled term.
double readout_variance(const Scheme& s, double q_tot_sum, double n_src, const NoiseModel& m);

/// Energy of n photons at the given wavelength, n h c / lambda.
double photons_to_energy(double photons, double wavelength);

/// Monte-Carlo detector: exact dot product plus Gaussian readout error.
///
/// Owns its random stream; use one sampler per worker.
class NoiseSampler {
public:
  explicit NoiseSampler(const NoiseModel& m);
  NoiseSampler(const NoiseModel& m, CounterRng rng);

  double sample_noisy_accumulation(std::span<const double> w_row, std::span<const double> x,
                                   const Scheme& s, double n_src);

  const NoiseModel& model() const noexcept { return model_; }

private:
  NoiseModel model_;
  CounterRng rng_;
};

/// One standard normal draw from the stream.
double standard_normal(CounterRng& rng);

} // namespace netcast
