#pragma once

#include "netcast/kernel.hpp"
#include "netcast/matrix.hpp"
#include "netcast/noise.hpp"
#include "netcast/schemes.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace netcast {

/// Which photon count the budget fixes: the source before modulation or the
/// transmitted light after it.
enum class BudgetMode { Source, Transmitted };

/// TIFS computes y = w x; FITS computes y^T = x^T w (time and frequency swap roles).
enum class Dataflow { TIFS, FITS };

std::string_view to_string(BudgetMode m);
std::string_view to_string(Dataflow d);
BudgetMode parse_budget_mode(std::string_view name);
Dataflow parse_dataflow(std::string_view name);

struct EngineConfig {
  Scheme scheme;
  double photons = 1e3; ///< per weight; meaning set by budget_mode
  BudgetMode budget_mode = BudgetMode::Source;
  NoiseModel noise;
  CrosstalkKernel kernel;
  Dataflow dataflow = Dataflow::TIFS;

  void validate() const;
};

/// w~[m,n] = sum_pq X_pq w[m+p, n+q], zero outside the matrix.
Matrix effective_weights(const Matrix& w, const CrosstalkKernel& kernel);

/// Source photons per weight that make the ensemble-average transmitted
/// photons equal cfg.photons. Only the weight statistics matter.
double budget_rescale(const EngineConfig& cfg, std::span<const double> weights);

/// n_src for a layer: cfg.photons directly, or rescaled in transmitted mode.
double source_photons(const EngineConfig& cfg, std::span<const double> weights);

/// One analog matrix with its effective weights and photon budget resolved.
///
/// Always computes the nominal product y = w x for an M x N matrix; under
/// FITS the crosstalk kernel acts with its axes exchanged.
class AnalogLayer {
public:
  AnalogLayer(const Matrix& w, const EngineConfig& cfg);

  std::size_t inputs() const noexcept { return effective_.cols(); }
  std::size_t outputs() const noexcept { return effective_.rows(); }
  double n_src() const noexcept { return n_src_; }
  const Matrix& effective() const noexcept { return effective_; }

  /// Row m draws from CounterRng::stream(noise.seed, {stream_key, m}).
  std::vector<double> apply(std::span<const double> x, std::uint64_t stream_key) const;

private:
  Matrix effective_;
  Scheme scheme_;
  NoiseModel noise_;
  double n_src_;
};

/// Analog MVM. TIFS: w is M x N, x has N entries. FITS: w is N x M, x has N
/// entries and the result is x^T w; the engine works on w^T with the kernel swapped.
std::vector<double> mvm(const Matrix& w, std::span<const double> x, const EngineConfig& cfg,
                        std::uint64_t stream_key = 0);

} // namespace netcast
