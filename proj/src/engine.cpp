#include "netcast/engine.hpp"

#include "check.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace netcast {

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

} // namespace

std::string_view to_string(BudgetMode m) {
  return m == BudgetMode::Source ? "source" : "transmitted";
}

std::string_view to_string(Dataflow d) { return d == Dataflow::TIFS ? "tifs" : "fits"; }

BudgetMode parse_budget_mode(std::string_view name) {
  const auto s = lowered(name);
  if (s == "source" || s == "src")
    return BudgetMode::Source;
  if (s == "transmitted" || s == "tr")
    return BudgetMode::Transmitted;
  detail::config_error("unknown budget mode '", name, "' (expected source or transmitted)");
}

Dataflow parse_dataflow(std::string_view name) {
  const auto s = lowered(name);
  if (s == "tifs")
    return Dataflow::TIFS;
  if (s == "fits")
    return Dataflow::FITS;
  detail::config_error("unknown dataflow '", name, "' (expected tifs or fits)");
}

void EngineConfig::validate() const {
  if (!(photons > 0.0) || std::isnan(photons))
    detail::config_error("photon budget must be positive, got ", photons);
  if (!kernel.normalized())
    detail::config_error("crosstalk kernel must have X_00 = 1");
  noise.validate();
}

Matrix effective_weights(const Matrix& w, const CrosstalkKernel& kernel) {
  if (kernel.is_identity())
    return w;
  const auto rows = static_cast<long>(w.rows());
  const auto cols = static_cast<long>(w.cols());
  Matrix out(w.rows(), w.cols());
  for (int p = -kernel.range_p(); p <= kernel.range_p(); ++p) {
    for (int q = -kernel.range_q(); q <= kernel.range_q(); ++q) {
      const double x = kernel.at(p, q);
      if (x == 0.0)
        continue;
      const long m0 = std::max(0L, -static_cast<long>(p));
      const long m1 = std::min(rows, rows - p);
      const long n0 = std::max(0L, -static_cast<long>(q));
      const long n1 = std::min(cols, cols - q);
      for (long m = m0; m < m1; ++m)
        for (long n = n0; n < n1; ++n)
          out(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) +=
              x * w(static_cast<std::size_t>(m + p), static_cast<std::size_t>(n + q));
    }
  }
  return out;
}

double budget_rescale(const EngineConfig& cfg, std::span<const double> weights) {
  if (cfg.budget_mode != BudgetMode::Transmitted)
    detail::config_error("budget_rescale needs budget_mode = transmitted");
  if (weights.empty())
    detail::domain_error("budget_rescale: empty weight matrix");
  const double f = transmit_fraction(cfg.scheme.kind, weights);
  if (!(f > 0.0))
    detail::domain_error("budget_rescale: scheme ", to_string(cfg.scheme.kind),
                         " transmits no light for an all-zero weight matrix (<N_tr/N_src> = 0); "
                         "cannot hold the transmitted budget fixed");
  return cfg.photons / f;
}

double source_photons(const EngineConfig& cfg, std::span<const double> weights) {
  return cfg.budget_mode == BudgetMode::Source ? cfg.photons : budget_rescale(cfg, weights);
}

AnalogLayer::AnalogLayer(const Matrix& w, const EngineConfig& cfg)
    : effective_(effective_weights(w, cfg.dataflow == Dataflow::FITS ? cfg.kernel.swapped()
                                                                     : cfg.kernel)),
      scheme_(cfg.scheme), noise_(cfg.noise), n_src_(0.0) {
  cfg.validate();
  n_src_ = source_photons(cfg, w.values());
}

std::vector<double> AnalogLayer::apply(std::span<const double> x, std::uint64_t stream_key) const {
  if (x.size() != effective_.cols())
    detail::domain_error("analog layer expects ", effective_.cols(), " inputs, got ", x.size());
  std::vector<double> y(effective_.rows());
  for (std::size_t m = 0; m < y.size(); ++m) {
    NoiseSampler sampler(noise_, CounterRng::stream(noise_.seed, {stream_key, m}));
    y[m] = sampler.sample_noisy_accumulation(effective_.row(m), x, scheme_, n_src_);
  }
  return y;
}

std::vector<double> mvm(const Matrix& w, std::span<const double> x, const EngineConfig& cfg,
                        std::uint64_t stream_key) {
  if (cfg.dataflow == Dataflow::FITS) {
    if (x.size() != w.rows())
      detail::domain_error("FITS mvm: matrix has ", w.rows(), " rows but vector has ", x.size(),
                           " entries");
    return AnalogLayer(w.transpose(), cfg).apply(x, stream_key);
  }
  if (x.size() != w.cols())
    detail::domain_error("mvm: matrix has ", w.cols(), " columns but vector has ", x.size(),
                         " entries");
  return AnalogLayer(w, cfg).apply(x, stream_key);
}

} // namespace netcast
