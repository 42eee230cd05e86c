#include "netcast/dnn.hpp"

#include "check.hpp"
#include "netcast/parallel.hpp"
#include "netcast/rng.hpp"
#include "netcast/xtalk_analytic.hpp"

#include <algorithm>
#include <cmath>

namespace netcast {

namespace {

int argmax(std::span<const double> v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v)
    m = std::max(m, std::abs(x));
  return m;
}

void require_increasing(std::span<const double> axis, const char* what) {
  if (axis.empty())
    detail::config_error(what, " is empty");
  for (std::size_t i = 1; i < axis.size(); ++i)
    if (!(axis[i] > axis[i - 1]))
      detail::config_error(what, " must be strictly increasing (", axis[i - 1], " then ", axis[i],
                           ")");
}

} // namespace

std::size_t DnnModel::input_size() const { return layers.empty() ? 0 : layers.front().weights.cols(); }

std::size_t DnnModel::output_size() const { return layers.empty() ? 0 : layers.back().weights.rows(); }

std::string DnnModel::architecture() const {
  auto shaped = [&](std::size_t hidden) {
    return layers.size() == 3 && layers[0].weights.rows() == hidden &&
           layers[0].weights.cols() == 784 && layers[1].weights.rows() == hidden &&
           layers[2].weights.rows() == 10;
  };
  if (shaped(100))
    return "small";
  if (shaped(1000))
    return "large";
  return "custom";
}

void DnnModel::validate() const {
  if (layers.empty())
    detail::domain_error("model has no layers");
  if (!(input_scale > 0.0))
    detail::domain_error("input scale must be positive, got ", input_scale);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& L = layers[l];
    if (L.weights.empty())
      detail::domain_error("layer ", l, " is empty");
    if (L.bias.size() != L.weights.rows())
      detail::domain_error("layer ", l, " has ", L.weights.rows(), " rows but ", L.bias.size(),
                           " biases");
    if (!(L.scale > 0.0) || !std::isfinite(L.scale))
      detail::domain_error("layer ", l, " scale must be positive, got ", L.scale);
    if (L.weights.max_abs() > 1.0)
      detail::domain_error("layer ", l, " stored weights exceed 1 in magnitude (max ",
                           L.weights.max_abs(), ")");
    if (l > 0 && L.weights.cols() != layers[l - 1].weights.rows())
      detail::domain_error("layer ", l, " expects ", L.weights.cols(), " inputs but layer ", l - 1,
                           " produces ", layers[l - 1].weights.rows());
  }
}

Dataset Dataset::head(std::size_t n) const {
  if (n == 0 || n >= count())
    return *this;
  Dataset d;
  d.pixels = pixels;
  d.images.assign(images.begin(), images.begin() + static_cast<std::ptrdiff_t>(n * pixels));
  d.labels.assign(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n));
  return d;
}

std::vector<double> digital_logits(const DnnModel& model, std::span<const double> input) {
  if (input.size() != model.input_size())
    detail::domain_error("input has ", input.size(), " values, model expects ", model.input_size());
  std::vector<double> x(input.begin(), input.end());
  for (double& v : x)
    v *= model.input_scale;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const auto& L = model.layers[l];
    auto y = multiply(L.weights, x);
    for (std::size_t m = 0; m < y.size(); ++m) {
      y[m] = L.scale * y[m] + L.bias[m];
      if (l + 1 < model.layers.size())
        y[m] = std::max(0.0, y[m]);
    }
    x = std::move(y);
  }
  return x;
}

int digital_forward(const DnnModel& model, std::span<const double> input) {
  return argmax(digital_logits(model, input));
}

AnalogNetwork::AnalogNetwork(const DnnModel& model, const EngineConfig& cfg) : model_(&model) {
  model.validate();
  layers_.reserve(model.layers.size());
  for (const auto& L : model.layers)
    layers_.emplace_back(L.weights, cfg);
}

std::vector<double> AnalogNetwork::logits(std::span<const double> input, std::uint64_t index) const {
  if (input.size() != model_->input_size())
    detail::domain_error("input has ", input.size(), " values, model expects ",
                         model_->input_size());
  std::vector<double> x(input.begin(), input.end());
  for (double& v : x)
    v *= model_->input_scale;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& L = model_->layers[l];
    double s = max_abs(x);
    if (s == 0.0)
      s = 1.0;
    for (double& v : x)
      v /= s;
    const std::uint64_t key = CounterRng::stream(index, {l}).key();
    auto y = layers_[l].apply(x, key);
    for (std::size_t m = 0; m < y.size(); ++m) {
      y[m] = L.scale * s * y[m] + L.bias[m];
      if (l + 1 < layers_.size())
        y[m] = std::max(0.0, y[m]);
    }
    x = std::move(y);
  }
  return x;
}

int AnalogNetwork::classify(std::span<const double> input, std::uint64_t index) const {
  return argmax(logits(input, index));
}

int forward(const DnnModel& model, std::span<const double> input, const EngineConfig& cfg,
            std::uint64_t index) {
  return AnalogNetwork(model, cfg).classify(input, index);
}

double EvalResult::stderr_rate() const {
  if (count == 0)
    return 0.0;
  const double p = error_rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

EvalResult evaluate(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                    unsigned threads) {
  if (data.count() == 0)
    detail::domain_error("cannot evaluate on an empty dataset");
  if (data.pixels != model.input_size())
    detail::domain_error("dataset has ", data.pixels, " pixels per image, model expects ",
                         model.input_size());
  const AnalogNetwork net(model, cfg);
  std::vector<char> wrong(data.count(), 0);
  parallel_for(
      data.count(),
      [&](std::size_t i) { wrong[i] = net.classify(data.image(i), i) != data.labels[i]; },
      threads);
  EvalResult r;
  r.count = data.count();
  r.errors = static_cast<std::size_t>(std::count(wrong.begin(), wrong.end(), 1));
  return r;
}

double find_sql(const SweepResult& sweep, const SqlOptions& opt) {
  const auto& a = sweep.axis;
  const auto& e = sweep.error_rate;
  if (a.size() != e.size() || a.empty())
    detail::domain_error("sweep axis and error arrays differ in length or are empty");
  const double th = opt.ratio * sweep.baseline_error;
  auto not_found = [&]() -> double {
    throw SqlNotFound(detail::concat("error curve never crosses ", opt.ratio, " x baseline (",
                                     th, "): error ", e.front(), " at ", a.front(), ", ",
                                     e.back(), " at ", a.back()));
  };

  if (opt.direction == SqlDirection::Falling) {
    for (std::size_t i = a.size() - 1; i-- > 0;) {
      if (e[i] > th && e[i + 1] <= th) {
        const double t = (e[i] - th) / (e[i] - e[i + 1]);
        if (a[i] > 0.0 && a[i + 1] > 0.0)
          return std::exp(std::log(a[i]) + t * (std::log(a[i + 1]) - std::log(a[i])));
        return a[i] + t * (a[i + 1] - a[i]);
      }
    }
    return not_found();
  }
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (e[i] < th && e[i + 1] >= th) {
      const double t = (th - e[i]) / (e[i + 1] - e[i]);
      return a[i] + t * (a[i + 1] - a[i]);
    }
  }
  return not_found();
}

double baseline_error(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                      unsigned threads) {
  EngineConfig quiet = cfg;
  quiet.noise = NoiseModel::disabled();
  quiet.noise.seed = cfg.noise.seed;
  return evaluate(model, data, quiet, threads).error_rate();
}

SweepResult photon_sweep(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                         std::span<const double> budgets, unsigned threads) {
  require_increasing(budgets, "photon budget list");
  SweepResult r;
  r.baseline_error = baseline_error(model, data, cfg, threads);
  for (double n : budgets) {
    EngineConfig c = cfg;
    c.photons = n;
    const auto ev = evaluate(model, data, c, threads);
    r.axis.push_back(n);
    r.error_rate.push_back(ev.error_rate());
    r.stderr_rate.push_back(ev.stderr_rate());
  }
  try {
    r.sql = find_sql(r);
  } catch (const SqlNotFound&) {
    r.sql.reset();
  }
  return r;
}

std::string to_string(CrosstalkMode m) {
  switch (m) {
  case CrosstalkMode::Temporal: return "temporal";
  case CrosstalkMode::Frequency: return "frequency";
  case CrosstalkMode::Joint: return "joint";
  }
  return "joint";
}

CrosstalkMode parse_crosstalk_mode(const std::string& name) {
  if (name == "temporal" || name == "time" || name == "t")
    return CrosstalkMode::Temporal;
  if (name == "frequency" || name == "freq" || name == "omega")
    return CrosstalkMode::Frequency;
  if (name == "joint" || name == "both")
    return CrosstalkMode::Joint;
  detail::config_error("unknown crosstalk mode '", name,
                       "' (expected temporal, frequency or joint)");
}

CrosstalkKernel crosstalk_mode_kernel(CrosstalkMode mode, double chi) {
  switch (mode) {
  case CrosstalkMode::Temporal: return xtalk::nearest_neighbor_kernel(chi, 0.0);
  case CrosstalkMode::Frequency: return xtalk::nearest_neighbor_kernel(0.0, chi);
  case CrosstalkMode::Joint: return xtalk::nearest_neighbor_kernel(chi, chi);
  }
  return CrosstalkKernel::identity();
}

SweepResult crosstalk_sweep(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                            std::span<const double> axis, std::span<const CrosstalkKernel> kernels,
                            const CrosstalkSweepOptions& opt) {
  require_increasing(axis, "crosstalk axis");
  if (axis.size() != kernels.size())
    detail::domain_error("crosstalk sweep has ", axis.size(), " axis values but ", kernels.size(),
                         " kernels");
  EngineConfig base = cfg;
  if (!opt.keep_noise) {
    const auto seed = cfg.noise.seed;
    base.noise = NoiseModel::disabled();
    base.noise.seed = seed;
  }
  SweepResult r;
  {
    EngineConfig c = base;
    c.kernel = CrosstalkKernel::identity();
    r.baseline_error = evaluate(model, data, c, opt.threads).error_rate();
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    EngineConfig c = base;
    c.kernel = kernels[i];
    const auto ev = evaluate(model, data, c, opt.threads);
    r.axis.push_back(axis[i]);
    r.error_rate.push_back(ev.error_rate());
    r.stderr_rate.push_back(ev.stderr_rate());
  }
  try {
    r.sql = find_sql(r, {1.5, SqlDirection::Rising});
  } catch (const SqlNotFound&) {
    r.sql.reset();
  }
  return r;
}

SweepResult crosstalk_sweep(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                            CrosstalkMode mode, std::span<const double> chi_values,
                            const CrosstalkSweepOptions& opt) {
  std::vector<CrosstalkKernel> kernels;
  kernels.reserve(chi_values.size());
  for (double chi : chi_values)
    kernels.push_back(crosstalk_mode_kernel(mode, chi));
  return crosstalk_sweep(model, data, cfg, chi_values, kernels, opt);
}

} // namespace netcast
