#pragma once

#include "netcast/engine.hpp"
#include "netcast/errors.hpp"
#include "netcast/kernel.hpp"
#include "netcast/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netcast {

/// One fully connected layer; the physical weight is scale * weights(m, n).
struct DenseLayer {
  Matrix weights;           ///< stored, |w| <= 1
  std::vector<double> bias; ///< unscaled, added digitally
  double scale = 1.0;
};

struct DnnModel {
  std::vector<DenseLayer> layers;
  double input_scale = 1.0;

  std::size_t input_size() const;
  std::size_t output_size() const;
  /// "small", "large" or "custom" from the layer shapes.
  std::string architecture() const;
  /// Throws DomainError on a broken dimension chain, |w| > 1 or a non-positive scale.
  void validate() const;
};

struct Dataset {
  std::size_t pixels = 784;
  std::vector<double> images; ///< count * pixels, row-major, values in [0, 1]
  std::vector<int> labels;

  std::size_t count() const noexcept { return labels.size(); }
  std::span<const double> image(std::size_t i) const {
    return {images.data() + i * pixels, pixels};
  }
  /// First n samples (all when n == 0 or n >= count).
  Dataset head(std::size_t n) const;
};

/// Plain floating-point forward pass; returns the output-layer values.
std::vector<double> digital_logits(const DnnModel& model, std::span<const double> input);
int digital_forward(const DnnModel& model, std::span<const double> input);

/// A model bound to an engine configuration with every layer precomputed.
class AnalogNetwork {
public:
  AnalogNetwork(const DnnModel& model, const EngineConfig& cfg);

  /// Noise for sample `index` in layer l comes from stream {index, l}.
  std::vector<double> logits(std::span<const double> input, std::uint64_t index) const;
  int classify(std::span<const double> input, std::uint64_t index) const;

private:
  const DnnModel* model_;
  std::vector<AnalogLayer> layers_;
};

/// Analog forward pass for one input; argmax of the output layer.
int forward(const DnnModel& model, std::span<const double> input, const EngineConfig& cfg,
            std::uint64_t index = 0);

struct EvalResult {
  std::size_t errors = 0;
  std::size_t count = 0;

  double error_rate() const { return count ? static_cast<double>(errors) / count : 0.0; }
  /// Binomial standard error sqrt(p (1 - p) / n).
  double stderr_rate() const;
};

/// Misclassification count over the dataset, parallel over images.
EvalResult evaluate(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                    unsigned threads = 0);

struct SweepResult {
  std::vector<double> axis;
  std::vector<double> error_rate;
  std::vector<double> stderr_rate;
  double baseline_error = 0.0;
  std::optional<double> sql;
};

/// Axis direction of the degradation being located.
enum class SqlDirection {
  Falling, ///< error drops with the axis (photon budgets); interpolated in log axis
  Rising,  ///< error grows with the axis (crosstalk); interpolated linearly
};

struct SqlOptions {
  double ratio = 1.5;
  SqlDirection direction = SqlDirection::Falling;
};

/// The sweep never reaches ratio * baseline inside its range.
class SqlNotFound : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Axis value where the error curve meets ratio * baseline_error.
///
/// Falling curves: the largest crossing from above, log-linear in the axis.
/// Rising curves: the smallest crossing from below, linear in the axis.
double find_sql(const SweepResult& sweep, const SqlOptions& opt = {});

/// Noise-free error with the template's kernel and scheme.
double baseline_error(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                      unsigned threads = 0);

/// One evaluate per budget with cfg.photons replaced; every layer gets the same budget.
SweepResult photon_sweep(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                         std::span<const double> budgets, unsigned threads = 0);

enum class CrosstalkMode { Temporal, Frequency, Joint };

std::string to_string(CrosstalkMode m);
CrosstalkMode parse_crosstalk_mode(const std::string& name);

/// Nearest-neighbor kernel for chi along the chosen axis (both for Joint).
CrosstalkKernel crosstalk_mode_kernel(CrosstalkMode mode, double chi);

struct CrosstalkSweepOptions {
  bool keep_noise = false; ///< noise is off unless asked for
  unsigned threads = 0;
};

SweepResult crosstalk_sweep(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                            CrosstalkMode mode, std::span<const double> chi_values,
                            const CrosstalkSweepOptions& opt = {});

/// Same, with one supplied kernel per axis value.
SweepResult crosstalk_sweep(const DnnModel& model, const Dataset& data, const EngineConfig& cfg,
                            std::span<const double> axis, std::span<const CrosstalkKernel> kernels,
                            const CrosstalkSweepOptions& opt = {});

} // namespace netcast
