#pragma once

#include "netcast/dnn.hpp"
#include "netcast/matrix.hpp"
#include "netcast/rng.hpp"
#include "netcast/xtalk_full.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace netcast::test {

/// Smooth 28x28 template for class k (two Gaussian blobs at class-specific spots).
std::vector<double> prototype(int k);

/// Noisy prototypes clipped to [0, 1]; a fraction `flip` of labels is reassigned at random.
Dataset synthetic_dataset(std::size_t n, std::uint64_t seed, double sigma = 0.3, double flip = 0.03);

/// 784 -> 100 -> 100 -> 10 network that classifies by nearest prototype.
///
/// Layer 1 holds +/- copies of each centered prototype score so ReLU keeps the
/// sign information, layer 2 re-forms the pairs, layer 3 sums them per class.
DnnModel nearest_centroid_model();

/// Random model with hidden ReLU layers, stored weights in [-1, 1].
DnnModel random_model(const std::vector<std::size_t>& widths, std::uint64_t seed);

Matrix random_matrix(std::size_t rows, std::size_t cols, CounterRng& rng, double lo = -1.0,
                     double hi = 1.0);
std::vector<double> random_vector(std::size_t n, CounterRng& rng, double lo = -1.0, double hi = 1.0);

/// Fresh empty directory under the system temp dir.
std::filesystem::path fresh_dir(const std::string& name);

/// Writes t10k IDX files for `data` into dir (gzip when gz is set).
void write_mnist_dir(const std::filesystem::path& dir, const Dataset& data, bool gz = false);

/// Time-domain reference for one modulator ring feeding one WDM ring.
///
/// Integrates the coupled-mode equations of the RC drive, modulator ring,
/// demultiplexer ring and the LO's MZM filter with RK4 on a time grid that
/// puts the pulse edges on grid points, then forms the detector overlap
/// 2 pi * integral of a_x(t) a_w(t - qT) dt with the trapezoid rule.
struct OdeKernel {
  double x00_raw;
  std::vector<double> x0q; ///< normalized, index q + range_q
};

OdeKernel single_channel_ode_kernel(const fullmodel::FullModelParams& p, int range_q,
                                    int steps_per_period = 4000);

} // namespace netcast::test
