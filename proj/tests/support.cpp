#include "support.hpp"

#include "netcast/constants.hpp"
#include "netcast/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unistd.h>

namespace netcast::test {

namespace {

// blob centers (row, col) per class, two per class
constexpr double kBlobs[10][4] = {
    {7, 7, 20, 20},  {7, 14, 20, 14}, {7, 20, 20, 7},  {14, 7, 14, 20}, {5, 5, 5, 22},
    {22, 5, 22, 22}, {10, 10, 18, 18}, {10, 18, 18, 10}, {14, 14, 4, 14}, {14, 14, 24, 14},
};

DenseLayer scaled_layer(Matrix w, std::vector<double> bias) {
  const double s = w.max_abs() > 0.0 ? w.max_abs() : 1.0;
  for (double& v : w.values())
    v /= s;
  return {std::move(w), std::move(bias), s};
}

} // namespace

std::vector<double> prototype(int k) {
  std::vector<double> img(784, 0.0);
  const double sigma = 3.0;
  for (int r = 0; r < 28; ++r)
    for (int c = 0; c < 28; ++c) {
      double v = 0.0;
      for (int b = 0; b < 2; ++b) {
        const double dr = r - kBlobs[k][2 * b], dc = c - kBlobs[k][2 * b + 1];
        v += std::exp(-(dr * dr + dc * dc) / (2 * sigma * sigma));
      }
      img[static_cast<std::size_t>(r * 28 + c)] = std::min(1.0, v);
    }
  return img;
}

Dataset synthetic_dataset(std::size_t n, std::uint64_t seed, double sigma, double flip) {
  std::vector<std::vector<double>> protos;
  for (int k = 0; k < 10; ++k)
    protos.push_back(prototype(k));
  Dataset d;
  d.pixels = 784;
  d.images.resize(n * 784);
  d.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = CounterRng::stream(seed, {i});
    std::normal_distribution<double> noise(0.0, sigma);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int k = static_cast<int>(i % 10);
    for (std::size_t j = 0; j < 784; ++j)
      d.images[i * 784 + j] = std::clamp(protos[static_cast<std::size_t>(k)][j] + noise(rng), 0.0, 1.0);
    int label = k;
    if (unit(rng) < flip)
      label = (k + 1 + static_cast<int>(unit(rng) * 9.0)) % 10;
    d.labels[i] = label;
  }
  return d;
}

DnnModel nearest_centroid_model() {
  constexpr int kCopies = 5;
  std::vector<std::vector<double>> protos;
  std::vector<double> mean(784, 0.0);
  for (int k = 0; k < 10; ++k) {
    protos.push_back(prototype(k));
    for (std::size_t j = 0; j < 784; ++j)
      mean[j] += protos.back()[j] / 10.0;
  }
  auto sq = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
      s += x * x;
    return s;
  };
  auto row_of = [](int k, int sign, int copy) {
    return static_cast<std::size_t>((2 * k + sign) * kCopies + copy);
  };

  Matrix w1(100, 784);
  std::vector<double> b1(100);
  for (int k = 0; k < 10; ++k) {
    const double bias = -0.5 * (sq(protos[static_cast<std::size_t>(k)]) - sq(mean));
    for (int sgn = 0; sgn < 2; ++sgn)
      for (int c = 0; c < kCopies; ++c) {
        const double s = sgn == 0 ? 1.0 : -1.0;
        const auto r = row_of(k, sgn, c);
        for (std::size_t j = 0; j < 784; ++j)
          w1(r, j) = s * (protos[static_cast<std::size_t>(k)][j] - mean[j]);
        b1[r] = s * bias;
      }
  }

  Matrix w2(100, 100);
  for (int k = 0; k < 10; ++k)
    for (int sgn = 0; sgn < 2; ++sgn)
      for (int c = 0; c < kCopies; ++c) {
        w2(row_of(k, sgn, c), row_of(k, sgn, c)) = 1.0;
        w2(row_of(k, sgn, c), row_of(k, 1 - sgn, c)) = -1.0;
      }

  Matrix w3(10, 100);
  for (int k = 0; k < 10; ++k)
    for (int c = 0; c < kCopies; ++c) {
      w3(static_cast<std::size_t>(k), row_of(k, 0, c)) = 1.0 / kCopies;
      w3(static_cast<std::size_t>(k), row_of(k, 1, c)) = -1.0 / kCopies;
    }

  DnnModel m;
  m.layers.push_back(scaled_layer(std::move(w1), std::move(b1)));
  m.layers.push_back(scaled_layer(std::move(w2), std::vector<double>(100, 0.0)));
  m.layers.push_back(scaled_layer(std::move(w3), std::vector<double>(10, 0.0)));
  return m;
}

DnnModel random_model(const std::vector<std::size_t>& widths, std::uint64_t seed) {
  DnnModel m;
  auto rng = CounterRng::stream(seed, {0xabcdef});
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    DenseLayer L;
    L.weights = random_matrix(widths[l + 1], widths[l], rng);
    L.bias = random_vector(widths[l + 1], rng, -0.1, 0.1);
    L.scale = 1.0 / std::sqrt(static_cast<double>(widths[l]));
    m.layers.push_back(std::move(L));
  }
  return m;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, CounterRng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.values())
    v = u(rng);
  return m;
}

std::vector<double> random_vector(std::size_t n, CounterRng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v)
    x = u(rng);
  return v;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("netcast_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_mnist_dir(const std::filesystem::path& dir, const Dataset& data, bool gz) {
  std::filesystem::create_directories(dir);
  const std::string ext = gz ? ".gz" : "";
  write_idx_images(dir / ("t10k-images-idx3-ubyte" + ext), data, 28, 28);
  write_idx_labels(dir / ("t10k-labels-idx1-ubyte" + ext), data);
}

OdeKernel single_channel_ode_kernel(const fullmodel::FullModelParams& p, int range_q,
                                    int steps_per_period) {
  const double T = p.step_time;
  const double dt = T / steps_per_period;
  const double width = p.duty * T;
  const double kappa = p.kappa, kw = p.resolved_kappa_wdm();
  const double rc = p.resolved_rc(), rc_mzm = p.resolved_rc_mzm();

  // pulse on [-width/2, width/2]; both edges must land on grid points
  const long half = std::lround(width / 2.0 / dt);
  const double slowest = std::max({1.0 / kappa, 1.0 / kw, rc, rc_mzm});
  const long tail = std::lround(60.0 * slowest / dt) + range_q * steps_per_period;
  const long n = 2 * half + tail + 1;
  const double t0 = -half * dt;

  auto drive = [&](double t, double amp) {
    return (t >= -width / 2.0 - 1e-12 && t < width / 2.0 - 1e-12) ? amp : 0.0;
  };

  // state: weight {rc filter, modulator ring, wdm ring}, lo {mzm filter, wdm ring}
  struct State {
    double xw, y, zw, xl, zl;
  };
  const double c0 = -1.0 / std::sqrt(kappa);
  auto deriv = [&](const State& s, double vw, double vl) {
    State d{};
    d.xw = rc > 0 ? (vw - s.xw) / rc : 0.0;
    const double xin = rc > 0 ? s.xw : vw;
    d.y = -kappa * s.y + c0 * xin; // kappa * S with S = c0 * x / kappa
    d.zw = -kw * s.zw + kw * std::sqrt(kappa) * s.y;
    d.xl = rc_mzm > 0 ? (vl - s.xl) / rc_mzm : 0.0;
    const double lin = rc_mzm > 0 ? s.xl : vl;
    d.zl = -kw * s.zl + kw * lin;
    return d;
  };
  auto axpy = [](const State& a, const State& b, double h) {
    return State{a.xw + h * b.xw, a.y + h * b.y, a.zw + h * b.zw, a.xl + h * b.xl,
                 a.zl + h * b.zl};
  };

  std::vector<double> aw(static_cast<std::size_t>(n)), ax(static_cast<std::size_t>(n));
  State s{0, 0, 0, 0, 0};
  for (long i = 0; i < n; ++i) {
    aw[static_cast<std::size_t>(i)] = s.zw;
    ax[static_cast<std::size_t>(i)] = s.zl;
    // the drive is constant across each step, sampled at its midpoint
    const double tm = t0 + (i + 0.5) * dt;
    const double vw = drive(tm, p.drive_amplitude), vl = drive(tm, p.lo_drive_amplitude);
    const State k1 = deriv(s, vw, vl);
    const State k2 = deriv(axpy(s, k1, dt / 2), vw, vl);
    const State k3 = deriv(axpy(s, k2, dt / 2), vw, vl);
    const State k4 = deriv(axpy(s, k3, dt), vw, vl);
    s = State{s.xw + dt / 6 * (k1.xw + 2 * k2.xw + 2 * k3.xw + k4.xw),
              s.y + dt / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y),
              s.zw + dt / 6 * (k1.zw + 2 * k2.zw + 2 * k3.zw + k4.zw),
              s.xl + dt / 6 * (k1.xl + 2 * k2.xl + 2 * k3.xl + k4.xl),
              s.zl + dt / 6 * (k1.zl + 2 * k2.zl + 2 * k3.zl + k4.zl)};
  }

  // 2 pi * integral a_x(t) a_w(t - qT) dt
  auto overlap = [&](int q) {
    const long shift = static_cast<long>(q) * steps_per_period;
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
      const long j = i - shift;
      if (j < 0 || j >= n)
        continue;
      const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      sum += wt * ax[static_cast<std::size_t>(i)] * aw[static_cast<std::size_t>(j)];
    }
    return 2.0 * constants::pi * sum * dt;
  };

  OdeKernel k;
  k.x00_raw = overlap(0);
  for (int q = -range_q; q <= range_q; ++q)
    k.x0q.push_back(overlap(q) / k.x00_raw);
  return k;
}

} // namespace netcast::test
