#include <doctest.h>

#include "netcast/engine.hpp"
#include "netcast/errors.hpp"
#include "netcast/parallel.hpp"
#include "netcast/xtalk_analytic.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace netcast;

namespace {

// direct triple sum over the full kernel support
Matrix brute_effective(const Matrix& w, const CrosstalkKernel& k) {
  Matrix out(w.rows(), w.cols());
  const long M = static_cast<long>(w.rows()), N = static_cast<long>(w.cols());
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n) {
      double s = 0.0;
      for (int p = -k.range_p(); p <= k.range_p(); ++p)
        for (int q = -k.range_q(); q <= k.range_q(); ++q) {
          const long a = m + p, b = n + q;
          if (a >= 0 && a < M && b >= 0 && b < N)
            s += k.at(p, q) * w(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
      out(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) = s;
    }
  return out;
}

// entries are multiples of 1/8 so every partial sum is exact
Matrix dyadic_matrix(std::size_t r, std::size_t c, std::mt19937_64& g) {
  std::uniform_int_distribution<int> d(-8, 8);
  Matrix m(r, c);
  for (double& v : m.values())
    v = d(g) / 8.0;
  return m;
}

CrosstalkKernel dyadic_kernel(std::mt19937_64& g) {
  std::uniform_int_distribution<int> d(-4, 4);
  CrosstalkKernel k(1, 2);
  for (int p = -1; p <= 1; ++p)
    for (int q = -2; q <= 2; ++q)
      if (p || q)
        k.set(p, q, d(g) / 16.0);
  return k;
}

EngineConfig quiet(SchemeKind s) {
  EngineConfig c;
  c.scheme = {s};
  c.noise = NoiseModel::disabled();
  return c;
}

} // namespace

TEST_SUITE("engine") {

TEST_CASE("identity kernel leaves weights alone") {
  auto rng = CounterRng::stream(21, {});
  const auto w = test::random_matrix(6, 9, rng);
  CHECK(effective_weights(w, CrosstalkKernel::identity()) == w);
  CHECK(effective_weights(w, CrosstalkKernel(2, 2)) == w);
}

TEST_CASE("one forward temporal tap") {
  const Matrix w(2, 2, {1, 2, 3, 4});
  CrosstalkKernel k(0, 1);
  k.set(0, 1, 1.0);
  CHECK(effective_weights(w, k) == Matrix(2, 2, {3, 2, 7, 4}));
  CrosstalkKernel f(1, 0);
  f.set(-1, 0, 0.5);
  CHECK(effective_weights(w, f) == Matrix(2, 2, {1, 2, 3.5, 5}));
}

TEST_CASE("shift-add equals the triple sum on dyadic data") {
  std::mt19937_64 g(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = dyadic_matrix(8, 8, g);
    const auto k = dyadic_kernel(g);
    CHECK(effective_weights(w, k) == brute_effective(w, k));
  }
  const auto w = dyadic_matrix(3, 11, g);
  const auto k = dyadic_kernel(g);
  CHECK(effective_weights(w, k) == brute_effective(w, k));
}

TEST_CASE("changing one weight touches only the kernel footprint") {
  std::mt19937_64 g(5);
  const auto w = dyadic_matrix(9, 9, g);
  const auto k = dyadic_kernel(g);
  auto w2 = w;
  w2(4, 4) += 0.5;
  const auto a = effective_weights(w, k), b = effective_weights(w2, k);
  for (std::size_t m = 0; m < 9; ++m)
    for (std::size_t n = 0; n < 9; ++n) {
      const long dp = 4 - static_cast<long>(m), dq = 4 - static_cast<long>(n);
      if (std::abs(dp) > 1 || std::abs(dq) > 2)
        CHECK(a(m, n) == b(m, n));
      else
        CHECK(b(m, n) - a(m, n) == doctest::Approx(0.5 * k.at(static_cast<int>(dp), static_cast<int>(dq))));
    }
}

TEST_CASE("nearest-neighbor composition") {
  const auto k = xtalk::nearest_neighbor_kernel(0.1, 0.05);
  const Matrix w(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const auto e = effective_weights(w, k);
  CHECK(e(1, 1) == doctest::Approx(5 + 0.1 * (4 + 6) + 0.05 * (2 + 8)));
  CHECK(e(0, 0) == doctest::Approx(1 + 0.1 * 2 + 0.05 * 4));
  CHECK(e(2, 2) == doctest::Approx(9 + 0.1 * 8 + 0.05 * 6));
}

TEST_CASE("noise-off mvm is the exact product") {
  auto rng = CounterRng::stream(22, {});
  const auto w = test::random_matrix(100, 100, rng);
  const auto x = test::random_vector(100, rng);
  const auto ref = multiply(w, x);
  for (auto s : kAllSchemes) {
    const auto y = mvm(w, x, quiet(s));
    for (std::size_t i = 0; i < 100; ++i)
      CHECK(std::abs(y[i] - ref[i]) < 1e-12);
  }
}

TEST_CASE("FITS computes x^T w") {
  auto rng = CounterRng::stream(23, {});
  const auto w = test::random_matrix(5, 7, rng);
  const auto x = test::random_vector(5, rng);
  auto cfg = quiet(SchemeKind::SS);
  cfg.dataflow = Dataflow::FITS;
  const auto y = mvm(w, x, cfg);
  REQUIRE(y.size() == 7);
  for (std::size_t n = 0; n < 7; ++n) {
    double s = 0.0;
    for (std::size_t m = 0; m < 5; ++m)
      s += x[m] * w(m, n);
    CHECK(y[n] == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mvm(w, test::random_vector(7, rng), cfg), DomainError);
}

TEST_CASE("FITS swaps the kernel axes") {
  auto rng = CounterRng::stream(24, {});
  const auto w = test::random_matrix(6, 6, rng);
  const auto x = test::random_vector(6, rng);
  auto k = xtalk::nearest_neighbor_kernel(0.2, 0.03);
  auto tifs = quiet(SchemeKind::SS);
  tifs.kernel = k;
  auto fits = tifs;
  fits.dataflow = Dataflow::FITS;
  fits.kernel = k.swapped();
  const auto a = mvm(w, x, tifs);
  const auto b = mvm(w.transpose(), x, fits);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));

  const auto sym = xtalk::nearest_neighbor_kernel(0.1, 0.1);
  tifs.kernel = sym;
  fits.kernel = sym;
  const auto c = mvm(w, x, tifs);
  const auto d = mvm(w.transpose(), x, fits);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(c[i] == doctest::Approx(d[i]).epsilon(1e-12));
}

TEST_CASE("Monte-Carlo mean and variance of a noisy row") {
  auto rng = CounterRng::stream(25, {});
  const auto w = test::random_matrix(1, 64, rng);
  const auto x = test::random_vector(64, rng, 0.0, 1.0);
  const double n_src = 300.0;
  const double exact = multiply(w, x)[0];
  for (auto s : kIncoherentSchemes) {
    EngineConfig cfg;
    cfg.scheme = {s};
    cfg.photons = n_src;
    cfg.noise.seed = 77;
    // independent variance: reset charge plus summed detector charge
    double q = 0.0;
    for (std::size_t n = 0; n < 64; ++n)
      q += transmit_detect(cfg.scheme, w(0, n), x[n], n_src).q_tot;
    const double e = ktc_electrons(cfg.noise);
    const double var = (e * e + q) / (n_src * n_src);
    const int trials = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double d = mvm(w, x, cfg, static_cast<std::uint64_t>(t))[0] - exact;
      sum += d;
      sum2 += d * d;
    }
    const double mean = sum / trials;
    CAPTURE(to_string(s));
    CHECK(std::abs(mean) < 4.0 * std::sqrt(var / trials));
    CHECK(std::abs(sum2 / trials - mean * mean - var) < 4.0 * var * std::sqrt(2.0 / trials));
  }
}

TEST_CASE("budget rescale") {
  EngineConfig cfg;
  cfg.budget_mode = BudgetMode::Transmitted;
  cfg.photons = 100.0;
  const std::vector<double> tenth(50, 0.1), neg(50, -0.1), ones(8, 1.0), zero(8, 0.0);
  cfg.scheme = {SchemeKind::SS};
  CHECK(budget_rescale(cfg, tenth) == doctest::Approx(100.0));
  cfg.scheme = {SchemeKind::LNS};
  CHECK(budget_rescale(cfg, tenth) == doctest::Approx(1000.0));
  CHECK(budget_rescale(cfg, neg) == doctest::Approx(1000.0));
  cfg.scheme = {SchemeKind::Coherent};
  CHECK(budget_rescale(cfg, ones) == doctest::Approx(100.0));
  CHECK(budget_rescale(cfg, tenth) == doctest::Approx(1e4));
  cfg.scheme = {SchemeKind::LNLN};
  CHECK_THROWS_AS(budget_rescale(cfg, zero), DomainError);
  cfg.scheme = {SchemeKind::SLN};
  CHECK(budget_rescale(cfg, zero) == doctest::Approx(100.0));
  cfg.budget_mode = BudgetMode::Source;
  CHECK_THROWS_AS(budget_rescale(cfg, tenth), ConfigError);
  CHECK(source_photons(cfg, tenth) == 100.0);
}

TEST_CASE("transmitted budget is held on average") {
  auto rng = CounterRng::stream(26, {});
  const auto w = test::random_matrix(20, 30, rng);
  for (auto s : kAllSchemes) {
    EngineConfig cfg;
    cfg.scheme = {s};
    cfg.photons = 250.0;
    cfg.budget_mode = BudgetMode::Transmitted;
    const AnalogLayer layer(w, cfg);
    double tr = 0.0;
    for (double v : w.values())
      tr += transmit_detect(cfg.scheme, v, 0.5, layer.n_src()).n_tr;
    CAPTURE(to_string(s));
    CHECK(std::abs(tr / static_cast<double>(w.size()) - 250.0) < 0.01 * 250.0);
  }
}

TEST_CASE("noise streams do not depend on the thread count") {
  auto rng = CounterRng::stream(27, {});
  const auto w = test::random_matrix(30, 40, rng);
  EngineConfig cfg;
  cfg.scheme = {SchemeKind::SLN};
  cfg.photons = 50.0;
  cfg.noise.seed = 3;
  const AnalogLayer layer(w, cfg);
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < 16; ++i)
    xs.push_back(test::random_vector(40, rng));
  std::vector<std::vector<double>> serial(16), threaded(16);
  parallel_for(16, [&](std::size_t i) { serial[i] = layer.apply(xs[i], i); }, 1);
  parallel_for(16, [&](std::size_t i) { threaded[i] = layer.apply(xs[i], i); }, 4);
  CHECK(serial == threaded);
  CHECK(layer.apply(xs[0], 0) != layer.apply(xs[0], 1));
}

TEST_CASE("shape and configuration errors") {
  auto rng = CounterRng::stream(28, {});
  const auto w = test::random_matrix(4, 5, rng);
  CHECK_THROWS_AS(mvm(w, test::random_vector(4, rng), quiet(SchemeKind::SS)), DomainError);
  auto cfg = quiet(SchemeKind::SS);
  cfg.photons = 0.0;
  CHECK_THROWS_AS(mvm(w, test::random_vector(5, rng), cfg), ConfigError);
  cfg = quiet(SchemeKind::SS);
  cfg.kernel = CrosstalkKernel(1, 1);
  cfg.kernel.set(0, 0, 0.9);
  CHECK_THROWS_AS(mvm(w, test::random_vector(5, rng), cfg), ConfigError);
  CHECK(parse_budget_mode("tr") == BudgetMode::Transmitted);
  CHECK(parse_dataflow("FITS") == Dataflow::FITS);
  CHECK_THROWS_AS(parse_dataflow("both"), ConfigError);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>(3)), DomainError);
}

}
