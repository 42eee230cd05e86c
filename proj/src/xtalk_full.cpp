#include "netcast/xtalk_full.hpp"

#include "check.hpp"
#include "netcast/constants.hpp"
#include "netcast/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace netcast::fullmodel {

namespace {

constexpr Complex kI{0.0, 1.0};

// sin(x)/x with the removable point handled.
double sinc(double x) {
  return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

void check_channel(const FullModelParams& p, int channel, const char* what) {
  const int h = p.half_channels();
  if (channel < -h || channel > h)
    detail::domain_error(what, " channel ", channel, " outside [", -h, ", ", h, "]");
}

// Demultiplexer response at detector d: drop at ring d, through every ring before it.
Complex wdm_response(const FullModelParams& p, double omega, int detector) {
  const double kw = p.resolved_kappa_wdm();
  const double om = p.comb_spacing;
  Complex r = ring_drop(omega - detector * om, kw);
  for (int m = -p.half_channels(); m < detector; ++m)
    r *= ring_through(omega - m * om, kw);
  return r;
}

// Comb-line amplitudes c_j inside modulator s, before modulation.
std::vector<Complex> comb_coefficients(const FullModelParams& p, int source) {
  const int h = p.half_channels();
  const double om = p.comb_spacing;
  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(p.n_channels));
  for (int j = -h; j <= h; ++j) {
    Complex pre{1.0, 0.0};
    for (int m = -h; m < source; ++m)
      pre *= ring_through(j * om - m * om, p.kappa);
    c.push_back(-ring_drop((j - source) * om, p.kappa) * pre / std::sqrt(p.kappa));
  }
  return c;
}

} // namespace

double FullModelParams::resolved_half_width() const {
  return window_half_width > 0.0 ? window_half_width : n_channels * comb_spacing / 2.0 + 5.0 * kappa;
}

void FullModelParams::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    detail::config_error("kappa must be positive, got ", kappa);
  if (kappa_wdm && !(*kappa_wdm > 0.0))
    detail::config_error("kappa_wdm must be positive, got ", *kappa_wdm);
  if (rc && !(*rc >= 0.0))
    detail::config_error("rc must be non-negative, got ", *rc);
  if (rc_mzm && !(*rc_mzm >= 0.0))
    detail::config_error("rc_mzm must be non-negative, got ", *rc_mzm);
  if (!(step_time > 0.0))
    detail::config_error("step time T must be positive, got ", step_time);
  if (!(comb_spacing > 0.0))
    detail::config_error("comb spacing must be positive, got ", comb_spacing);
  if (n_channels < 1 || n_channels % 2 == 0)
    detail::config_error("n_channels must be a positive odd number, got ", n_channels);
  if (!(duty > 0.0 && duty <= 1.0))
    detail::config_error("duty cycle must lie in (0, 1], got ", duty);
  const double step = resolved_grid_step();
  if (step > kappa / 50.0)
    detail::config_error("frequency step ", step, " exceeds kappa/50 = ", kappa / 50.0,
                         "; the ring lineshape would be under-resolved");
  const double need = half_channels() * comb_spacing + 5.0 * kappa;
  if (resolved_half_width() < need)
    detail::config_error("frequency window half-width ", resolved_half_width(),
                         " does not cover the outer comb lines plus 5 kappa (", need, ")");
}

FrequencyGrid make_grid(const FullModelParams& p) {
  p.validate();
  const double w = p.resolved_half_width();
  const double step = p.resolved_grid_step();
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * w / step - 1e-9));
  return {-w, step, n + 1};
}

Complex ring_through(double delta_omega, double kappa) {
  return -kI * delta_omega / (kappa - kI * delta_omega);
}

Complex ring_drop(double omega, double kappa) { return kappa / (kappa - kI * omega); }

Complex single_pole(double omega, double tau) { return 1.0 / (1.0 - kI * omega * tau); }

Complex modulation_at(const FullModelParams& p, double omega, int delay_steps) {
  const double width = p.duty * p.step_time;
  const double pulse = p.drive_amplitude * width * sinc(omega * width / 2.0);
  // a pulse centered at t = qT picks up exp(i omega q T)
  const Complex shift = delay_steps == 0 ? Complex{1.0, 0.0}
                                         : std::exp(kI * omega * (delay_steps * p.step_time));
  return pulse * shift * single_pole(omega, p.resolved_rc());
}

SpectralField modulation_spectrum(const FullModelParams& p, int delay_steps) {
  SpectralField f;
  f.grid = make_grid(p);
  f.values.resize(f.grid.size);
  for (std::size_t i = 0; i < f.grid.size; ++i)
    f.values[i] = modulation_at(p, f.grid.omega(i), delay_steps);
  return f;
}

SpectralField modulator_comb(const FullModelParams& p, int source_channel) {
  p.validate();
  check_channel(p, source_channel, "source");
  SpectralField f;
  f.grid = make_grid(p);
  const auto c = comb_coefficients(p, source_channel);
  for (int j = -p.half_channels(); j <= p.half_channels(); ++j)
    f.comb_lines.emplace_back(j, c[static_cast<std::size_t>(j + p.half_channels())]);
  return f;
}

SpectralField weight_path(const FullModelParams& p, int source_channel, int delay_steps,
                          int detector_channel) {
  p.validate();
  check_channel(p, source_channel, "source");
  check_channel(p, detector_channel, "detector");
  const int h = p.half_channels();
  const double om = p.comb_spacing;
  const double sk = std::sqrt(p.kappa);
  const auto c = comb_coefficients(p, source_channel);

  SpectralField f;
  f.grid = make_grid(p);
  f.values.resize(f.grid.size);
  for (std::size_t i = 0; i < f.grid.size; ++i) {
    const double w = f.grid.omega(i);
    Complex s{0.0, 0.0};
    for (int j = -h; j <= h; ++j)
      s += c[static_cast<std::size_t>(j + h)] * modulation_at(p, w - j * om, delay_steps);
    s /= p.kappa;
    Complex a = sk * ring_drop(w - source_channel * om, p.kappa) * s;
    for (int m = source_channel + 1; m <= h; ++m)
      a *= ring_through(w - m * om, p.kappa);
    f.values[i] = wdm_response(p, w, detector_channel) * a;
  }
  return f;
}

SpectralField lo_path(const FullModelParams& p, int detector_channel) {
  p.validate();
  check_channel(p, detector_channel, "detector");
  const int h = p.half_channels();
  const double om = p.comb_spacing;
  const double width = p.duty * p.step_time;
  const double tau = p.resolved_rc_mzm();

  SpectralField f;
  f.grid = make_grid(p);
  f.values.resize(f.grid.size);
  for (std::size_t i = 0; i < f.grid.size; ++i) {
    const double w = f.grid.omega(i);
    Complex g{0.0, 0.0};
    for (int j = -h; j <= h; ++j) {
      const double d = w - j * om;
      g += p.lo_drive_amplitude * width * sinc(d * width / 2.0) * single_pole(d, tau);
    }
    f.values[i] = wdm_response(p, w, detector_channel) * g;
  }
  return f;
}

double homodyne_overlap(const SpectralField& lo, const SpectralField& weight, int delay_steps,
                        double step_time) {
  if (lo.grid.size != weight.grid.size || lo.grid.step != weight.grid.step ||
      lo.grid.start != weight.grid.start)
    detail::domain_error("homodyne overlap: fields sampled on different grids");
  const std::size_t n = lo.grid.size;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = lo.grid.omega(i);
    Complex term = std::conj(lo.values[i]) * weight.values[i];
    if (delay_steps != 0)
      term *= std::exp(kI * w * (delay_steps * step_time));
    const double wt = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += wt * term.real();
  }
  return sum * lo.grid.step;
}

CrosstalkKernel compute_kernel(const FullModelParams& p, int range_p, int range_q) {
  p.validate();
  if (range_p < 0 || range_q < 0)
    detail::domain_error("kernel ranges must be non-negative");
  if (range_p > p.half_channels())
    detail::config_error("channel range ", range_p, " exceeds the ", p.n_channels,
                         "-channel comb");

  const auto lo = lo_path(p, 0);
  std::vector<double> raw(static_cast<std::size_t>((2 * range_p + 1) * (2 * range_q + 1)));
  auto slot = [&](int s, int q) {
    return static_cast<std::size_t>((s + range_p) * (2 * range_q + 1) + (q + range_q));
  };
  for (int s = -range_p; s <= range_p; ++s) {
    const auto w = weight_path(p, s, 0, 0);
    for (int q = -range_q; q <= range_q; ++q)
      raw[slot(s, q)] = homodyne_overlap(lo, w, q, p.step_time);
  }

  const double x00 = raw[slot(0, 0)];
  if (!(std::abs(x00) > 0.0) || !std::isfinite(x00))
    throw NumericalError("direct-path overlap X_00 vanished; kernel cannot be normalized");

  CrosstalkKernel k(range_p, range_q);
  for (int s = -range_p; s <= range_p; ++s)
    for (int q = -range_q; q <= range_q; ++q)
      k.set(s, q, (s == 0 && q == 0) ? 1.0 : raw[slot(s, q)] / x00);
  return k;
}

std::vector<ScanPoint> kernel_grid_scan(const FullModelParams& base, std::span<const double> t_values,
                                        std::span<const double> omega_values, int range_p,
                                        int range_q, unsigned threads) {
  const std::size_t nt = t_values.size();
  const std::size_t no = omega_values.size();
  std::vector<ScanPoint> out(nt * no, ScanPoint{0.0, 0.0, 0.0, CrosstalkKernel::identity()});
  parallel_for(
      nt * no,
      [&](std::size_t idx) {
        FullModelParams p = base;
        p.step_time = t_values[idx / no];
        p.comb_spacing = omega_values[idx % no];
        // an explicit window narrower than this point's comb falls back to automatic
        if (p.window_half_width < p.half_channels() * p.comb_spacing + 5.0 * p.kappa)
          p.window_half_width = 0.0;
        out[idx] = {p.step_time, p.comb_spacing,
                    2.0 * constants::pi / (p.step_time * p.comb_spacing),
                    compute_kernel(p, range_p, range_q)};
      },
      threads);
  return out;
}

} // namespace netcast::fullmodel
