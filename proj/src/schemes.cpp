#include "netcast/schemes.hpp"

#include "check.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace netcast {

namespace {

using cd = std::complex<double>;
constexpr double kHalfPi = 1.57079632679489661923;

void require_unit(double v, const char* name) {
  if (!(std::abs(v) <= 1.0))
    detail::domain_error(name, " = ", v, " outside [-1, 1]");
}

// Rail amplitudes with all power on one rail, selected by the sign of w.
ChannelAmplitudes binary_rails(double w, double photons) {
  const double a = std::sqrt(photons);
  return w < 0.0 ? ChannelAmplitudes{0.0, a} : ChannelAmplitudes{a, 0.0};
}

DetectionRecord detect(const ChannelAmplitudes& b, double n_tr) {
  return {b.differential_power(), b.total_power(), n_tr};
}

} // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
  case SchemeKind::SS: return "ss";
  case SchemeKind::SLN: return "sln";
  case SchemeKind::LNS: return "lns";
  case SchemeKind::LNLN: return "lnln";
  case SchemeKind::Coherent: return "coherent";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  lower.erase(std::remove(lower.begin(), lower.end(), '/'), lower.end());
  for (auto k : kAllSchemes)
    if (to_string(k) == lower)
      return k;
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected ss, sln, lns, lnln, coherent)");
}

MrrParams::MrrParams(double k1, double k2) : kappa1(k1), kappa2(k2) {
  if (!(k2 > 0.0) || !(k1 >= k2))
    detail::domain_error("ring couplings require kappa1 >= kappa2 > 0, got kappa1 = ", k1,
                         ", kappa2 = ", k2);
}

EncodedWeight encode_weight_mzm(double w) {
  require_unit(w, "weight");
  return {w, 0.5 * std::acos(w)};
}

EncodedActivation encode_activation_mzm(double x) {
  require_unit(x, "activation");
  return {x, 0.5 * std::acos(x)};
}

ChannelAmplitudes mzm_split(double phi, double n_src) {
  // diag(1, -i) * T(phi) * (1, 0)^T
  const double amp = std::sqrt(n_src);
  const cd through = std::cos(phi);
  const cd cross = cd(0.0, 1.0) * std::sin(phi);
  return {amp * through, amp * cd(0.0, -1.0) * cross};
}

ChannelAmplitudes client_mix(const ChannelAmplitudes& a, double theta) {
  const cd c = std::cos(theta);
  const cd is = cd(0.0, std::sin(theta));
  return {c * a.plus + is * a.minus, is * a.plus + c * a.minus};
}

double mrr_encode_detuning(double w, const MrrParams& p) {
  const double ratio = p.kappa2 / p.kappa1;
  if (w >= 1.0)
    detail::domain_error("weight ", w, " needs infinite ring detuning (admissible range [", -ratio,
                         ", 1))");
  if (!(w >= -ratio))
    detail::domain_error("weight ", w, " below ring encoding limit -kappa2/kappa1 = ", -ratio);
  return p.kappa1 * std::sqrt(std::max(0.0, (ratio + w) / (1.0 - w)));
}

double mrr_weight_from_detuning(double detuning, const MrrParams& p) {
  const double d2 = detuning * detuning;
  return (d2 - p.kappa1 * p.kappa2) / (d2 + p.kappa1 * p.kappa1);
}

double signal_gain(const Scheme& s, double n_src) {
  if (!s.coherent())
    return n_src;
  const double alpha_src = std::sqrt(n_src);
  return 2.0 * s.resolved_lo_amplitude(alpha_src) * alpha_src;
}

bool coherent_weak_signal(const Scheme& s, double n_src) {
  const double alpha_src = std::sqrt(n_src);
  return alpha_src <= 0.1 * s.resolved_lo_amplitude(alpha_src);
}

DetectionRecord transmit_detect(const Scheme& s, double w, double x, double n_src) {
  require_unit(w, "weight");
  require_unit(x, "activation");
  if (!(n_src > 0.0))
    detail::domain_error("source photons per weight must be positive, got ", n_src);

  switch (s.kind) {
  case SchemeKind::SS: {
    const auto a = mzm_split(encode_weight_mzm(w).phi, n_src);
    return detect(client_mix(a, encode_activation_mzm(x).theta), a.total_power());
  }
  case SchemeKind::SLN: {
    // Client intensity modulators scale power by |x|; the MZM switches on sign(x).
    const auto a = mzm_split(encode_weight_mzm(w).phi, n_src);
    const double att = std::sqrt(std::abs(x));
    const ChannelAmplitudes attenuated{att * a.plus, att * a.minus};
    const double theta = x < 0.0 ? kHalfPi : 0.0;
    return detect(client_mix(attenuated, theta), a.total_power());
  }
  case SchemeKind::LNS: {
    const auto a = binary_rails(w, std::abs(w) * n_src);
    return detect(client_mix(a, encode_activation_mzm(x).theta), a.total_power());
  }
  case SchemeKind::LNLN: {
    const auto a = binary_rails(w, std::abs(w) * n_src);
    const double att = std::sqrt(std::abs(x));
    const ChannelAmplitudes attenuated{att * a.plus, att * a.minus};
    const double theta = x < 0.0 ? kHalfPi : 0.0;
    return detect(client_mix(attenuated, theta), a.total_power());
  }
  case SchemeKind::Coherent: {
    const double alpha_src = std::sqrt(n_src);
    const double alpha_x = s.resolved_lo_amplitude(alpha_src);
    return {2.0 * alpha_x * alpha_src * w * x, alpha_x * alpha_x * x * x,
            alpha_src * alpha_src * w * w};
  }
  }
  return {};
}

} // namespace netcast
