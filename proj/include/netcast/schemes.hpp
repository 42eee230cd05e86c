#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace netcast {

/// The four incoherent transmitter/receiver pairings plus homodyne detection.
///
/// S = simple differential signalling, LN = low-noise (an intensity modulator
/// carries the magnitude, the MZM only the sign). Named server/client.
enum class SchemeKind { SS, SLN, LNS, LNLN, Coherent };

inline constexpr SchemeKind kAllSchemes[] = {SchemeKind::SS, SchemeKind::SLN, SchemeKind::LNS,
                                             SchemeKind::LNLN, SchemeKind::Coherent};
inline constexpr SchemeKind kIncoherentSchemes[] = {SchemeKind::SS, SchemeKind::SLN,
                                                    SchemeKind::LNS, SchemeKind::LNLN};

std::string_view to_string(SchemeKind kind);
/// Accepts the CLI spellings ss, sln, lns, lnln, coherent (case-insensitive).
SchemeKind parse_scheme(std::string_view name);

struct Scheme {
  SchemeKind kind = SchemeKind::SS;
  /// Local-oscillator amplitude alpha_x (sqrt of photons), coherent only.
  /// Zero selects an automatic LO ten times stronger than the source amplitude.
  double lo_amplitude = 0.0;

  bool coherent() const noexcept { return kind == SchemeKind::Coherent; }
  bool low_noise_transmitter() const noexcept {
    return kind == SchemeKind::LNS || kind == SchemeKind::LNLN;
  }
  /// alpha_x for a given source amplitude, resolving the automatic default.
  double resolved_lo_amplitude(double alpha_src) const noexcept {
    return lo_amplitude > 0.0 ? lo_amplitude : 10.0 * alpha_src;
  }
};

struct EncodedWeight {
  double w;   ///< weight in [-1, 1]
  double phi; ///< server MZM half-angle, cos(2 phi) = w
};

struct EncodedActivation {
  double x;     ///< activation in [-1, 1]
  double theta; ///< client MZM half-angle, cos(2 theta) = x
};

/// Field amplitudes on the two differential rails, normalized so |a|^2 counts photons.
struct ChannelAmplitudes {
  std::complex<double> plus;
  std::complex<double> minus;

  double differential_power() const noexcept { return std::norm(plus) - std::norm(minus); }
  double total_power() const noexcept { return std::norm(plus) + std::norm(minus); }
};

/// Charges collected by one difference detector for one weight-activation product.
struct DetectionRecord {
  double q_det; ///< differential charge, photoelectrons
  double q_tot; ///< total absorbed charge, photoelectrons (sets shot noise)
  double n_tr;  ///< photons leaving the transmitter for this weight
};

/// Two-port microring: input coupling kappa1 = kappa2 + kappa_abs (critical coupling).
struct MrrParams {
  double kappa1;
  double kappa2;

  MrrParams(double kappa1, double kappa2);
  double kappa_abs() const noexcept { return kappa1 - kappa2; }
};

EncodedWeight encode_weight_mzm(double w);
EncodedActivation encode_activation_mzm(double x);

/// Server MZM followed by the 90 degree rail phase shift: (cos phi, sin phi) * sqrt(n_src).
ChannelAmplitudes mzm_split(double phi, double n_src = 1.0);

/// Client MZM transfer T(theta) = [[cos, i sin], [i sin, cos]] applied to the rails.
ChannelAmplitudes client_mix(const ChannelAmplitudes& a, double theta);

/// Ring detuning that encodes w; admissible range is [-kappa2/kappa1, 1).
double mrr_encode_detuning(double w, const MrrParams& p);
/// Normalized through-port charge (D^2 - k1 k2) / (D^2 + k1^2) for detuning D.
double mrr_weight_from_detuning(double detuning, const MrrParams& p);

/// Charge per unit w*x collected by the detector pair: n_src for incoherent
/// schemes, 2 alpha_x alpha_src for coherent detection.
double signal_gain(const Scheme& s, double n_src);

/// True when alpha_src <= 0.1 alpha_x, where the coherent charge formulas hold.
bool coherent_weak_signal(const Scheme& s, double n_src);

/// Propagates one weight and one activation through the scheme's optics.
///
/// Incoherent schemes are evaluated from the rail amplitudes (MZM split,
/// intensity modulators, client MZM), so q_det = w x n_src follows from the
/// optics rather than being asserted. The coherent scheme uses the
/// weak-signal homodyne expressions.
DetectionRecord transmit_detect(const Scheme& s, double w, double x, double n_src);

} // namespace netcast
