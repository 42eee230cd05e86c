#pragma once

#include <cstddef>
#include <vector>

namespace netcast {

/// Normalized time-frequency crosstalk kernel X_pq.
///
/// p offsets the wavelength channel (matrix row), q offsets the time step
/// (matrix column). Entries are stored densely for |p| <= range_p, |q| <= range_q.
class CrosstalkKernel {
public:
  /// Identity kernel (no crosstalk).
  CrosstalkKernel();
  CrosstalkKernel(int range_p, int range_q);

  static CrosstalkKernel identity() { return {}; }

  int range_p() const noexcept { return range_p_; }
  int range_q() const noexcept { return range_q_; }

  /// Zero outside the stored range.
  double at(int p, int q) const noexcept;
  void set(int p, int q, double value);

  bool is_identity() const noexcept;
  /// X_00 == 1 exactly.
  bool normalized() const noexcept;
  /// Largest |X_pq| over (p, q) != (0, 0).
  double max_off_diagonal() const noexcept;
  /// Kernel with the p and q axes exchanged (time and frequency roles swapped).
  CrosstalkKernel swapped() const;

private:
  std::size_t index(int p, int q) const noexcept;

  int range_p_;
  int range_q_;
  std::vector<double> entries_;
};

} // namespace netcast
