#include "netcast/kernel.hpp"

#include "check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace netcast {

CrosstalkKernel::CrosstalkKernel() : CrosstalkKernel(0, 0) {}

CrosstalkKernel::CrosstalkKernel(int range_p, int range_q)
    : range_p_(range_p), range_q_(range_q) {
  if (range_p < 0 || range_q < 0)
    detail::config_error("kernel ranges must be nonnegative, got ", range_p, ", ", range_q);
  entries_.assign(static_cast<std::size_t>(2 * range_p + 1) * static_cast<std::size_t>(2 * range_q + 1),
                  0.0);
  entries_[index(0, 0)] = 1.0;
}

std::size_t CrosstalkKernel::index(int p, int q) const noexcept {
  return static_cast<std::size_t>(p + range_p_) * static_cast<std::size_t>(2 * range_q_ + 1) +
         static_cast<std::size_t>(q + range_q_);
}

double CrosstalkKernel::at(int p, int q) const noexcept {
  if (std::abs(p) > range_p_ || std::abs(q) > range_q_)
    return 0.0;
  return entries_[index(p, q)];
}

void CrosstalkKernel::set(int p, int q, double value) {
  if (std::abs(p) > range_p_ || std::abs(q) > range_q_)
    detail::config_error("kernel entry (", p, ", ", q, ") outside range (", range_p_, ", ",
                         range_q_, ")");
  entries_[index(p, q)] = value;
}

bool CrosstalkKernel::is_identity() const noexcept {
  return normalized() && max_off_diagonal() == 0.0;
}

bool CrosstalkKernel::normalized() const noexcept { return at(0, 0) == 1.0; }

double CrosstalkKernel::max_off_diagonal() const noexcept {
  double m = 0.0;
  for (int p = -range_p_; p <= range_p_; ++p)
    for (int q = -range_q_; q <= range_q_; ++q)
      if (p != 0 || q != 0)
        m = std::max(m, std::abs(at(p, q)));
  return m;
}

CrosstalkKernel CrosstalkKernel::swapped() const {
  CrosstalkKernel out(range_q_, range_p_);
  for (int p = -range_p_; p <= range_p_; ++p)
    for (int q = -range_q_; q <= range_q_; ++q)
      out.set(q, p, at(p, q));
  return out;
}

} // namespace netcast
