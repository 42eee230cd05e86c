#pragma once

#include "netcast/errors.hpp"

#include <sstream>
#include <string>

namespace netcast::detail {

template <class... Parts>
std::string concat(const Parts&... parts) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << parts);
  return os.str();
}

template <class... Parts>
[[noreturn]] void domain_error(const Parts&... parts) {
  throw DomainError(concat(parts...));
}

template <class... Parts>
[[noreturn]] void config_error(const Parts&... parts) {
  throw ConfigError(concat(parts...));
}

template <class... Parts>
[[noreturn]] void io_error(const Parts&... parts) {
  throw IoError(concat(parts...));
}

} // namespace netcast::detail
