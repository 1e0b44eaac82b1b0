#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace penta {

using Complex = std::complex<double>;
using Label = std::uint32_t;

// Error codes shared between the C++ exceptions and the C API.
enum class Errc : int {
  ok = 0,
  invalid_label = 1,
  shape_mismatch = 2,
  empty_module = 3,
  contraction_pair = 4,
  weight = 5,
  invalid_cocycle = 6,
  group_table = 7,
  range = 8,
  unsupported = 9,
  singular_associator = 10,
  construction = 11,
  parse = 12,
  validation = 13,
  io = 14,
  options = 15,
  internal = 16,
};

class PentaError : public std::runtime_error {
 public:
  PentaError(Errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw PentaError(code, msg);
}

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace penta
