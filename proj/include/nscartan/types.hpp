#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nscartan {

using Int = std::int64_t;
using Wide = __int128;

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using Mat2 = Eigen::Matrix<Int, 2, 2>;

// Thrown when a bounded search or brute-force routine runs out of room.
// The message says which bound to raise.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

inline Int checked_narrow(Wide x) {
  if (x > Wide(INT64_MAX) || x < Wide(INT64_MIN))
    throw std::overflow_error("value does not fit in 64 bits");
  return static_cast<Int>(x);
}

inline Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("128-bit multiply overflow");
  return r;
}

inline Wide checked_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("128-bit add overflow");
  return r;
}

std::string wide_str(Wide x);

inline Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

inline Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Floor remainder, always in [0, m).
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Wide wide_mod_floor(Wide a, Wide m) {
  Wide r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace nscartan
