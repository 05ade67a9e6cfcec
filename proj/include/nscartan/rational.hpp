#pragma once

#include "nscartan/types.hpp"

#include <iosfwd>

namespace nscartan {

// Exact rational number, always normalized: den > 0, gcd(num, den) = 1.
// Backed by 128-bit integers; arithmetic throws std::overflow_error rather
// than wrap.
class Rat {
public:
  Rat() : num_(0), den_(1) {}
  Rat(Int n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(Wide n, Wide d) : num_(n), den_(d) { normalize(); }

  Wide num() const { return num_; }
  Wide den() const { return den_; }
  Int num64() const { return checked_narrow(num_); }
  Int den64() const { return checked_narrow(den_); }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rat operator-() const { return Rat(-num_, den_); }

  friend Rat operator+(const Rat& x, const Rat& y) {
    Wide g = wide_gcd(x.den_, y.den_);
    Wide xd = x.den_ / g;
    Wide yd = y.den_ / g;
    return Rat(checked_add(checked_mul(x.num_, yd), checked_mul(y.num_, xd)),
               checked_mul(checked_mul(xd, g), yd));
  }
  friend Rat operator-(const Rat& x, const Rat& y) { return x + (-y); }
  friend Rat operator*(const Rat& x, const Rat& y) {
    Wide g1 = wide_gcd(wide_abs(x.num_), y.den_);
    Wide g2 = wide_gcd(wide_abs(y.num_), x.den_);
    return Rat(checked_mul(x.num_ / g1, y.num_ / g2),
               checked_mul(x.den_ / g2, y.den_ / g1));
  }
  friend Rat operator/(const Rat& x, const Rat& y) {
    if (y.num_ == 0) throw std::domain_error("rational division by zero");
    return x * Rat(y.den_, y.num_);
  }

  Rat& operator+=(const Rat& y) { return *this = *this + y; }
  Rat& operator-=(const Rat& y) { return *this = *this - y; }
  Rat& operator*=(const Rat& y) { return *this = *this * y; }
  Rat& operator/=(const Rat& y) { return *this = *this / y; }

  friend bool operator==(const Rat& x, const Rat& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rat& x, const Rat& y) { return !(x == y); }
  friend bool operator<(const Rat& x, const Rat& y) {
    return checked_mul(x.num_, y.den_) < checked_mul(y.num_, x.den_);
  }
  friend bool operator>(const Rat& x, const Rat& y) { return y < x; }
  friend bool operator<=(const Rat& x, const Rat& y) { return !(y < x); }
  friend bool operator>=(const Rat& x, const Rat& y) { return !(x < y); }

  Wide floor() const {
    Wide q = num_ / den_;
    if (num_ < 0 && num_ % den_ != 0) --q;
    return q;
  }

  // Representative of this value mod 1, in [0, 1).
  Rat mod1() const { return *this - Rat(floor(), 1); }

  double approx() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    if (den_ == 1) return wide_str(num_);
    return wide_str(num_) + "/" + wide_str(den_);
  }

private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Wide g = wide_gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Wide num_;
  Wide den_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

}  // namespace nscartan

namespace Eigen {

template <>
struct NumTraits<nscartan::Rat> : GenericNumTraits<nscartan::Rat> {
  using Real = nscartan::Rat;
  using NonInteger = nscartan::Rat;
  using Nested = nscartan::Rat;
  using Literal = nscartan::Int;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 16,
    MulCost = 16,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
