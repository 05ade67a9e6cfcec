#pragma once

#include "nscartan/types.hpp"

#include <compare>
#include <iosfwd>
#include <vector>

namespace nscartan {

// Integral binary quadratic form [A,B,C] = A*X^2 + B*X*Y + C*Y^2.
// Immutable value type; the discriminant is always recomputed.
struct QuadForm {
  Int a = 0;
  Int b = 0;
  Int c = 0;

  Int disc() const { return b * b - 4 * a * c; }
  bool is_posdef() const { return disc() < 0 && a > 0; }
  Int content() const;
  bool is_primitive() const { return content() == 1; }

  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

std::ostream& operator<<(std::ostream& os, const QuadForm& f);

// Element of SL2(Z); construction checks det = 1.
class Sl2Matrix {
public:
  Sl2Matrix() : m_(Mat2::Identity()) {}
  explicit Sl2Matrix(const Mat2& m);
  Sl2Matrix(Int a, Int b, Int c, Int d);

  static Sl2Matrix identity() { return Sl2Matrix(); }

  const Mat2& mat() const { return m_; }
  Int a() const { return m_(0, 0); }
  Int b() const { return m_(0, 1); }
  Int c() const { return m_(1, 0); }
  Int d() const { return m_(1, 1); }

  Sl2Matrix inverse() const { return Sl2Matrix(d(), -b(), -c(), a()); }

  friend Sl2Matrix operator*(const Sl2Matrix& x, const Sl2Matrix& y) {
    return Sl2Matrix(Mat2(x.m_ * y.m_));
  }
  friend bool operator==(const Sl2Matrix& x, const Sl2Matrix& y) {
    return x.m_ == y.m_;
  }

private:
  Mat2 m_;
};

// Right action of SL2(Z) on forms: act(act(f, M), N) = act(f, M*N).
// Preserves discriminant and positive definiteness.
QuadForm act(const QuadForm& f, const Sl2Matrix& m);

struct Reduction {
  QuadForm form;       // the unique reduced representative
  Sl2Matrix witness;   // act(input, witness) == form
};

// Gauss reduction of a positive definite form: |b| <= a <= c with b >= 0
// when |b| = a or a = c.
Reduction reduce(const QuadForm& f);

// All reduced positive definite forms of discriminant D, primitive and
// imprimitive, sorted lexicographically.  D must be negative and 0 or 1
// mod 4.
std::vector<QuadForm> class_reps(Int D);

}  // namespace nscartan
