#include "nscartan/qforms.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace nscartan {

Int QuadForm::content() const {
  Int g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
  return g == 0 ? 0 : g;
}

std::ostream& operator<<(std::ostream& os, const QuadForm& f) {
  return os << "[" << f.a << "," << f.b << "," << f.c << "]";
}

Sl2Matrix::Sl2Matrix(const Mat2& m) : m_(m) {
  if (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) != 1)
    throw std::invalid_argument("Sl2Matrix: determinant must be 1");
}

Sl2Matrix::Sl2Matrix(Int a, Int b, Int c, Int d) {
  m_ << a, b, c, d;
  if (a * d - b * c != 1)
    throw std::invalid_argument("Sl2Matrix: determinant must be 1");
}

QuadForm act(const QuadForm& f, const Sl2Matrix& m) {
  Wide A = f.a, B = f.b, C = f.c;
  Wide al = m.a(), be = m.b(), ga = m.c(), de = m.d();
  Wide a2 = A * al * al + B * al * ga + C * ga * ga;
  Wide b2 = 2 * A * al * be + B * (al * de + be * ga) + 2 * C * ga * de;
  Wide c2 = A * be * be + B * be * de + C * de * de;
  return QuadForm{checked_narrow(a2), checked_narrow(b2), checked_narrow(c2)};
}

namespace {

Int floor_div(Int x, Int y) {  // y > 0
  Int q = x / y;
  if (x % y != 0 && x < 0) --q;
  return q;
}

}  // namespace

Reduction reduce(const QuadForm& f) {
  if (!f.is_posdef())
    throw std::invalid_argument("reduce: form must be positive definite");
  QuadForm g = f;
  Sl2Matrix w = Sl2Matrix::identity();
  const Sl2Matrix swap(0, -1, 1, 0);  // [A,B,C] -> [C,-B,A]
  for (int guard = 0; ; ++guard) {
    if (guard > 10000) throw std::logic_error("reduce: did not terminate");
    // Shear b into (-a, a]: the unique t with -a < b + 2at <= a.
    Int t = floor_div(g.a - g.b, 2 * g.a);
    if (t != 0) {
      Sl2Matrix shear(1, t, 0, 1);
      g = act(g, shear);
      w = w * shear;
    }
    if (g.a > g.c) {
      g = act(g, swap);
      w = w * swap;
      continue;
    }
    // Here b is in (-a, a] and a <= c; only the a = c boundary sign remains.
    if (g.b < 0 && g.a == g.c) {
      g = act(g, swap);
      w = w * swap;
    }
    break;
  }
  if (act(f, w) != g) throw std::logic_error("reduce: witness check failed");
  return Reduction{g, w};
}

std::vector<QuadForm> class_reps(Int D) {
  if (D >= 0 || mod_floor(D, 4) > 1)
    throw std::invalid_argument("class_reps: D must be negative with D = 0,1 (mod 4)");
  std::vector<QuadForm> out;
  for (Int a = 1; 3 * a * a <= -D; ++a) {
    for (Int b = -a; b <= a; ++b) {
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && (b == -a || a == c)) continue;  // tie-breaking
      out.push_back(QuadForm{a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nscartan
