#include "nscartan/arith.hpp"

#include <algorithm>
#include <numeric>

namespace nscartan {

std::string wide_str(Wide x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  std::string s;
  while (x != 0) {
    int d = static_cast<int>(neg ? -(x % 10) : (x % 10));
    s.push_back(static_cast<char>('0' + d));
    x /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int mod_pow(Int base, Int exp, Int m) {
  Wide r = 1;
  Wide b = mod_floor(base, m);
  while (exp > 0) {
    if (exp & 1) r = (r * b) % m;
    b = (b * b) % m;
    exp >>= 1;
  }
  return static_cast<Int>(r);
}

Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return a < 0 ? -a : a;
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

Int mod_inv(Int a, Int m) {
  Int x, y;
  Int g = ext_gcd(mod_floor(a, m), m, x, y);
  if (g != 1) throw std::invalid_argument("mod_inv: not a unit");
  return mod_floor(x, m);
}

namespace {

Int kronecker2(Int a) {
  // (a/2): 0 for even a, +1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8)
  if (a % 2 == 0) return 0;
  Int r = mod_floor(a, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

}  // namespace

Int kronecker(Int a, Int n) {
  if (n == 0) throw std::invalid_argument("kronecker: n must be nonzero");
  Int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  while (n % 2 == 0) {
    Int k2 = kronecker2(a);
    if (k2 == 0) return 0;
    result *= k2;
    n /= 2;
  }
  // Jacobi symbol for odd n > 0
  a = mod_floor(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      Int r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

ResidueClass crt(const ResidueClass& r1, const ResidueClass& r2) {
  Int m1 = r1.modulus, m2 = r2.modulus;
  Int x, y;
  if (ext_gcd(m1, m2, x, y) != 1)
    throw std::invalid_argument("crt: moduli must be coprime");
  Int m = m1 * m2;
  // v = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
  Int t = mod_floor((r2.value - r1.value) % m2 * (x % m2) % m2, m2);
  return residue(r1.value + m1 * t, m);
}

Int sqrt_mod_prime(Int a, Int p) {
  a = mod_floor(a, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (mod_pow(a, (p - 1) / 2, p) != 1) return -1;
  if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  Int q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (mod_pow(z, (p - 1) / 2, p) != p - 1) ++z;
  Int m = s;
  Int c = mod_pow(z, q, p);
  Int t = mod_pow(a, q, p);
  Int r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    Int i = 0;
    Int t2 = t;
    while (t2 != 1) {
      t2 = static_cast<Int>(Wide(t2) * t2 % p);
      ++i;
    }
    Int b = mod_pow(c, Int(1) << (m - i - 1), p);
    m = i;
    c = static_cast<Int>(Wide(b) * b % p);
    t = static_cast<Int>(Wide(t) * c % p);
    r = static_cast<Int>(Wide(r) * b % p);
  }
  return r;
}

std::vector<ResidueClass> sqrt_mod_4p2(Int t, Int p) {
  if (!is_prime(p) || p == 2)
    throw std::invalid_argument("sqrt_mod_4p2: p must be an odd prime");
  const Int p2 = p * p;
  const Int four_p2 = 4 * p2;
  t = mod_floor(t, four_p2);

  // Parity branch: s even needs t = 0 (mod 4), s odd needs t = 1 (mod 4).
  std::vector<Int> parities;
  if (t % 4 == 0) parities.push_back(0);
  if (t % 4 == 1) parities.push_back(1);
  if (parities.empty()) return {};

  // Roots mod p^2.
  std::vector<Int> roots;
  Int tp = t % p2;
  if (tp == 0) {
    for (Int k = 0; k < p; ++k) roots.push_back(k * p);
  } else if (tp % p == 0) {
    // p || t: x^2 = t (mod p^2) forces p^2 | t, impossible here
  } else {
    Int r = sqrt_mod_prime(tp % p, p);
    if (r >= 0) {
      // Hensel lift to mod p^2: r' = r + p * ((t - r^2)/p) * (2r)^{-1}
      Int num = mod_floor((tp - r * r) / p, p);
      Int lift = mod_floor(r + p * (num * mod_inv(2 * r, p) % p), p2);
      roots.push_back(lift);
      roots.push_back(mod_floor(-lift, p2));
    }
  }

  std::vector<ResidueClass> out;
  for (Int parity : parities)
    for (Int r : roots) {
      // CRT across 2 and p^2: p^2 is odd so s = r + p^2*((parity - r) mod 2)
      Int s = r + p2 * mod_floor(parity - r, 2);
      out.push_back(residue(s, 2 * p2));
    }
  std::sort(out.begin(), out.end(),
            [](const ResidueClass& x, const ResidueClass& y) { return x.value < y.value; });
  out.erase(std::unique(out.begin(), out.end()), out.end());

  for (const ResidueClass& s : out)
    if (mod_floor(s.value * s.value - t, four_p2) != 0)
      throw std::logic_error("sqrt_mod_4p2: postcondition failed");
  return out;
}

Mat2 lift_sl2(const Mat2& mbar, Int m) {
  if (m <= 0) throw std::invalid_argument("lift_sl2: modulus must be positive");
  Mat2 id = Mat2::Identity();
  if (m == 1) return id;
  if (mbar(0, 0) * mbar(1, 1) - mbar(0, 1) * mbar(1, 0) == 1)
    return mbar;  // already an SL2(Z) lift of itself
  Int a = mod_floor(mbar(0, 0), m), b = mod_floor(mbar(0, 1), m);
  Int c = mod_floor(mbar(1, 0), m), d = mod_floor(mbar(1, 1), m);
  if (mod_floor(a * d - b * c, m) != 1)
    throw std::invalid_argument("lift_sl2: determinant is not 1 mod m");

  // Make the bottom row a coprime pair without changing it mod m.
  Int cc = c, dd = d;
  if (dd == 0) dd = m;
  Int guard = 0;
  while (std::gcd(cc, dd) != 1) {
    cc += m;
    if (++guard > 64 * m + 4096)
      throw std::logic_error("lift_sl2: coprime search stalled");
  }

  Int u, v;
  ext_gcd(dd, cc, u, v);  // u*dd + v*cc = 1
  Int det = a * dd - b * cc;
  Int k = (det - 1) / m;
  Mat2 out;
  out << a - m * k * u, b + m * k * v, cc, dd;
  if (out(0, 0) * out(1, 1) - out(0, 1) * out(1, 0) != 1)
    throw std::logic_error("lift_sl2: determinant correction failed");
  return out;
}

}  // namespace nscartan
