#pragma once

#include "nscartan/types.hpp"

#include <vector>

namespace nscartan {

// Residue class with a fixed modulus; value is kept in [0, modulus).
struct ResidueClass {
  Int value = 0;
  Int modulus = 1;

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

inline ResidueClass residue(Int v, Int m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  return ResidueClass{mod_floor(v, m), m};
}

bool is_prime(Int n);

Int mod_pow(Int base, Int exp, Int m);

// Inverse of a modulo m; requires gcd(a, m) = 1.
Int mod_inv(Int a, Int m);

// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
Int ext_gcd(Int a, Int b, Int& x, Int& y);

// Kronecker symbol (a/n), the standard extension of the Legendre symbol.
// n = 0 is rejected.
Int kronecker(Int a, Int n);

// CRT for coprime moduli: the class mod m1*m2 matching both inputs.
ResidueClass crt(const ResidueClass& r1, const ResidueClass& r2);

// Square root of a modulo an odd prime p (Tonelli-Shanks).
// Returns -1 when a is a non-residue; requires gcd(a, p) = 1 or a = 0.
Int sqrt_mod_prime(Int a, Int p);

// All s in Z/2p^2 with s^2 = t (mod 4p^2), sorted ascending.  Well defined
// because (s + 2p^2)^2 = s^2 (mod 4p^2).  Solved by CRT: the parity of s
// fixes s^2 mod 4, and the mod-p^2 part is a Tonelli root lifted by Hensel.
std::vector<ResidueClass> sqrt_mod_4p2(Int t, Int p);

// Lift a matrix with det = 1 (mod m) to an integer matrix of determinant
// exactly 1 reducing to the input mod m.  Classical row correction: make the
// bottom row coprime by adding multiples of m, then fix the top row.
Mat2 lift_sl2(const Mat2& mbar, Int m);

}  // namespace nscartan
