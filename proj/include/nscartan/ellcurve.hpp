#pragma once

#include "nscartan/cartan.hpp"

#include <map>
#include <string>
#include <vector>

namespace nscartan {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// over Q with nonzero discriminant.
struct WeierstrassCurve {
  Int a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  Int b2() const { return a1 * a1 + 4 * a2; }
  Int b4() const { return 2 * a4 + a1 * a3; }
  Int b6() const { return a3 * a3 + 4 * a6; }
  Int b8() const { return (b2() * b6() - b4() * b4()) / 4; }
  Wide discriminant() const;
  bool good_reduction(Int ell) const { return wide_mod_floor(discriminant(), ell) != 0; }
};

WeierstrassCurve make_curve(Int a1, Int a2, Int a3, Int a4, Int a6);

// Number of points of the reduction over F_ell, including infinity.
// Counts per-x quadratic solutions after completing the square (ell odd);
// ell = 2 enumerates directly.
Int count_points(const WeierstrassCurve& e, Int ell);

// Trace of Frobenius a_ell = ell + 1 - #E(F_ell); requires good reduction
// and ell <= 10^4.  Satisfies |a_ell| <= 2 sqrt(ell).
Int a_ell(const WeierstrassCurve& e, Int ell);

// Heegner position table D -> m(D): every D must be negative with
// kronecker(D, p) = -1.
struct HeegnerTable {
  std::map<Int, Int> m;
};

HeegnerTable make_heegner_table(const std::map<Int, Int>& entries,
                                const CartanContext& ctx);

struct HeckeCheck {
  Int D = 0;
  Int ell = 0;
  Int lhs = 0;  // a_ell(E) * m(D)
  Int rhs = 0;  // m(D ell^2) + (D/ell) m(D) + ell * m(D/ell^2)
  bool ok = false;
};

struct HeckeReport {
  std::vector<HeckeCheck> checks;
  Int skipped = 0;

  Int failures() const;
};

// Check a_ell(E) m(D) = m(D ell^2) + (D/ell) m(D) + ell m(D/ell^2) for
// every prime ell <= ell_max (ell != p) and every D in the table whose
// required entries are present.  D/ell^2 outside the discriminant lattice
// (2 or 3 mod 4) contributes zero; a required entry missing from the table
// skips the pair and counts it.
HeckeReport verify_hecke_table(const HeegnerTable& tbl, const WeierstrassCurve& e,
                               Int ell_max, const CartanContext& ctx);

}  // namespace nscartan
