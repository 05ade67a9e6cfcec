#pragma once

#include "nscartan/rational.hpp"

#include <vector>

namespace nscartan {

using WideMat = Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic>;

// Exact determinant by fraction-free (Bareiss) elimination.
Wide det_exact(const IntMat& m);

// Leading principal minors m_1, ..., m_n.  Entries after the first zero
// minor are not meaningful (the Bareiss recursion needs nonzero pivots),
// so the vector is truncated at the first zero.
std::vector<Wide> leading_minors(const IntMat& m);

// Basis of the integer kernel {x : r x = 0} as matrix columns, computed by
// column echelon reduction.  The result is saturated (a basis of the full
// kernel lattice, not a finite-index sublattice).
IntMat kernel_basis(const IntMat& r);

struct Snf {
  std::vector<Int> divisors;  // diagonal d_1 | d_2 | ... | d_n, nonnegative
  IntMat uinv;                // inverse of the row transform: U G V = D
};

// Smith normal form of a square integer matrix, tracking the inverse row
// transform (needed to express discriminant-group generators).
Snf smith_form(const IntMat& g);

// Solve A X = B exactly over the rationals (A square nonsingular), by
// Cramer's rule on Bareiss determinants.
RatMat solve_rational(const IntMat& a, const IntMat& b);

// Characteristic polynomial coefficients (1, c1, ..., cn) of an integer
// matrix, by the Faddeev-LeVerrier recursion.  chi(x) = x^n + c1 x^{n-1} + ...
std::vector<Wide> char_poly(const IntMat& m);

// Signature (n_plus, n_minus) of a symmetric integer matrix: counts of
// positive and negative eigenvalues via Descartes' rule on the (real-rooted)
// characteristic polynomial.  No floating point.
std::pair<int, int> signature_exact(const IntMat& m);

// In-place size reduction of a positive definite Gram matrix together with
// the basis that produced it (columns of `basis`): greedy pairwise
// reductions plus norm sorting.  Norms only ever decrease.
void reduce_gram_basis(IntMat& gram, IntMat& basis);

// Integer vector z with z . u = gcd(u), built by folding ext_gcd over the
// nonzero entries.
IntVec gcd_combination(const IntVec& u);

}  // namespace nscartan
