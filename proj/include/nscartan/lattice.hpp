#pragma once

#include "nscartan/cartan.hpp"
#include "nscartan/intlinalg.hpp"
#include "nscartan/rational.hpp"

#include <optional>
#include <vector>

namespace nscartan {

// Even lattice given by an integral Gram matrix (symmetric, even diagonal,
// nonzero determinant).  Rank 0 is allowed (determinant 1).  For lattices
// living inside the space of binary quadratic forms, `coords` carries the
// basis vectors as (A,B,C) rows.
class EvenLattice {
public:
  explicit EvenLattice(IntMat gram,
                       std::optional<Eigen::Matrix<Int, Eigen::Dynamic, 3>> coords =
                           std::nullopt);

  Eigen::Index rank() const { return gram_.rows(); }
  const IntMat& gram() const { return gram_; }
  Wide det() const { return det_; }
  const std::optional<Eigen::Matrix<Int, Eigen::Dynamic, 3>>& coords() const {
    return coords_;
  }

  // Norm form q(x) = x^T G x / 2, an integer for even lattices.
  Wide norm(const IntVec& x) const;
  Wide pairing(const IntVec& x, const IntVec& y) const;

private:
  IntMat gram_;
  Wide det_;
  std::optional<Eigen::Matrix<Int, Eigen::Dynamic, 3>> coords_;
};

// Finite quadratic group (L^vee/L, q mod 1) presented by invariant factors
// d_1 | d_2 | ... (only nontrivial ones kept) and the values of the form on
// the generators: pairing(i,i) = q(g_i) mod 1, pairing(i,j) = b(g_i,g_j)
// mod 1.
class DiscriminantForm {
public:
  DiscriminantForm(std::vector<Int> divisors, RatMat pairing);

  static DiscriminantForm trivial();
  static DiscriminantForm cyclic(Int n, const Rat& q_of_generator);

  const std::vector<Int>& divisors() const { return divisors_; }
  Eigen::Index ngens() const { return static_cast<Eigen::Index>(divisors_.size()); }
  Wide order() const;

  // q and b on an element given by generator exponents, reduced mod 1.
  Rat q(const std::vector<Int>& x) const;
  Rat bilinear(const std::vector<Int>& x, const std::vector<Int>& y) const;

  // Mixed-radix iteration over all group elements; start with a zero vector
  // of size ngens() and call until false.
  bool next_element(std::vector<Int>& x) const;

private:
  std::vector<Int> divisors_;
  RatMat pairing_;
};

// The rank-3 lattice L_ns of the context, with basis (p^2,0,0), (0,2p,0),
// (eps*p,0,p) in (A,B,C) coordinates and Gram [[0,0,-p],[0,2,0],[-p,0,-2eps]].
// Signature (2,1), determinant -2p^2.
EvenLattice build_lns(const CartanContext& ctx);

// Dual basis of L in L-coordinates: the columns of gram^{-1}.
RatMat dual_lattice(const EvenLattice& l);

// The dual basis mapped through the (A,B,C) coordinate embedding; requires
// coords() and integrality of the images.
std::vector<QuadForm> dual_coords_as_forms(const EvenLattice& l);

DiscriminantForm disc_form(const EvenLattice& l);

// Class of a dual vector of L_ns in Z/2p^2: CRT of (B mod 2, A - C*eps mod
// p^2).  Kernel is exactly L_ns.  Rejects triples outside L_ns^vee.
ResidueClass dual_class(const QuadForm& x, const CartanContext& ctx);

// Milgram signature sigma mod 8: sum over the group of exp(2 pi i q(x))
// equals sqrt(|G|) exp(2 pi i sigma / 8).  The phase is evaluated in
// floating point; rounding further than 0.1 from an eighth is an error.
int gauss_sum_signature(const DiscriminantForm& df);

struct DiscFormIso {
  bool isomorphic = false;
  // images of the first form's generators in the second, as exponent
  // vectors; empty unless isomorphic
  std::vector<std::vector<Int>> images;
};

// Group isomorphism preserving q, by brute force: unit multipliers for
// cyclic groups, generator images in general (small groups only).
DiscFormIso disc_form_isomorphic(const DiscriminantForm& df1,
                                 const DiscriminantForm& df2);

// The standard even unimodular lattices.
EvenLattice e8_lattice();
EvenLattice hyperbolic_plane();

EvenLattice direct_sum(const EvenLattice& l1, const EvenLattice& l2);

struct HyperbolicSplit {
  IntVec e, f;            // q(e) = q(f) = 0, beta(e,f) = 1
  IntMat embedding;       // columns: complement basis in ambient coordinates
  EvenLattice complement;
};

// Split off a hyperbolic plane U from an indefinite lattice: find a
// primitive isotropic vector with unimodular pairing (sup-norm boxes of
// growing radius, lexicographic), complete it to U, and return the
// orthogonal complement with its basis reduced.  Certifies rank, the
// determinant relation det(K) = -det(M), and disc-form isomorphism.
HyperbolicSplit hyperbolic_split(const EvenLattice& m, Int bound = 10);

// The rank-9 positive definite stabilization: split U off L_ns + E8.
// Output is even, positive definite, determinant 2p^2, disc form
// isomorphic to that of L_ns.
EvenLattice stabilize_to_posdef(const CartanContext& ctx, Int bound = 10);

// Exact signature (n_plus, n_minus) of the Gram matrix.
std::pair<int, int> signature(const EvenLattice& l);

// Positive definiteness certified by leading principal minor positivity.
bool is_positive_definite(const EvenLattice& l);

}  // namespace nscartan
