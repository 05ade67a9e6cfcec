#pragma once

#include "nscartan/arith.hpp"
#include "nscartan/qforms.hpp"

#include <mutex>
#include <optional>
#include <vector>

namespace nscartan {

// The pair (p, eps): p an odd prime, eps a non-square mod p with
// eps = 1 (mod 4).  eps is stored as its canonical representative in
// [0, 4p^2); all congruence structure of the non-split Cartan order
// derives from this pair.
class CartanContext {
public:
  CartanContext(Int p, Int eps);

  CartanContext(const CartanContext&) = delete;
  CartanContext& operator=(const CartanContext&) = delete;

  Int p() const { return p_; }
  Int eps() const { return eps_; }
  Int p2() const { return p2_; }
  Int two_p2() const { return 2 * p2_; }
  Int four_p2() const { return 4 * p2_; }
  Int eps_inv() const { return eps_inv_; }  // inverse of eps mod 4p^2

  // A determinant-1 integer matrix in Gamma_ns^+ \ Gamma_ns, found by a
  // bounded search over small entries and cached.  Represents the
  // Atkin-Lehner involution W_p.
  const Sl2Matrix& atkin_lehner_rep(Int search_bound = 64) const;

private:
  Int p_, eps_, p2_, eps_inv_;
  mutable std::once_flag al_once_;
  mutable std::optional<Sl2Matrix> al_;
};

// Congruence membership for integer matrices.
// M_ns:  a = d, b*eps = c (mod p).
// M_ns^+ adds the coset a = -d, b*eps = -c (mod p).
// The Gamma variants additionally require det = 1 (the determinant-1
// subgroup is what acts on forms and on the upper half plane).
bool in_mns(const Mat2& m, const CartanContext& ctx);
bool in_mns_plus(const Mat2& m, const CartanContext& ctx);
bool in_gamma_ns(const Mat2& m, const CartanContext& ctx);
bool in_gamma_ns_plus(const Mat2& m, const CartanContext& ctx);

// A quadratic form lying in Q_ns: B = 0 and A + C*eps = 0 (mod p).
class CartanForm {
public:
  CartanForm(const QuadForm& f, const CartanContext& ctx);

  const QuadForm& form() const { return f_; }
  const CartanContext& ctx() const { return *ctx_; }

private:
  QuadForm f_;
  const CartanContext* ctx_;
};

bool in_qns(const QuadForm& f, const CartanContext& ctx);

// The invariant s in Z/2p^2 with s = A - C*eps (mod p^2) and s = B (mod 2),
// constant on Gamma_ns orbits.  Requires gcd(disc, p) = 1; always satisfies
// s^2 = eps * disc (mod 4p^2).
ResidueClass s_invariant(const CartanForm& f);

// Move f into the class set Q_{ns,D,s}: returns g = act(f, M) with
// s_invariant(g) = s, where M lifts a conjugator found in SL2(F_p).
// Requires s^2 = eps * disc(f) (mod 4p^2) and gcd(disc, p) = 1.
std::pair<CartanForm, Sl2Matrix> to_cartan_class(const QuadForm& f, Int s,
                                                 const CartanContext& ctx);

// Representatives of Q_{ns,D,s} / Gamma_ns for D < 0: the image of
// class_reps(D) under to_cartan_class.  Pairwise inequivalent because
// distinct SL2(Z) classes stay distinct.
std::vector<CartanForm> cartan_class_reps(Int D, Int s, const CartanContext& ctx);

Sl2Matrix atkin_lehner_rep(const CartanContext& ctx);

}  // namespace nscartan
