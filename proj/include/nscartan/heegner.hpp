#pragma once

#include "nscartan/cartan.hpp"
#include "nscartan/rational.hpp"

#include <complex>
#include <map>
#include <vector>

namespace nscartan {

// The root z = (-B + i sqrt(|D|)) / 2A of a positive definite form, kept as
// exact data (re and im^2 are rational).
class SpecialPoint {
public:
  explicit SpecialPoint(const QuadForm& f);

  const QuadForm& form() const { return f_; }
  Rat re() const { return Rat(-f_.b, 2 * f_.a); }
  Rat im_sq() const { return Rat(-f_.disc(), Wide(4) * f_.a * f_.a); }
  std::complex<double> approx() const;

private:
  QuadForm f_;
};

SpecialPoint special_point(const QuadForm& f);

// The integral matrix [[(t-B)/2, -C],[A, (t+B)/2]] of trace t and
// determinant (t^2 - D)/4 attached to a form in Q_ns; it lies in M_ns and
// fixes the special point of f under the fractional-linear action.
// Requires t^2 = D (mod 4) (equivalently t = B mod 2).
Mat2 embedding_matrix(const QuadForm& f, Int tr_omega, const CartanContext& ctx);

// Index (D, s) of a special cycle; s is defined up to sign and stored
// canonically as min(s, 2p^2 - s).
struct CycleSymbol {
  Int D = 0;
  Int s = 0;

  friend auto operator<=>(const CycleSymbol&, const CycleSymbol&) = default;
};

// Finite rational linear combination of cycle symbols.  Symbols are
// canonicalized on insertion and zero coefficients are dropped.
class FormalCycle {
public:
  explicit FormalCycle(const CartanContext& ctx) : ctx_(&ctx) {}

  const CartanContext& ctx() const { return *ctx_; }

  CycleSymbol canonical(Int D, Int s) const;
  void add(Int D, Int s, const Rat& coeff);
  Rat coeff(Int D, Int s) const;

  size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }

  friend bool operator==(const FormalCycle& x, const FormalCycle& y) {
    return x.coeffs_ == y.coeffs_;
  }

private:
  const CartanContext* ctx_;
  std::map<CycleSymbol, Rat> coeffs_;
};

// Gamma_ns-class representatives supporting the cycle P_{D,s}.
std::vector<CartanForm> cycle_support(const CycleSymbol& sym, const CartanContext& ctx);

// Hecke operator T_ell on formal cycles, ell != p prime:
//   T_ell (D,s) = (D ell^2, s ell) + (D/ell) (D,s) + ell (D/ell^2, s/ell),
// the last term only when ell^2 | D and a compatible square root survives.
// Notes about dropped division terms are appended to `notes` when given.
FormalCycle hecke_T(Int ell, const FormalCycle& x, const CartanContext& ctx,
                    std::vector<std::string>* notes = nullptr);

// Atkin-Lehner action (D,s) -> (D,-s); the identity on canonical symbols.
FormalCycle atkin_lehner_W(const FormalCycle& x);

}  // namespace nscartan
