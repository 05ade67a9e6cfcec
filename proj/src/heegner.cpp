#include "nscartan/heegner.hpp"

#include <cmath>

namespace nscartan {

SpecialPoint::SpecialPoint(const QuadForm& f) : f_(f) {
  if (!f.is_posdef())
    throw std::invalid_argument("SpecialPoint: form must be positive definite");
}

std::complex<double> SpecialPoint::approx() const {
  double a = static_cast<double>(f_.a);
  return {-static_cast<double>(f_.b) / (2 * a),
          std::sqrt(static_cast<double>(-f_.disc())) / (2 * a)};
}

SpecialPoint special_point(const QuadForm& f) { return SpecialPoint(f); }

Mat2 embedding_matrix(const QuadForm& f, Int tr_omega, const CartanContext& ctx) {
  if (!in_qns(f, ctx))
    throw std::invalid_argument("embedding_matrix: form is not in Q_ns");
  if (mod_floor(tr_omega - f.b, 2) != 0)
    throw std::invalid_argument("embedding_matrix: trace parity mismatch");
  Mat2 m;
  m << (tr_omega - f.b) / 2, -f.c, f.a, (tr_omega + f.b) / 2;
  if (m(0, 0) + m(1, 1) != tr_omega ||
      m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) != (tr_omega * tr_omega - f.disc()) / 4)
    throw std::logic_error("embedding_matrix: trace/determinant check failed");
  if (!in_mns(m, ctx))
    throw std::logic_error("embedding_matrix: output not in M_ns");
  return m;
}

CycleSymbol FormalCycle::canonical(Int D, Int s) const {
  const Int n = ctx_->two_p2();
  if (mod_floor(D, ctx_->p()) == 0)
    throw std::invalid_argument("CycleSymbol: D must be prime to p");
  s = mod_floor(s, n);
  s = std::min(s, n - s);
  Wide cond = wide_mod_floor(Wide(s) * s - Wide(ctx_->eps()) * D, ctx_->four_p2());
  if (cond != 0)
    throw std::invalid_argument("CycleSymbol: s^2 != eps*D (mod 4p^2)");
  return CycleSymbol{D, s};
}

void FormalCycle::add(Int D, Int s, const Rat& coeff) {
  if (coeff.is_zero()) return;
  CycleSymbol sym = canonical(D, s);
  Rat& slot = coeffs_[sym];
  slot += coeff;
  if (slot.is_zero()) coeffs_.erase(sym);
}

Rat FormalCycle::coeff(Int D, Int s) const {
  auto it = coeffs_.find(canonical(D, s));
  return it == coeffs_.end() ? Rat() : it->second;
}

std::vector<CartanForm> cycle_support(const CycleSymbol& sym, const CartanContext& ctx) {
  return cartan_class_reps(sym.D, sym.s, ctx);
}

FormalCycle hecke_T(Int ell, const FormalCycle& x, const CartanContext& ctx,
                    std::vector<std::string>* notes) {
  if (ell == ctx.p() || ell < 2 || !is_prime(ell))
    throw std::invalid_argument("hecke_T: ell must be a prime different from p");
  FormalCycle out(ctx);
  for (const auto& [sym, c] : x) {
    out.add(sym.D * ell * ell, sym.s * ell, c);
    Int chi = kronecker(sym.D, ell);
    if (chi != 0) out.add(sym.D, sym.s, Rat(chi) * c);
    if (sym.D % (ell * ell) == 0) {
      Int dprime = sym.D / (ell * ell);
      // s' must satisfy s'^2 = eps*D' (mod 4p^2) and ell*s' = +-s (mod 2p^2)
      bool placed = false;
      Int target = checked_narrow(wide_mod_floor(Wide(ctx.eps()) * dprime, ctx.four_p2()));
      for (const ResidueClass& r : sqrt_mod_4p2(target, ctx.p())) {
        Int ls = mod_floor(ell * r.value, ctx.two_p2());
        if (ls == sym.s || ctx.two_p2() - ls == sym.s) {
          out.add(dprime, r.value, Rat(ell) * c);
          placed = true;
          break;
        }
      }
      if (!placed && notes)
        notes->push_back("T_" + std::to_string(ell) + ": dropped empty division term at D=" +
                         std::to_string(sym.D));
    }
  }
  return out;
}

FormalCycle atkin_lehner_W(const FormalCycle& x) {
  FormalCycle out(x.ctx());
  for (const auto& [sym, c] : x) out.add(sym.D, -sym.s, c);
  return out;
}

}  // namespace nscartan
