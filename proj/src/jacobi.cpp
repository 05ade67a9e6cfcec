#include "nscartan/jacobi.hpp"

#include <algorithm>

namespace nscartan {

Int CoeffTable::canonical_s(Int s) const {
  Int n = ctx_->two_p2();
  s = mod_floor(s, n);
  return std::min(s, n - s);
}

Int CoeffTable::disc_of(const Rat& m) const {
  Rat d = -m * Rat(ctx_->four_p2());
  if (!d.is_integer())
    throw std::invalid_argument("CoeffTable: -4p^2 m is not an integer at this index");
  return d.num64();
}

void CoeffTable::set(const Rat& m, Int s, const Rat& value) {
  if (m < Rat(0)) throw std::invalid_argument("CoeffTable: m must be nonnegative");
  Int sc = canonical_s(s);
  if (!value.is_zero() && m > Rat(0)) {
    Int d = disc_of(m);
    Wide cond = wide_mod_floor(Wide(sc) * sc - Wide(ctx_->eps()) * d, ctx_->four_p2());
    if (cond != 0)
      throw std::invalid_argument("CoeffTable: s^2 != eps*D (mod 4p^2) at a nonzero entry");
  }
  entries_[{m, sc}] = value;
}

bool CoeffTable::has(const Rat& m, Int s) const {
  return entries_.count({m, canonical_s(s)}) > 0;
}

Rat CoeffTable::coeff(const Rat& m, Int s) const {
  auto it = entries_.find({m, canonical_s(s)});
  return it == entries_.end() ? Rat() : it->second;
}

namespace {

// beta(s) = s^2 eps^{-1} / 4p^2 mod 1, canonical representative in [0,1).
Rat beta_class(Int s, const CartanContext& ctx) {
  Int sc = mod_floor(s, ctx.two_p2());
  return Rat(checked_mul(Wide(sc) * sc, ctx.eps_inv()), ctx.four_p2()).mod1();
}

}  // namespace

ReindexResult reindex_jacobi_to_vv(Int n, Int s, const CartanContext& ctx) {
  Rat beta = beta_class(s, ctx);
  Rat m = Rat(n) - beta;
  if (m < Rat(0))
    throw std::invalid_argument("reindex_jacobi_to_vv: n < beta(s)");
  Int sc = mod_floor(s, ctx.two_p2());
  sc = std::min(sc, ctx.two_p2() - sc);
  return ReindexResult{m, sc, m > Rat(0)};
}

Int reindex_vv_to_jacobi(const Rat& m, Int s, const CartanContext& ctx) {
  Rat n = m + beta_class(s, ctx);
  if (!n.is_integer())
    throw std::invalid_argument("reindex_vv_to_jacobi: index is not integral");
  return n.num64();
}

CoeffTable assemble_series(const HeegnerTable& tbl, const CartanContext& ctx) {
  CoeffTable out(ctx);
  for (const auto& [D, mD] : tbl.m) {
    if (kronecker(D, ctx.p()) != -1)
      throw std::invalid_argument("assemble_series: table has D with (D/p) != -1");
    Rat m(-D, ctx.four_p2());
    Int target = checked_narrow(wide_mod_floor(Wide(ctx.eps()) * D, ctx.four_p2()));
    std::vector<ResidueClass> roots = sqrt_mod_4p2(target, ctx.p());
    if (roots.empty())
      throw std::logic_error("assemble_series: no square root for an inert D");
    for (const ResidueClass& s : roots) out.set(m, s.value, Rat(mD));
  }
  return out;
}

SupportReport validate_support(const CoeffTable& tbl) {
  SupportReport rep;
  const CartanContext& ctx = tbl.ctx();
  bool any_nonzero = false;
  for (const auto& [key, value] : tbl) {
    const auto& [m, s] = key;
    if (s < 0 || s > ctx.p2()) {
      rep.symmetry_ok = false;
      rep.violations.push_back("non-canonical s = " + std::to_string(s));
    }
    if (value.is_zero()) continue;
    any_nonzero = true;
    if (m > Rat(0)) {
      Rat d = -m * Rat(ctx.four_p2());
      bool ok = d.is_integer();
      if (ok) {
        Int D = d.num64();
        ok = wide_mod_floor(Wide(s) * s - Wide(ctx.eps()) * D, ctx.four_p2()) == 0;
      }
      if (!ok) {
        rep.support_ok = false;
        rep.violations.push_back("entry at m=" + m.str() + ", s=" + std::to_string(s) +
                                 " violates the square-root condition");
      }
    }
    if (mod_floor(s, ctx.p()) != 0) rep.hperp_supported = false;
  }
  if (!any_nonzero) rep.hperp_supported = true;  // vacuous
  return rep;
}

Int CoeffHeckeReport::failures() const {
  Int n = 0;
  for (const auto& c : checks)
    if (!c.ok) ++n;
  return n;
}

CoeffHeckeReport verify_coeff_hecke(const CoeffTable& tbl, const WeierstrassCurve& e,
                                    Int ell, const CartanContext& ctx) {
  if (ell == ctx.p()) throw std::invalid_argument("verify_coeff_hecke: ell = p");
  CoeffHeckeReport rep;
  Int a = a_ell(e, ell);
  for (const auto& [key, c] : tbl) {
    const auto& [m, s] = key;
    Rat m_big = m * Rat(ell * ell);
    Int s_big = ell * s;
    if (!tbl.has(m_big, s_big)) {
      ++rep.skipped;
      continue;
    }
    Int D = tbl.disc_of(m);
    Rat division;
    if (D % (ell * ell) == 0) {
      Int dprime = D / (ell * ell);
      if (mod_floor(dprime, 4) <= 1) {
        Rat m_small = m / Rat(ell * ell);
        // s' with ell s' = +-s (mod 2p^2) and s'^2 = eps D' (mod 4p^2)
        Int target = checked_narrow(wide_mod_floor(Wide(ctx.eps()) * dprime, ctx.four_p2()));
        bool found = false, missing = false;
        for (const ResidueClass& r : sqrt_mod_4p2(target, ctx.p())) {
          Int ls = mod_floor(ell * r.value, ctx.two_p2());
          Int cs = std::min(ls, ctx.two_p2() - ls);
          if (cs == s) {
            if (!tbl.has(m_small, r.value))
              missing = true;
            else
              division = Rat(ell) * tbl.coeff(m_small, r.value);
            found = true;
            break;
          }
        }
        (void)found;
        if (missing) {
          ++rep.skipped;
          continue;
        }
      }
    }
    CoeffHeckeCheck chk;
    chk.m = m;
    chk.s = s;
    chk.lhs = Rat(a) * c;
    chk.rhs = tbl.coeff(m_big, s_big) + Rat(kronecker(D, ell)) * c + division;
    chk.ok = chk.lhs == chk.rhs;
    rep.checks.push_back(chk);
  }
  return rep;
}

ClassicalCoeffTable::ClassicalCoeffTable(Int index) : index_(index) {
  if (index <= 0) throw std::invalid_argument("ClassicalCoeffTable: index must be positive");
}

std::pair<Wide, Int> ClassicalCoeffTable::key(Int n, Int r) const {
  Int two_n = 2 * index_;
  Int rc = mod_floor(r, two_n);
  rc = std::min(rc, two_n - rc);
  Wide disc = Wide(r) * r - Wide(4) * index_ * n;
  return {disc, rc};
}

void ClassicalCoeffTable::set(Int n, Int r, const Rat& value) {
  auto k = key(n, r);
  auto it = entries_.find(k);
  if (it != entries_.end() && it->second != value)
    throw std::invalid_argument("ClassicalCoeffTable: inconsistent duplicate entry");
  entries_[k] = value;
}

bool ClassicalCoeffTable::has(Int n, Int r) const { return entries_.count(key(n, r)) > 0; }

Rat ClassicalCoeffTable::coeff(Int n, Int r) const {
  auto it = entries_.find(key(n, r));
  return it == entries_.end() ? Rat() : it->second;
}

bool is_fundamental_disc(Int d) {
  if (d >= 0 || (mod_floor(d, 4) != 0 && mod_floor(d, 4) != 1)) return false;
  auto squarefree = [](Int n) {
    n = std::abs(n);
    for (Int q = 2; q * q <= n; ++q)
      if (n % (q * q) == 0) return false;
    return true;
  };
  if (mod_floor(d, 4) == 1) return squarefree(d);
  Int k = d / 4;
  Int km = mod_floor(k, 4);
  return (km == 2 || km == 3) && squarefree(k);
}

CompareReport compare_classical(const ClassicalCoeffTable& phi, const CoeffTable& psi,
                                const CartanContext& ctx) {
  if (phi.index() != ctx.p2())
    throw std::invalid_argument("compare_classical: phi index must be p^2");
  CompareReport rep;
  struct Pair {
    Int D, s;
    Rat phi_val, psi_val;
    bool phi_present;
  };
  std::vector<Pair> pairs;
  for (const auto& [key, value] : psi) {
    const auto& [m, s] = key;
    if (m <= Rat(0)) continue;
    Int D = psi.disc_of(m);
    if (!is_fundamental_disc(D)) continue;
    Int r = mod_floor(checked_narrow(wide_mod_floor(Wide(ctx.p2()) * s, ctx.two_p2())),
                      ctx.two_p2());
    Wide num = Wide(r) * r - Wide(D) * ctx.p2();
    if (wide_mod_floor(num, ctx.four_p2()) != 0)
      throw std::logic_error("compare_classical: (r^2 - D p^2)/4p^2 not integral");
    Int n = checked_narrow(num / ctx.four_p2());
    pairs.push_back({D, s, phi.coeff(n, r), value, phi.has(n, r)});
  }
  for (const Pair& pr : pairs)
    if (!rep.kappa_found && !pr.phi_val.is_zero() && !pr.psi_val.is_zero()) {
      rep.kappa = pr.phi_val / pr.psi_val;
      rep.kappa_found = true;
      break;
    }
  if (!rep.kappa_found) {
    rep.mismatches.push_back("kappa undetermined: no index with both coefficients nonzero");
    return rep;
  }
  for (const Pair& pr : pairs) {
    if (pr.phi_val == rep.kappa * pr.psi_val) {
      ++rep.matched;
    } else {
      rep.mismatches.push_back(
          "D=" + std::to_string(pr.D) + ", s=" + std::to_string(pr.s) + ": phi=" +
          pr.phi_val.str() + (pr.phi_present ? "" : " (absent)") + " vs kappa*psi=" +
          (rep.kappa * pr.psi_val).str());
    }
  }
  return rep;
}

}  // namespace nscartan
