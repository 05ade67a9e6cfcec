#include "nscartan/cartan.hpp"

#include <array>
#include <cstdlib>
#include <numeric>
#include <random>

namespace nscartan {

CartanContext::CartanContext(Int p, Int eps) : p_(p) {
  if (p <= 2 || p > 10000 || !is_prime(p))
    throw std::invalid_argument("CartanContext: p must be an odd prime <= 10^4");
  p2_ = p * p;
  eps_ = mod_floor(eps, 4 * p2_);
  if (eps_ % 4 != 1)
    throw std::invalid_argument("CartanContext: eps must be 1 mod 4");
  if (kronecker(eps_, p) != -1)
    throw std::invalid_argument("CartanContext: eps must be a non-square mod p");
  eps_inv_ = mod_inv(eps_, 4 * p2_);
}

namespace {

bool mns_congruences(const Mat2& m, Int p, Int eps) {
  return mod_floor(m(0, 0) - m(1, 1), p) == 0 &&
         mod_floor(m(0, 1) * eps - m(1, 0), p) == 0;
}

bool mns_plus_coset(const Mat2& m, Int p, Int eps) {
  return mod_floor(m(0, 0) + m(1, 1), p) == 0 &&
         mod_floor(m(0, 1) * eps + m(1, 0), p) == 0;
}

Int det2(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

bool in_mns(const Mat2& m, const CartanContext& ctx) {
  return mns_congruences(m, ctx.p(), ctx.eps());
}

bool in_mns_plus(const Mat2& m, const CartanContext& ctx) {
  return mns_congruences(m, ctx.p(), ctx.eps()) ||
         mns_plus_coset(m, ctx.p(), ctx.eps());
}

bool in_gamma_ns(const Mat2& m, const CartanContext& ctx) {
  return det2(m) == 1 && in_mns(m, ctx);
}

bool in_gamma_ns_plus(const Mat2& m, const CartanContext& ctx) {
  return det2(m) == 1 && in_mns_plus(m, ctx);
}

const Sl2Matrix& CartanContext::atkin_lehner_rep(Int search_bound) const {
  std::call_once(al_once_, [&] {
    // Determinant-1 matrix with a = -d, c = -eps*b (mod p), searched over
    // growing entry boxes.
    for (Int bound = 1; bound <= search_bound; bound *= 2) {
      for (Int a = -bound; a <= bound && !al_; ++a)
        for (Int b = -bound; b <= bound && !al_; ++b)
          for (Int c = -bound; c <= bound && !al_; ++c) {
            // a*d - b*c = 1
            Int d;
            if (a != 0) {
              if ((1 + b * c) % a != 0) continue;
              d = (1 + b * c) / a;
              if (std::abs(d) > bound) continue;
              Mat2 m;
              m << a, b, c, d;
              if (mns_plus_coset(m, p_, eps_)) al_ = Sl2Matrix(m);
            } else {
              if (b * c != -1) continue;
              for (d = -bound; d <= bound; ++d) {
                Mat2 m;
                m << a, b, c, d;
                if (mns_plus_coset(m, p_, eps_)) {
                  al_ = Sl2Matrix(m);
                  break;
                }
              }
            }
          }
      if (al_) break;
    }
  });
  if (!al_)
    throw CapacityError("atkin_lehner_rep: no representative with entries <= " +
                        std::to_string(search_bound) + "; raise the bound");
  return *al_;
}

Sl2Matrix atkin_lehner_rep(const CartanContext& ctx) {
  return ctx.atkin_lehner_rep();
}

bool in_qns(const QuadForm& f, const CartanContext& ctx) {
  return mod_floor(f.b, ctx.p()) == 0 &&
         mod_floor(f.a + f.c * ctx.eps(), ctx.p()) == 0;
}

CartanForm::CartanForm(const QuadForm& f, const CartanContext& ctx)
    : f_(f), ctx_(&ctx) {
  if (!in_qns(f, ctx))
    throw std::invalid_argument("CartanForm: form is not in Q_ns");
}

ResidueClass s_invariant(const CartanForm& f) {
  const CartanContext& ctx = f.ctx();
  const QuadForm& v = f.form();
  if (mod_floor(v.disc(), ctx.p()) == 0)
    throw std::invalid_argument("s_invariant: disc must be prime to p");
  ResidueClass s = crt(residue(v.b, 2), residue(v.a - v.c * ctx.eps(), ctx.p2()));
  Wide lhs = wide_mod_floor(Wide(s.value) * s.value, ctx.four_p2());
  Wide rhs = wide_mod_floor(Wide(ctx.eps()) * v.disc(), ctx.four_p2());
  if (lhs != rhs) throw std::logic_error("s_invariant: s^2 != eps*D mod 4p^2");
  return s;
}

namespace {

using FpMat = std::array<Int, 4>;  // row major 2x2 over F_p

FpMat fp_mul(const FpMat& x, const FpMat& y, Int p) {
  return {mod_floor(x[0] * y[0] + x[1] * y[2], p),
          mod_floor(x[0] * y[1] + x[1] * y[3], p),
          mod_floor(x[2] * y[0] + x[3] * y[2], p),
          mod_floor(x[2] * y[1] + x[3] * y[3], p)};
}

// The trace-zero matrix attached to a form, mod p: [[-B/2, -C],[A, B/2]].
// It transforms by conjugation: iota(act(f,M)) = M^{-1} iota(f) M.
FpMat iota_fp(const QuadForm& f, Int p) {
  Int inv2 = mod_inv(2, p);
  return {mod_floor(-f.b * inv2 % p, p), mod_floor(-f.c, p), mod_floor(f.a, p),
          mod_floor(f.b * inv2 % p, p)};
}

FpMat target_fp(Int s, const CartanContext& ctx) {
  Int p = ctx.p();
  Int inv2 = mod_inv(2, p);
  Int seps = mod_floor(s % p * inv2 % p * mod_inv(mod_floor(ctx.eps(), p), p), p);
  return {0, seps, mod_floor(s % p * inv2, p), 0};
}

bool conjugates_to_target(const FpMat& iota, const FpMat& target, const FpMat& m,
                          Int p) {
  return fp_mul(iota, m, p) == fp_mul(m, target, p);
}

// Search SL2(F_p) for M with iota*M = M*target: exhaustive for p <= 31
// (identity tried first), seeded random sampling beyond.
std::optional<FpMat> find_conjugator(const FpMat& iota, const FpMat& target, Int p) {
  FpMat id{1, 0, 0, 1};
  if (conjugates_to_target(iota, target, id, p)) return id;
  if (p <= 31) {
    for (Int a = 0; a < p; ++a)
      for (Int b = 0; b < p; ++b)
        for (Int c = 0; c < p; ++c) {
          if (a != 0) {
            Int d = mod_floor((1 + b * c) * mod_inv(a, p), p);
            FpMat m{a, b, c, d};
            if (conjugates_to_target(iota, target, m, p)) return m;
          } else if (mod_floor(-b * c, p) == 1) {
            for (Int d = 0; d < p; ++d) {
              FpMat m{a, b, c, d};
              if (conjugates_to_target(iota, target, m, p)) return m;
            }
          }
        }
    return std::nullopt;
  }
  std::mt19937_64 rng(0x6e73636172746eULL);  // fixed seed, reproducible
  std::uniform_int_distribution<Int> dist(0, p - 1);
  for (int tries = 0; tries < 4000000; ++tries) {
    Int a = dist(rng), b = dist(rng), c = dist(rng);
    FpMat m;
    if (a != 0) {
      m = {a, b, c, mod_floor((1 + b * c) * mod_inv(a, p), p)};
    } else {
      if (b == 0) continue;
      m = {0, b, mod_floor(-mod_inv(b, p), p), dist(rng)};
    }
    if (conjugates_to_target(iota, target, m, p)) return m;
  }
  throw CapacityError("to_cartan_class: randomized conjugator search exhausted");
}

}  // namespace

std::pair<CartanForm, Sl2Matrix> to_cartan_class(const QuadForm& f, Int s,
                                                 const CartanContext& ctx) {
  Int D = f.disc();
  if (mod_floor(D, ctx.p()) == 0)
    throw std::invalid_argument("to_cartan_class: disc must be prime to p");
  s = mod_floor(s, ctx.two_p2());
  Wide cond = wide_mod_floor(Wide(s) * s - Wide(ctx.eps()) * D, ctx.four_p2());
  if (cond != 0)
    throw std::invalid_argument(
        "to_cartan_class: s^2 != eps*D (mod 4p^2), the class set is empty");

  auto mbar = find_conjugator(iota_fp(f, ctx.p()), target_fp(s, ctx), ctx.p());
  if (!mbar) throw std::logic_error("to_cartan_class: no conjugator found");
  Mat2 mb;
  mb << (*mbar)[0], (*mbar)[1], (*mbar)[2], (*mbar)[3];
  Sl2Matrix m(lift_sl2(mb, ctx.p()));
  QuadForm g = act(f, m);
  CartanForm cf(g, ctx);  // validates Q_ns membership
  // The mod-2 and mod-p^2 refinements are automatic; verify anyway.
  if (s_invariant(cf).value != s)
    throw std::logic_error("to_cartan_class: s-invariant mismatch after lift");
  return {cf, m};
}

std::vector<CartanForm> cartan_class_reps(Int D, Int s, const CartanContext& ctx) {
  if (D >= 0) throw std::invalid_argument("cartan_class_reps: D must be negative");
  std::vector<CartanForm> out;
  for (const QuadForm& f : class_reps(D))
    out.push_back(to_cartan_class(f, s, ctx).first);
  return out;
}

}  // namespace nscartan
