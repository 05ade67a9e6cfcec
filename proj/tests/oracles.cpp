#include "oracles.hpp"

#include "nscartan/rational.hpp"

#include <algorithm>
#include <cmath>

namespace nscartan::oracles {

std::vector<Int> brute_sqrt_mod_4p2(Int t, Int p) {
  const Int m = 4 * p * p;
  t = mod_floor(t, m);
  std::vector<Int> out;
  for (Int s = 0; s < 2 * p * p; ++s)
    if ((s * s - t) % m == 0) out.push_back(s);
  return out;
}

Int brute_legendre(Int a, Int p) {
  a = mod_floor(a, p);
  if (a == 0) return 0;
  for (Int x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

Int naive_point_count(const WeierstrassCurve& e, Int ell) {
  Int count = 1;
  for (Int x = 0; x < ell; ++x)
    for (Int y = 0; y < ell; ++y) {
      Wide lhs = Wide(y) * y + Wide(e.a1) * x * y + Wide(e.a3) * y;
      Wide rhs = Wide(x) * x * x + Wide(e.a2) * x * x + Wide(e.a4) * x + e.a6;
      if (wide_mod_floor(lhs - rhs, ell) == 0) ++count;
    }
  return count;
}

std::vector<QuadForm> brute_reduced_forms(Int D) {
  std::vector<QuadForm> out;
  for (Int a = 1; a <= -D; ++a)
    for (Int c = a; c <= -D; ++c)
      for (Int b = -a; b <= a; ++b) {
        if (b * b - 4 * a * c != D) continue;
        if (b < 0 && (b == -a || a == c)) continue;
        out.push_back(QuadForm{a, b, c});
      }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// x^T G x = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 via rational LDL.
struct Ldl {
  std::vector<Rat> d;
  std::vector<std::vector<Rat>> u;
};

Ldl ldl(const IntMat& g) {
  const Eigen::Index n = g.rows();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a[i][j] = Rat(g(i, j));
  Ldl out;
  out.d.resize(n);
  out.u.assign(n, std::vector<Rat>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.d[i] = a[i][i];
    if (!(Rat(0) < out.d[i])) throw std::invalid_argument("ldl: not positive definite");
    for (Eigen::Index j = i + 1; j < n; ++j) out.u[i][j] = a[i][j] / a[i][i];
    for (Eigen::Index k = i + 1; k < n; ++k)
      for (Eigen::Index l = i + 1; l < n; ++l)
        a[k][l] -= a[i][k] * a[i][l] / a[i][i];
  }
  return out;
}

void enumerate(const Ldl& f, Eigen::Index i, std::vector<Int>& x, const Rat& budget,
               Int target2, Int& count) {
  if (i < 0) return;  // handled by caller
  const Eigen::Index n = static_cast<Eigen::Index>(f.d.size());
  // center of the i-th coordinate given the fixed tail
  Rat center;
  for (Eigen::Index j = i + 1; j < n; ++j) center += f.u[i][j] * Rat(x[j]);
  // |x_i + center|^2 <= budget / d_i
  Rat cap = budget / f.d[i];
  Int lo, hi;
  {
    // conservative integer window around -center with radius sqrt(cap)
    double r = std::sqrt(std::max(0.0, cap.approx())) + 1.0;
    double c = center.approx();
    lo = static_cast<Int>(std::floor(-c - r));
    hi = static_cast<Int>(std::ceil(-c + r));
  }
  for (Int v = lo; v <= hi; ++v) {
    Rat term = (Rat(v) + center);
    Rat used = f.d[i] * term * term;
    if (budget < used) continue;
    x[i] = v;
    if (i == 0) {
      // full value = target2 - (budget - used) remaining slack; recompute to
      // be safe
      bool zero = true;
      for (Int xi : x)
        if (xi != 0) zero = false;
      if (!zero) {
        // exact norm check
        Rat total;
        for (Eigen::Index a1 = 0; a1 < n; ++a1) {
          Rat inner = Rat(x[a1]);
          for (Eigen::Index j = a1 + 1; j < n; ++j) inner += f.u[a1][j] * Rat(x[j]);
          total += f.d[a1] * inner * inner;
        }
        if (total == Rat(target2)) ++count;
      }
    } else {
      enumerate(f, i - 1, x, budget - used, target2, count);
    }
    x[i] = 0;
  }
}

}  // namespace

Int count_vectors_of_norm(const IntMat& gram, Int norm) {
  Ldl f = ldl(gram);
  std::vector<Int> x(gram.rows(), 0);
  Int count = 0;
  enumerate(f, gram.rows() - 1, x, Rat(2 * norm), 2 * norm, count);
  return count;
}

Sl2Matrix random_sl2(std::mt19937_64& rng, int max_word, Int max_shear) {
  const Sl2Matrix S(0, -1, 1, 0);
  std::uniform_int_distribution<int> len(0, max_word);
  std::uniform_int_distribution<Int> shear(-max_shear, max_shear);
  std::uniform_int_distribution<int> coin(0, 1);
  Sl2Matrix m = Sl2Matrix::identity();
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    if (coin(rng))
      m = m * S;
    else
      m = m * Sl2Matrix(1, shear(rng), 0, 1);
  }
  return m;
}

Sl2Matrix random_gamma_ns(std::mt19937_64& rng, const CartanContext& ctx) {
  const Int p = ctx.p();
  std::uniform_int_distribution<Int> pick(0, p - 1);
  while (true) {
    Int a = pick(rng), b = pick(rng);
    // det of [[a, b],[eps b, a]] is a^2 - eps b^2
    Int det = mod_floor(a * a - mod_floor(ctx.eps(), p) * b * b, p);
    if (det != 1) continue;
    Mat2 mbar;
    mbar << a, b, mod_floor(ctx.eps() * b, p), a;
    return Sl2Matrix(lift_sl2(mbar, p));
  }
}

QuadForm random_qns_form(std::mt19937_64& rng, const CartanContext& ctx,
                         bool prime_to_p) {
  const Int p = ctx.p();
  std::uniform_int_distribution<Int> small(-6, 6);
  while (true) {
    Int c = small(rng);
    Int a = -c * ctx.eps() + p * small(rng);
    Int b = p * small(rng);
    QuadForm f{a, b, c};
    if (prime_to_p && mod_floor(f.disc(), p) == 0) continue;
    return f;
  }
}

}  // namespace nscartan::oracles
