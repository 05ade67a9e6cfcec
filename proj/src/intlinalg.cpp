#include "nscartan/intlinalg.hpp"

#include "nscartan/arith.hpp"

#include <algorithm>
#include <cstdlib>

namespace nscartan {

namespace {

WideMat to_wide(const IntMat& m) {
  WideMat w(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  return w;
}

// Bareiss elimination; returns the pivots (equal to the leading principal
// minors when no row swap happens) and the sign of the permutation used.
// Stops early when the remaining submatrix is zero.
struct BareissResult {
  std::vector<Wide> pivots;
  int sign = 1;
  bool singular = false;
};

BareissResult bareiss(WideMat w) {
  const Eigen::Index n = w.rows();
  BareissResult res;
  Wide prev = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (w(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      res.singular = true;
      return res;
    }
    if (piv != k) {
      w.row(piv).swap(w.row(k));
      res.sign = -res.sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Wide num = checked_mul(w(k, k), w(i, j)) - checked_mul(w(i, k), w(k, j));
        w(i, j) = num / prev;  // exact division (Bareiss)
      }
    prev = w(k, k);
    res.pivots.push_back(w(k, k));
  }
  return res;
}

}  // namespace

Wide det_exact(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det_exact: square only");
  if (m.rows() == 0) return 1;
  BareissResult r = bareiss(to_wide(m));
  if (r.singular) return 0;
  return r.sign * r.pivots.back();
}

std::vector<Wide> leading_minors(const IntMat& m) {
  std::vector<Wide> out;
  for (Eigen::Index k = 1; k <= m.rows(); ++k) {
    Wide d = det_exact(m.topLeftCorner(k, k));
    out.push_back(d);
    if (d == 0) break;
  }
  return out;
}

IntMat kernel_basis(const IntMat& r) {
  const Eigen::Index rows = r.rows(), n = r.cols();
  WideMat a = to_wide(r);
  WideMat t = WideMat::Identity(n, n);
  Eigen::Index pc = 0;  // pivot column count
  for (Eigen::Index ri = 0; ri < rows && pc < n; ++ri) {
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index c = pc; c < n; ++c)
        if (a(ri, c) != 0 && (best < 0 || wide_abs(a(ri, c)) < wide_abs(a(ri, best))))
          best = c;
      if (best < 0) break;  // row already clear; no pivot here
      a.col(pc).swap(a.col(best));
      t.col(pc).swap(t.col(best));
      bool done = true;
      for (Eigen::Index c = pc + 1; c < n; ++c) {
        Wide q = a(ri, c) / a(ri, pc);
        if (q != 0) {
          a.col(c) -= q * a.col(pc);
          t.col(c) -= q * t.col(pc);
        }
        if (a(ri, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(ri, pc) != 0) ++pc;
  }
  // Columns past pc are zero in all processed rows; check against all rows.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index c = pc; c < n; ++c) {
    bool zero = true;
    for (Eigen::Index ri = 0; ri < rows; ++ri)
      if (a(ri, c) != 0) zero = false;
    if (zero) keep.push_back(c);
  }
  IntMat out(n, static_cast<Eigen::Index>(keep.size()));
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = checked_narrow(t(i, keep[j]));
  return out;
}

Snf smith_form(const IntMat& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("smith_form: square only");
  const Eigen::Index n = g.rows();
  WideMat a = to_wide(g);
  WideMat uinv = WideMat::Identity(n, n);

  // Row op bookkeeping: a <- E a means uinv <- uinv E^{-1}.
  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    a.row(i).swap(a.row(j));
    uinv.col(i).swap(uinv.col(j));
  };
  auto add_row = [&](Eigen::Index i, Eigen::Index j, Wide q) {
    // row_i += q * row_j
    a.row(i) += q * a.row(j);
    uinv.col(j) -= q * uinv.col(i);
  };
  auto negate_row = [&](Eigen::Index i) {
    a.row(i) = -a.row(i);
    uinv.col(i) = -uinv.col(i);
  };

  for (Eigen::Index k = 0; k < n; ++k) {
    for (int guard = 0;; ++guard) {
      if (guard > 20000) throw std::logic_error("smith_form: did not converge");
      Eigen::Index bi = -1, bj = -1;
      for (Eigen::Index i = k; i < n; ++i)
        for (Eigen::Index j = k; j < n; ++j)
          if (a(i, j) != 0 &&
              (bi < 0 || wide_abs(a(i, j)) < wide_abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) {
        bi = bj = k;  // zero block; diagonal entry stays 0
        break;
      }
      if (bi != k) swap_rows(k, bi);
      if (bj != k) a.col(k).swap(a.col(bj));
      bool done = true;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        Wide q = a(i, k) / a(k, k);
        if (q != 0) add_row(i, k, -q);
        if (a(i, k) != 0) done = false;
      }
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Wide q = a(k, j) / a(k, k);
        if (q != 0) a.col(j) -= q * a.col(k);
        if (a(k, j) != 0) done = false;
      }
      if (!done) continue;
      // Divisibility fixup: every remaining entry must be divisible by the
      // pivot for the invariant-factor chain.
      bool fixed = false;
      for (Eigen::Index i = k + 1; i < n && !fixed; ++i)
        for (Eigen::Index j = k + 1; j < n && !fixed; ++j)
          if (a(i, j) % a(k, k) != 0) {
            add_row(k, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (a(k, k) < 0) negate_row(k);
  }

  Snf out;
  out.divisors.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) out.divisors[k] = checked_narrow(a(k, k));
  out.uinv.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out.uinv(i, j) = checked_narrow(uinv(i, j));
  return out;
}

RatMat solve_rational(const IntMat& a, const IntMat& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("solve_rational: dimension mismatch");
  Wide d = det_exact(a);
  if (d == 0) throw std::invalid_argument("solve_rational: singular matrix");
  const Eigen::Index n = a.rows();
  RatMat x(n, b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      IntMat m = a;
      m.col(i) = b.col(j);
      x(i, j) = Rat(det_exact(m), d);
    }
  return x;
}

std::vector<Wide> char_poly(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: square only");
  const Eigen::Index n = m.rows();
  WideMat a = to_wide(m);
  WideMat mk = a;
  std::vector<Wide> c(static_cast<size_t>(n) + 1);
  c[0] = 1;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k > 1) {
      WideMat shifted = mk;
      for (Eigen::Index i = 0; i < n; ++i) shifted(i, i) += c[k - 1];
      // checked product
      WideMat prod(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          Wide s = 0;
          for (Eigen::Index t = 0; t < n; ++t)
            s = checked_add(s, checked_mul(a(i, t), shifted(t, j)));
          prod(i, j) = s;
        }
      mk = prod;
    }
    Wide tr = 0;
    for (Eigen::Index i = 0; i < n; ++i) tr = checked_add(tr, mk(i, i));
    if (tr % k != 0) throw std::logic_error("char_poly: non-integer trace step");
    c[k] = -tr / k;
  }
  return c;
}

std::pair<int, int> signature_exact(const IntMat& m) {
  if (m != m.transpose())
    throw std::invalid_argument("signature_exact: symmetric matrices only");
  std::vector<Wide> c = char_poly(m);
  auto variations = [](const std::vector<Wide>& coeffs) {
    int v = 0;
    int last = 0;
    for (Wide x : coeffs) {
      if (x == 0) continue;
      int s = x > 0 ? 1 : -1;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  int pos = variations(c);
  std::vector<Wide> cneg = c;  // chi(-x): flip sign of odd-degree coefficients
  const size_t n = c.size() - 1;
  for (size_t k = 0; k <= n; ++k)
    if ((n - k) % 2 == 1) cneg[k] = -cneg[k];
  int neg = variations(cneg);
  return {pos, neg};
}

void reduce_gram_basis(IntMat& gram, IntMat& basis) {
  const Eigen::Index n = gram.rows();
  if (n == 0) return;
  auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
    gram.row(i).swap(gram.row(j));
    gram.col(i).swap(gram.col(j));
    basis.col(i).swap(basis.col(j));
  };
  // b_j -= t * b_i on the Gram and the basis together
  auto reduce_pair = [&](Eigen::Index i, Eigen::Index j, Int t) {
    for (Eigen::Index k = 0; k < n; ++k)
      gram(k, j) = checked_narrow(Wide(gram(k, j)) - checked_mul(Wide(t), gram(k, i)));
    for (Eigen::Index k = 0; k < n; ++k)
      gram(j, k) = checked_narrow(Wide(gram(j, k)) - checked_mul(Wide(t), gram(i, k)));
    for (Eigen::Index k = 0; k < basis.rows(); ++k)
      basis(k, j) = checked_narrow(Wide(basis(k, j)) - checked_mul(Wide(t), basis(k, i)));
  };
  bool changed = true;
  for (int rounds = 0; changed && rounds < 1000; ++rounds) {
    changed = false;
    // keep diagonal ascending
    for (Eigen::Index pass = 0; pass + 1 < n; ++pass)
      for (Eigen::Index j = 0; j + 1 < n; ++j)
        if (gram(j, j) > gram(j + 1, j + 1)) swap_cols(j, j + 1);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        // nearest-integer projection coefficient
        Int gii = gram(i, i);
        Int t = static_cast<Int>((2 * Wide(gram(i, j)) +
                                  (gram(i, j) >= 0 ? gii : -gii)) /
                                 (2 * Wide(gii)));
        if (t == 0) continue;
        Wide newdiag = Wide(gram(j, j)) - 2 * checked_mul(Wide(t), gram(i, j)) +
                       checked_mul(checked_mul(Wide(t), t), gii);
        if (newdiag < gram(j, j)) {
          reduce_pair(i, j, t);
          changed = true;
        }
      }
  }
}

IntVec gcd_combination(const IntVec& u) {
  IntVec z = IntVec::Zero(u.size());
  Int g = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    if (g == 0) {
      z[i] = u[i] > 0 ? 1 : -1;
      g = std::abs(u[i]);
    } else {
      Int x, y;
      Int g2 = ext_gcd(g, std::abs(u[i]), x, y);
      for (Eigen::Index k = 0; k < z.size(); ++k)
        z[k] = checked_narrow(checked_mul(Wide(x), z[k]));
      z[i] = checked_narrow(Wide(z[i]) + Wide(y) * (u[i] > 0 ? 1 : -1));
      g = g2;
    }
    if (g == 1) break;
  }
  return z;
}

}  // namespace nscartan
