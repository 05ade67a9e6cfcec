#include "nscartan/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace nscartan {

EvenLattice::EvenLattice(IntMat gram,
                         std::optional<Eigen::Matrix<Int, Eigen::Dynamic, 3>> coords)
    : gram_(std::move(gram)), coords_(std::move(coords)) {
  if (gram_.rows() != gram_.cols())
    throw std::invalid_argument("EvenLattice: Gram matrix must be square");
  if (gram_ != gram_.transpose())
    throw std::invalid_argument("EvenLattice: Gram matrix must be symmetric");
  for (Eigen::Index i = 0; i < gram_.rows(); ++i)
    if (gram_(i, i) % 2 != 0)
      throw std::invalid_argument("EvenLattice: diagonal must be even");
  det_ = det_exact(gram_);
  if (det_ == 0) throw std::invalid_argument("EvenLattice: Gram matrix is singular");
  if (coords_ && coords_->rows() != gram_.rows())
    throw std::invalid_argument("EvenLattice: coordinate rows must match rank");
}

Wide EvenLattice::pairing(const IntVec& x, const IntVec& y) const {
  Wide s = 0;
  for (Eigen::Index i = 0; i < rank(); ++i)
    for (Eigen::Index j = 0; j < rank(); ++j)
      s = checked_add(s, checked_mul(checked_mul(Wide(x[i]), gram_(i, j)), Wide(y[j])));
  return s;
}

Wide EvenLattice::norm(const IntVec& x) const { return pairing(x, x) / 2; }

DiscriminantForm::DiscriminantForm(std::vector<Int> divisors, RatMat pairing)
    : divisors_(std::move(divisors)), pairing_(std::move(pairing)) {
  for (Int d : divisors_)
    if (d <= 1) throw std::invalid_argument("DiscriminantForm: divisors must be > 1");
  if (pairing_.rows() != ngens() || pairing_.cols() != ngens())
    throw std::invalid_argument("DiscriminantForm: pairing size mismatch");
}

DiscriminantForm DiscriminantForm::trivial() {
  return DiscriminantForm({}, RatMat(0, 0));
}

DiscriminantForm DiscriminantForm::cyclic(Int n, const Rat& q_of_generator) {
  RatMat p(1, 1);
  p(0, 0) = q_of_generator.mod1();
  return DiscriminantForm({n}, std::move(p));
}

Wide DiscriminantForm::order() const {
  Wide o = 1;
  for (Int d : divisors_) o = checked_mul(o, d);
  return o;
}

Rat DiscriminantForm::q(const std::vector<Int>& x) const {
  if (static_cast<Eigen::Index>(x.size()) != ngens())
    throw std::invalid_argument("DiscriminantForm::q: size mismatch");
  Rat acc;
  for (Eigen::Index i = 0; i < ngens(); ++i) {
    Int xi = mod_floor(x[i], divisors_[i]);
    acc += Rat(Wide(xi) * xi, 1) * pairing_(i, i);
    for (Eigen::Index j = i + 1; j < ngens(); ++j) {
      Int xj = mod_floor(x[j], divisors_[j]);
      acc += Rat(Wide(xi) * xj, 1) * pairing_(i, j);
    }
  }
  return acc.mod1();
}

Rat DiscriminantForm::bilinear(const std::vector<Int>& x,
                               const std::vector<Int>& y) const {
  // b(x,y) = q(x+y) - q(x) - q(y) mod 1
  std::vector<Int> sum(x.size());
  for (size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];
  return (q(sum) - q(x) - q(y)).mod1();
}

bool DiscriminantForm::next_element(std::vector<Int>& x) const {
  for (size_t i = 0; i < x.size(); ++i) {
    if (++x[i] < divisors_[i]) return true;
    x[i] = 0;
  }
  return false;
}

EvenLattice build_lns(const CartanContext& ctx) {
  const Int p = ctx.p();
  const Int eps = ctx.eps();
  IntMat gram(3, 3);
  gram << 0, 0, -p, 0, 2, 0, -p, 0, -2 * eps;
  Eigen::Matrix<Int, Eigen::Dynamic, 3> coords(3, 3);
  coords << p * p, 0, 0,  // v1 = (A,B,C) = (p^2, 0, 0)
      0, 2 * p, 0,        // v2 = (0, 2p, 0)
      eps * p, 0, p;      // v3 = (eps*p, 0, p)
  return EvenLattice(std::move(gram), std::move(coords));
}

RatMat dual_lattice(const EvenLattice& l) {
  IntMat id = IntMat::Identity(l.rank(), l.rank());
  return solve_rational(l.gram(), id);
}

std::vector<QuadForm> dual_coords_as_forms(const EvenLattice& l) {
  if (!l.coords())
    throw std::invalid_argument("dual_coords_as_forms: lattice has no coordinates");
  RatMat dual = dual_lattice(l);
  std::vector<QuadForm> out;
  for (Eigen::Index j = 0; j < dual.cols(); ++j) {
    Rat abc[3];
    for (int t = 0; t < 3; ++t) {
      Rat acc;
      for (Eigen::Index i = 0; i < l.rank(); ++i)
        acc += dual(i, j) * Rat((*l.coords())(i, t));
      abc[t] = acc;
    }
    for (const Rat& v : abc)
      if (!v.is_integer())
        throw std::logic_error("dual_coords_as_forms: non-integral dual vector");
    out.push_back(QuadForm{abc[0].num64(), abc[1].num64(), abc[2].num64()});
  }
  return out;
}

DiscriminantForm disc_form(const EvenLattice& l) {
  if (l.rank() == 0) return DiscriminantForm::trivial();
  Snf snf = smith_form(l.gram());
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < l.rank(); ++i)
    if (snf.divisors[i] > 1) idx.push_back(i);
  if (idx.empty()) return DiscriminantForm::trivial();

  // Generators are the columns of G^{-1} * Uinv at the nontrivial divisors;
  // their pairings are (Uinv^T G^{-1} Uinv)_{ij}.
  IntMat cols(l.rank(), static_cast<Eigen::Index>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) cols.col(j) = snf.uinv.col(idx[j]);
  RatMat x = solve_rational(l.gram(), cols);
  RatMat pairing(idx.size(), idx.size());
  std::vector<Int> divisors;
  for (size_t i = 0; i < idx.size(); ++i) {
    divisors.push_back(snf.divisors[idx[i]]);
    for (size_t j = 0; j < idx.size(); ++j) {
      Rat acc;
      for (Eigen::Index k = 0; k < l.rank(); ++k)
        acc += Rat(cols(k, i)) * x(k, j);
      pairing(i, j) = (i == j) ? (acc / Rat(2)).mod1() : acc.mod1();
    }
  }
  return DiscriminantForm(std::move(divisors), std::move(pairing));
}

ResidueClass dual_class(const QuadForm& x, const CartanContext& ctx) {
  const Int p = ctx.p();
  if (mod_floor(x.b, p) != 0 || mod_floor(x.a + x.c * ctx.eps(), p) != 0)
    throw std::invalid_argument("dual_class: vector is not in L_ns^vee");
  return crt(residue(x.b, 2), residue(x.a - x.c * ctx.eps(), ctx.p2()));
}

int gauss_sum_signature(const DiscriminantForm& df) {
  Wide order = df.order();
  if (order > 1000000)
    throw CapacityError("gauss_sum_signature: group order above 10^6");
  long double re = 0, im = 0;
  std::vector<Int> x(df.divisors().size(), 0);
  constexpr long double two_pi = 6.283185307179586476925286766559L;
  do {
    Rat qv = df.q(x);
    long double phase = two_pi * static_cast<long double>(qv.approx());
    re += std::cos(phase);
    im += std::sin(phase);
  } while (df.next_element(x));
  long double mag = std::sqrt(re * re + im * im);
  long double root = std::sqrt(static_cast<long double>(order));
  if (std::abs(mag - root) > 1e-6L * root + 1e-6L)
    throw std::runtime_error("gauss_sum_signature: |sum| != sqrt(|G|), degenerate form?");
  long double theta = std::atan2(im, re) / (two_pi / 8);
  long double nearest = std::round(theta);
  if (std::abs(theta - nearest) > 0.1L)
    throw std::runtime_error("gauss_sum_signature: phase not near a multiple of 1/8");
  return static_cast<int>(mod_floor(static_cast<Int>(nearest), 8));
}

namespace {

Wide element_order(const std::vector<Int>& x, const std::vector<Int>& divisors) {
  Wide o = 1;
  for (size_t i = 0; i < x.size(); ++i) {
    Int d = divisors[i];
    Int g = std::gcd(mod_floor(x[i], d), d);
    Wide oi = d / g;
    o = checked_mul(o / wide_gcd(o, oi), oi);
  }
  return o;
}

std::vector<Int> unit_vector(size_t pos, size_t len) {
  std::vector<Int> v(len, 0);
  v[pos] = 1;
  return v;
}

}  // namespace

DiscFormIso disc_form_isomorphic(const DiscriminantForm& df1,
                                 const DiscriminantForm& df2) {
  DiscFormIso res;
  if (df1.divisors() != df2.divisors()) return res;
  const auto& divs = df1.divisors();
  const size_t k = divs.size();
  if (k == 0) {
    res.isomorphic = true;
    return res;
  }
  if (df1.order() > 100000)
    throw CapacityError("disc_form_isomorphic: group order above 10^5");

  if (k == 1) {
    // Cyclic: a unit multiplier u with q2(u g2) = q1(g1) determines the map.
    Int n = divs[0];
    Rat q1 = df1.q({1});
    for (Int u = 1; u < n; ++u) {
      if (std::gcd(u, n) != 1) continue;
      if (df2.q({u}) != q1) continue;
      bool all = true;
      for (Int t = 0; t < n && all; ++t)
        if (df2.q({mod_floor(t * u, n)}) != df1.q({t})) all = false;
      if (all) {
        res.isomorphic = true;
        res.images = {{u}};
        return res;
      }
    }
    return res;
  }

  // General small groups: brute force over generator image tuples with
  // order/q/b pruning, then certify bijectivity.
  Wide tuple_bound = 1;
  for (size_t i = 0; i < k; ++i) tuple_bound = checked_mul(tuple_bound, df1.order());
  if (tuple_bound > 10000000)
    throw CapacityError("disc_form_isomorphic: generator image search too large");

  std::vector<std::vector<Int>> candidates;  // elements of G2 once
  std::vector<Int> x(k, 0);
  do candidates.push_back(x);
  while (df2.next_element(x));

  std::vector<std::vector<Int>> images(k);
  std::vector<size_t> pick(k, 0);
  size_t level = 0;
  while (true) {
    if (pick[level] == candidates.size()) {
      if (level == 0) return res;
      pick[level] = 0;
      ++pick[--level];
      continue;
    }
    const auto& cand = candidates[pick[level]];
    bool ok = element_order(cand, divs) == Wide(divs[level]) &&
              df2.q(cand) == df1.q(unit_vector(level, k));
    if (ok)
      for (size_t j = 0; j < level && ok; ++j)
        if (df2.bilinear(images[j], cand) !=
            df1.bilinear(unit_vector(j, k), unit_vector(level, k)))
          ok = false;
    if (!ok) {
      ++pick[level];
      continue;
    }
    images[level] = cand;
    if (level + 1 < k) {
      ++level;
      continue;
    }
    // Certify: the induced map must be a bijection preserving q.
    std::set<std::vector<Int>> seen;
    std::vector<Int> t(k, 0);
    bool bij = true;
    do {
      std::vector<Int> img(k, 0);
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
          img[j] = mod_floor(img[j] + t[i] * images[i][j], divs[j]);
      if (df2.q(img) != df1.q(t) || !seen.insert(img).second) {
        bij = false;
        break;
      }
    } while (df1.next_element(t));
    if (bij && Wide(seen.size()) == df1.order()) {
      res.isomorphic = true;
      res.images = images;
      return res;
    }
    ++pick[level];
  }
}

EvenLattice e8_lattice() {
  IntMat g = IntMat::Zero(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = 2;
  // Dynkin diagram: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
  const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (const auto& e : edges) {
    g(e[0], e[1]) = -1;
    g(e[1], e[0]) = -1;
  }
  return EvenLattice(std::move(g));
}

EvenLattice hyperbolic_plane() {
  IntMat g(2, 2);
  g << 0, 1, 1, 0;
  return EvenLattice(std::move(g));
}

EvenLattice direct_sum(const EvenLattice& l1, const EvenLattice& l2) {
  IntMat g = IntMat::Zero(l1.rank() + l2.rank(), l1.rank() + l2.rank());
  g.topLeftCorner(l1.rank(), l1.rank()) = l1.gram();
  g.bottomRightCorner(l2.rank(), l2.rank()) = l2.gram();
  return EvenLattice(std::move(g));
}

namespace {

// Lexicographically first vector in the sup-norm-r shell that is primitive,
// isotropic, and has unimodular pairing with the lattice.
std::optional<IntVec> isotropic_in_shell(const EvenLattice& m, Int r) {
  const Eigen::Index n = m.rank();
  IntVec x = IntVec::Constant(n, -r);
  IntVec gx(n);  // G x, updated incrementally would be nicer; n is tiny
  while (true) {
    Int maxabs = 0;
    for (Eigen::Index i = 0; i < n; ++i) maxabs = std::max(maxabs, std::abs(x[i]));
    if (maxabs == r) {
      Wide q2 = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        Wide row = 0;
        for (Eigen::Index j = 0; j < n; ++j) row += Wide(m.gram()(i, j)) * x[j];
        gx[i] = checked_narrow(row);
        q2 += row * x[i];
      }
      if (q2 == 0) {
        Int gc = 0, gp = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
          gc = std::gcd(gc, x[i]);
          gp = std::gcd(gp, gx[i]);
        }
        if (gc == 1 && gp == 1) return x;
      }
    }
    // next vector in lexicographic order (x[0] most significant)
    Eigen::Index i = n - 1;
    while (i >= 0 && x[i] == r) x[i--] = -r;
    if (i < 0) return std::nullopt;
    ++x[i];
  }
}

}  // namespace

HyperbolicSplit hyperbolic_split(const EvenLattice& m, Int bound) {
  std::pair<int, int> sig = signature(m);
  if (sig.first == 0 || sig.second == 0)
    throw std::invalid_argument("hyperbolic_split: lattice must be indefinite");

  std::optional<IntVec> e;
  for (Int r = 1; r <= bound && !e; ++r) e = isotropic_in_shell(m, r);
  if (!e)
    throw CapacityError("hyperbolic_split: no unimodular isotropic vector with "
                        "sup-norm <= " + std::to_string(bound) +
                        "; raise the search bound");

  const Eigen::Index n = m.rank();
  IntVec u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Wide row = 0;
    for (Eigen::Index j = 0; j < n; ++j) row += Wide(m.gram()(i, j)) * (*e)[j];
    u[i] = checked_narrow(row);
  }
  IntVec f0 = gcd_combination(u);
  Wide qf0 = m.norm(f0);
  IntVec f = f0 - IntVec(checked_narrow(qf0) * (*e));
  if (m.norm(f) != 0 || m.pairing(*e, f) != 1)
    throw std::logic_error("hyperbolic_split: U completion failed");

  // Orthogonal complement: integer kernel of the two pairing rows.
  IntMat rows(2, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    rows(0, j) = u[j];
    Wide row = 0;
    for (Eigen::Index k = 0; k < n; ++k) row += Wide(m.gram()(j, k)) * f[k];
    rows(1, j) = checked_narrow(row);
  }
  IntMat basis = kernel_basis(rows);
  if (basis.cols() != n - 2)
    throw std::logic_error("hyperbolic_split: kernel rank mismatch");

  IntMat kgram(n - 2, n - 2);
  for (Eigen::Index i = 0; i < n - 2; ++i)
    for (Eigen::Index j = 0; j < n - 2; ++j)
      kgram(i, j) = checked_narrow(m.pairing(basis.col(i), basis.col(j)));
  reduce_gram_basis(kgram, basis);

  EvenLattice complement(kgram);
  // Certificates: rank, determinant relation, disc-form isomorphism.
  if (complement.det() != -m.det())
    throw std::logic_error("hyperbolic_split: det(K) != -det(M)");
  if (!disc_form_isomorphic(disc_form(complement), disc_form(m)).isomorphic)
    throw std::logic_error("hyperbolic_split: discriminant form changed");

  HyperbolicSplit out{*e, f, basis, std::move(complement)};
  return out;
}

EvenLattice stabilize_to_posdef(const CartanContext& ctx, Int bound) {
  EvenLattice sum = direct_sum(build_lns(ctx), e8_lattice());
  HyperbolicSplit split = hyperbolic_split(sum, bound);
  const EvenLattice& k = split.complement;
  if (k.rank() != 9 || !is_positive_definite(k) ||
      k.det() != Wide(2) * ctx.p2())
    throw std::logic_error("stabilize_to_posdef: certificates failed");
  return k;
}

std::pair<int, int> signature(const EvenLattice& l) {
  return signature_exact(l.gram());
}

bool is_positive_definite(const EvenLattice& l) {
  std::vector<Wide> minors = leading_minors(l.gram());
  if (minors.size() != static_cast<size_t>(l.rank())) return false;
  for (Wide m : minors)
    if (m <= 0) return false;
  return true;
}

}  // namespace nscartan
