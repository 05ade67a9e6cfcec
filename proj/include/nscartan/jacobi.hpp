#pragma once

#include "nscartan/cartan.hpp"
#include "nscartan/ellcurve.hpp"
#include "nscartan/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace nscartan {

// Fourier-coefficient ledger of a vector-valued / lattice-index Jacobi
// form: sparse map (m, s) -> rational with m a nonnegative rational and s
// in Z/2p^2 stored canonically (s = min(s, 2p^2 - s), so c_{m,s} = c_{m,-s}
// by construction).  Nonzero entries with m > 0 must sit at indices where
// D = -4p^2 m is an integer with s^2 = eps D (mod 4p^2).
class CoeffTable {
public:
  explicit CoeffTable(const CartanContext& ctx) : ctx_(&ctx) {}

  const CartanContext& ctx() const { return *ctx_; }

  Int canonical_s(Int s) const;
  void set(const Rat& m, Int s, const Rat& value);
  bool has(const Rat& m, Int s) const;
  Rat coeff(const Rat& m, Int s) const;

  size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // D = -4p^2 m for an entry key; throws when not an integer.
  Int disc_of(const Rat& m) const;

private:
  const CartanContext* ctx_;
  std::map<std::pair<Rat, Int>, Rat> entries_;
};

struct ReindexResult {
  Rat m;          // n - beta(s), beta taken in [0,1)
  Int s = 0;      // canonical class
  bool cuspidal = false;  // m > 0
};

// The Jacobi -> vector-valued index shift of the class s: m = n - beta(s)
// with beta(s) the canonical representative of s^2 eps^{-1} / 4p^2 mod 1.
ReindexResult reindex_jacobi_to_vv(Int n, Int s, const CartanContext& ctx);

// Inverse: n = m + beta(s); requires the sum to be an integer.
Int reindex_vv_to_jacobi(const Rat& m, Int s, const CartanContext& ctx);

// Build the coefficient table of the Heegner generating series: for each D
// in the table and each root s of eps*D mod 4p^2, entry (-D/4p^2, s) = m(D).
// Explicit zeros are kept (they are data).
CoeffTable assemble_series(const HeegnerTable& tbl, const CartanContext& ctx);

struct SupportReport {
  bool symmetry_ok = true;       // canonical-key storage is +-s symmetric
  bool support_ok = true;        // every nonzero entry has valid (D, s)
  bool hperp_supported = true;   // all nonzero entries have p | s
  std::vector<std::string> violations;

  bool valid() const { return symmetry_ok && support_ok; }
};

SupportReport validate_support(const CoeffTable& tbl);

struct CoeffHeckeCheck {
  Rat m;
  Int s = 0;
  Rat lhs, rhs;
  bool ok = false;
};

struct CoeffHeckeReport {
  std::vector<CoeffHeckeCheck> checks;
  Int skipped = 0;

  Int failures() const;
};

// The Hecke recurrence of verify_hecke_table expressed on CoeffTable
// indices: a_ell c(m,s) = c(ell^2 m, ell s) + (D/ell) c(m,s) + ell c(m/ell^2, s/ell).
CoeffHeckeReport verify_coeff_hecke(const CoeffTable& tbl, const WeierstrassCurve& e,
                                    Int ell, const CartanContext& ctx);

// Classical Jacobi form coefficient table of scalar index p^2: entries
// (n, r) with c(n, r) depending only on (4 p^2 n - r^2, +-r mod 2p^2).
class ClassicalCoeffTable {
public:
  explicit ClassicalCoeffTable(Int index);

  Int index() const { return index_; }
  void set(Int n, Int r, const Rat& value);
  bool has(Int n, Int r) const;
  Rat coeff(Int n, Int r) const;
  size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

private:
  std::pair<Wide, Int> key(Int n, Int r) const;  // (r^2 - 4 index n, canonical r)

  Int index_;
  std::map<std::pair<Wide, Int>, Rat> entries_;
};

struct CompareReport {
  bool kappa_found = false;
  Rat kappa;
  Int matched = 0;
  std::vector<std::string> mismatches;
};

// Match psi against phi under r = p^2 s (mod 2p^2), n = (r^2 - D p^2)/4p^2,
// over fundamental discriminants in psi's index set: kappa is solved from
// the first pair with both values nonzero and all other pairs are checked
// against it.
CompareReport compare_classical(const ClassicalCoeffTable& phi, const CoeffTable& psi,
                                const CartanContext& ctx);

bool is_fundamental_disc(Int d);

}  // namespace nscartan
