#include "nscartan/jacobi.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace nscartan;

namespace {

const CartanContext& p17_ctx() {
  static CartanContext ctx(17, 5);
  return ctx;
}

WeierstrassCurve curve289() { return make_curve(1, -1, 1, -199, 510); }

HeegnerTable table1(const CartanContext& ctx) {
  return make_heegner_table(
      {{-3, 1},    {-7, -1},   {-11, 3},   {-12, 0},   {-20, 2},   {-23, 1},
       {-24, 2},   {-27, 0},   {-28, 2},   {-31, 1},   {-39, 4},   {-40, 2},
       {-44, 0},   {-48, -2},  {-56, 0},   {-63, -1},  {-71, -3},  {-75, 3},
       {-79, -1},  {-80, -2},  {-88, 2},   {-91, -2},  {-92, -2},  {-95, -4},
       {-96, -2},  {-99, -3},  {-107, -3}, {-108, 0},  {-112, 0},  {-116, -2},
       {-124, -2}, {-131, 3},  {-139, 1},  {-143, -2}, {-147, -5}, {-148, 2},
       {-156, -8}, {-159, 2},  {-160, -2}, {-163, 7},  {-164, -4}, {-167, 1},
       {-175, -3}, {-176, -6}, {-180, -2}, {-184, 8},  {-192, 2},  {-199, -1}},
      ctx);
}

Int root_of(Int D, const CartanContext& ctx) {
  auto roots = sqrt_mod_4p2(
      checked_narrow(wide_mod_floor(Wide(ctx.eps()) * D, ctx.four_p2())), ctx.p());
  REQUIRE(!roots.empty());
  return roots[0].value;
}

}  // namespace

TEST_CASE("reindexing") {
  const CartanContext& ctx = p17_ctx();
  SUBCASE("zero class: m = n") {
    ReindexResult r = reindex_jacobi_to_vv(3, 0, ctx);
    CHECK(r.m == Rat(3));
    CHECK(r.cuspidal);
  }
  SUBCASE("round trip on many (n, s)") {
    for (Int n = 1; n <= 5; ++n)
      for (Int s = 0; s < ctx.two_p2(); s += 23) {
        ReindexResult r = reindex_jacobi_to_vv(n, s, ctx);
        CHECK(reindex_vv_to_jacobi(r.m, s, ctx) == n);
      }
  }
  SUBCASE("psi index: D = -3 gives m = 3/1156") {
    Int s = root_of(-3, ctx);
    // beta(s) + (-(-3))/4p^2 is an integer n; m = n - beta(s) = 3/1156 + ...
    Rat m = Rat(3, 1156);
    Int n = reindex_vv_to_jacobi(m, s, ctx);
    ReindexResult r = reindex_jacobi_to_vv(n, s, ctx);
    CHECK(r.m == m);
  }
  SUBCASE("n below beta(s) rejected") {
    Int s = root_of(-3, ctx);
    CHECK_THROWS_AS(reindex_jacobi_to_vv(0, s, ctx), std::invalid_argument);
  }
}

TEST_CASE("assemble_series pinned entries") {
  const CartanContext& ctx = p17_ctx();
  CoeffTable t = assemble_series(table1(ctx), ctx);
  Int s3 = root_of(-3, ctx);
  CHECK(t.coeff(Rat(3, 1156), s3) == Rat(1));
  CHECK(t.coeff(Rat(12, 1156), root_of(-12, ctx)) == Rat(0));
  CHECK(t.has(Rat(12, 1156), root_of(-12, ctx)));  // explicit zero is data

  CoeffTable empty = assemble_series(HeegnerTable{}, ctx);
  CHECK(empty.size() == 0);

  CHECK_THROWS_AS(assemble_series(HeegnerTable{{{-4, 1}}}, ctx), std::invalid_argument);
}

TEST_CASE("validate_support on the assembled series") {
  const CartanContext& ctx = p17_ctx();
  CoeffTable t = assemble_series(table1(ctx), ctx);
  SupportReport rep = validate_support(t);
  CHECK(rep.symmetry_ok);
  CHECK(rep.support_ok);
  CHECK_FALSE(rep.hperp_supported);
  CHECK(rep.violations.empty());
}

TEST_CASE("assembled series of random subtables always validates") {
  const CartanContext& ctx = p17_ctx();
  HeegnerTable full = table1(ctx);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<Int> val(-9, 9);
  for (int round = 0; round < 20; ++round) {
    std::map<Int, Int> sub;
    for (const auto& [d, m] : full.m)
      if (coin(rng)) sub[d] = val(rng);  // positions themselves are arbitrary
    CoeffTable t = assemble_series(make_heegner_table(sub, ctx), ctx);
    SupportReport rep = validate_support(t);
    CHECK(rep.symmetry_ok);
    CHECK(rep.support_ok);
  }
}

TEST_CASE("validate_support flags an H-perp table and passes empty tables") {
  const CartanContext& ctx = p17_ctx();
  SUBCASE("lone entry at s = p") {
    // D with eps*D = p^2 (mod 4p^2): divisible by p^2, still a valid index
    Int d = checked_narrow(wide_mod_floor(Wide(ctx.eps_inv()) * ctx.p2(), ctx.four_p2())) -
            ctx.four_p2();
    CoeffTable t(ctx);
    t.set(Rat(-d, ctx.four_p2()), ctx.p(), Rat(1));
    SupportReport rep = validate_support(t);
    CHECK(rep.hperp_supported);
    CHECK(rep.support_ok);
  }
  SUBCASE("empty table is vacuously valid") {
    CoeffTable t(ctx);
    SupportReport rep = validate_support(t);
    CHECK(rep.symmetry_ok);
    CHECK(rep.support_ok);
    CHECK(rep.hperp_supported);  // vacuous
  }
}

TEST_CASE("verify_coeff_hecke matches the table-level verdicts") {
  const CartanContext& ctx = p17_ctx();
  HeegnerTable tbl = table1(ctx);
  CoeffTable t = assemble_series(tbl, ctx);
  WeierstrassCurve e = curve289();
  for (Int ell : {Int(2), Int(3), Int(5), Int(7), Int(11), Int(13)}) {
    CoeffHeckeReport crep = verify_coeff_hecke(t, e, ell, ctx);
    HeckeReport trep = verify_hecke_table(tbl, e, ell, ctx);
    // strip checks of other primes out of the table report
    Int table_checks = 0;
    for (const HeckeCheck& c : trep.checks)
      if (c.ell == ell) ++table_checks;
    CHECK(static_cast<Int>(crep.checks.size()) == table_checks);
    CHECK(crep.failures() == 0);
  }
  CHECK_THROWS_AS(verify_coeff_hecke(t, e, 17, ctx), std::invalid_argument);
}

TEST_CASE("verify_coeff_hecke verdicts match the table check on corrupted data") {
  const CartanContext& ctx = p17_ctx();
  HeegnerTable bad = table1(ctx);
  bad.m[-3] = 2;
  bad.m[-92] = 5;
  CoeffTable t = assemble_series(bad, ctx);
  WeierstrassCurve e = curve289();
  for (Int ell : {Int(2), Int(3), Int(5), Int(7)}) {
    CoeffHeckeReport crep = verify_coeff_hecke(t, e, ell, ctx);
    HeckeReport trep = verify_hecke_table(bad, e, ell, ctx);
    std::map<Int, bool> table_verdicts;
    for (const HeckeCheck& c : trep.checks)
      if (c.ell == ell) table_verdicts[c.D] = c.ok;
    REQUIRE(crep.checks.size() == table_verdicts.size());
    for (const CoeffHeckeCheck& c : crep.checks) {
      Int D = t.disc_of(c.m);
      REQUIRE(table_verdicts.count(D) == 1);
      CHECK(c.ok == table_verdicts[D]);
    }
  }
}

TEST_CASE("verify_coeff_hecke on the zero table is vacuous") {
  const CartanContext& ctx = p17_ctx();
  CoeffTable t(ctx);
  CoeffHeckeReport rep = verify_coeff_hecke(t, curve289(), 2, ctx);
  CHECK(rep.checks.empty());
  CHECK(rep.failures() == 0);
}

TEST_CASE("coefficient table index validation") {
  const CartanContext& ctx = p17_ctx();
  CoeffTable t(ctx);
  CHECK_THROWS_AS(t.set(Rat(1, 7), 1, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(t.set(Rat(3, 1156), 1, Rat(1)), std::invalid_argument);
  CHECK_NOTHROW(t.set(Rat(3, 1156), root_of(-3, ctx), Rat(5)));
  CHECK(t.coeff(Rat(3, 1156), -root_of(-3, ctx)) == Rat(5));  // +-s symmetry
}

namespace {

ClassicalCoeffTable synth_phi(const CoeffTable& psi, const Rat& kappa,
                              const CartanContext& ctx) {
  ClassicalCoeffTable phi(ctx.p2());
  for (const auto& [key, value] : psi) {
    const auto& [m, s] = key;
    if (m <= Rat(0)) continue;
    Int D = psi.disc_of(m);
    if (!is_fundamental_disc(D)) continue;
    Int r = checked_narrow(wide_mod_floor(Wide(ctx.p2()) * s, ctx.two_p2()));
    Int n = checked_narrow((Wide(r) * r - Wide(D) * ctx.p2()) / ctx.four_p2());
    phi.set(n, r, kappa * value);
  }
  return phi;
}

}  // namespace

TEST_CASE("compare_classical recovers a synthetic kappa") {
  const CartanContext& ctx = p17_ctx();
  CoeffTable psi = assemble_series(table1(ctx), ctx);
  ClassicalCoeffTable phi = synth_phi(psi, Rat(3, 2), ctx);
  CompareReport rep = compare_classical(phi, psi, ctx);
  CHECK(rep.kappa_found);
  CHECK(rep.kappa == Rat(3, 2));
  CHECK(rep.mismatches.empty());
  CHECK(rep.matched > 0);
}

TEST_CASE("compare_classical is scale equivariant") {
  const CartanContext& ctx = p17_ctx();
  CoeffTable psi = assemble_series(table1(ctx), ctx);
  ClassicalCoeffTable phi = synth_phi(psi, Rat(-7, 5), ctx);
  CompareReport rep = compare_classical(phi, psi, ctx);
  CHECK(rep.kappa == Rat(-7, 5));
  CHECK(rep.mismatches.empty());
}

TEST_CASE("compare_classical: undetermined kappa on the zero series") {
  const CartanContext& ctx = p17_ctx();
  HeegnerTable zero = make_heegner_table({{-3, 0}, {-7, 0}}, ctx);
  CoeffTable psi = assemble_series(zero, ctx);
  ClassicalCoeffTable phi(ctx.p2());
  CompareReport rep = compare_classical(phi, psi, ctx);
  CHECK_FALSE(rep.kappa_found);
}

TEST_CASE("compare_classical: one perturbed entry, one mismatch") {
  const CartanContext& ctx = p17_ctx();
  CoeffTable psi = assemble_series(table1(ctx), ctx);
  ClassicalCoeffTable phi = synth_phi(psi, Rat(3, 2), ctx);
  // perturb the entry for D = -23; its internal key has r^2 - 4p^2 n = D p^2
  ClassicalCoeffTable phi2(ctx.p2());
  for (const auto& [key, value] : phi) {
    Wide disc = key.first;
    Int rr = key.second;
    Int nn = checked_narrow((Wide(rr) * rr - disc) / (4 * Wide(ctx.p2())));
    phi2.set(nn, rr, disc == Wide(-23) * ctx.p2() ? value + Rat(1) : value);
  }
  CompareReport rep = compare_classical(phi2, psi, ctx);
  CHECK(rep.mismatches.size() == 1);
}
