#include "nscartan/cartan.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace nscartan;

namespace {

const CartanContext& p17_ctx() {
  static CartanContext ctx(17, 5);
  return ctx;
}

}  // namespace

TEST_CASE("context validation") {
  CHECK_THROWS_AS(CartanContext(15, 5), std::invalid_argument);   // not prime
  CHECK_THROWS_AS(CartanContext(17, 7), std::invalid_argument);   // 7 != 1 mod 4
  CHECK_THROWS_AS(CartanContext(17, 13), std::invalid_argument);  // square mod 17
  CartanContext ok(17, 5);
  CHECK(ok.eps_inv() == 925);  // 5 * 925 = 4625 = 1 + 4*1156
  CHECK(mod_floor(ok.eps() * ok.eps_inv(), ok.four_p2()) == 1);
}

TEST_CASE("membership predicates") {
  const CartanContext& ctx = p17_ctx();
  Mat2 id = Mat2::Identity();
  CHECK(in_mns(id, ctx));
  CHECK(in_mns_plus(id, ctx));
  CHECK(in_gamma_ns(id, ctx));
  CHECK(in_gamma_ns_plus(id, ctx));

  Mat2 m;
  m << 1, 1, 5, 1;  // det 1 - eps != 1
  CHECK(in_mns(m, ctx));
  CHECK_FALSE(in_gamma_ns(m, ctx));

  Mat2 w;
  w << 0, 1, 5, 0;  // a = d = 0, b*eps = 5 = c
  CHECK(in_mns(w, ctx));
}

TEST_CASE("s-invariant pinned values") {
  const CartanContext& ctx = p17_ctx();
  CHECK(s_invariant(CartanForm(QuadForm{12, 17, 1}, ctx)).value == 7);
  CHECK(s_invariant(CartanForm(QuadForm{12, 0, 1}, ctx)).value == 296);
  CHECK_THROWS_AS(CartanForm(QuadForm{1, 1, 1}, ctx), std::invalid_argument);
  // gcd(D, p) = 1 required
  CHECK_THROWS_AS(s_invariant(CartanForm(QuadForm{17, 17, 13 * 17}, ctx)),
                  std::invalid_argument);
}

TEST_CASE("s-invariant squares to eps * D") {
  const CartanContext& ctx = p17_ctx();
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    QuadForm f = oracles::random_qns_form(rng, ctx, true);
    ResidueClass s = s_invariant(CartanForm(f, ctx));
    CHECK(wide_mod_floor(Wide(s.value) * s.value - Wide(ctx.eps()) * f.disc(),
                         ctx.four_p2()) == 0);
  }
}

TEST_CASE("Gamma_ns congruences on forms (inv_ns)") {
  const CartanContext& ctx = p17_ctx();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 600; ++i) {
    QuadForm f = oracles::random_qns_form(rng, ctx, false);
    Sl2Matrix m = oracles::random_gamma_ns(rng, ctx);
    QuadForm g = act(f, m);
    CHECK(mod_floor(g.a - f.a, ctx.p()) == 0);
    CHECK(mod_floor(g.b - f.b, 2 * ctx.p()) == 0);
    CHECK(mod_floor(g.c - f.c, ctx.p()) == 0);
    CHECK(mod_floor((f.a - g.a) - ctx.eps() * (f.c - g.c), ctx.p2()) == 0);
    CHECK(in_qns(g, ctx));
  }
}

TEST_CASE("Gamma_ns^+ congruences on forms (inv_ns+) and W antisymmetry") {
  const CartanContext& ctx = p17_ctx();
  Sl2Matrix w = atkin_lehner_rep(ctx);
  CHECK(in_gamma_ns_plus(w.mat(), ctx));
  CHECK_FALSE(in_gamma_ns(w.mat(), ctx));
  Int maxentry = w.mat().cwiseAbs().maxCoeff();
  CHECK(maxentry <= 50);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 600; ++i) {
    QuadForm f = oracles::random_qns_form(rng, ctx, false);
    QuadForm g = act(f, w);
    CHECK(mod_floor(g.a + f.a, ctx.p()) == 0);
    CHECK(mod_floor(g.b + f.b, 2 * ctx.p()) == 0);
    CHECK(mod_floor(g.c + f.c, ctx.p()) == 0);
    // mod p^2 the invariant flips sign: (A - C eps) + (A' - C' eps) = 0
    CHECK(mod_floor((f.a + g.a) - ctx.eps() * (f.c + g.c), ctx.p2()) == 0);
  }
  for (int i = 0; i < 200; ++i) {
    QuadForm f = oracles::random_qns_form(rng, ctx, true);
    ResidueClass s = s_invariant(CartanForm(f, ctx));
    ResidueClass sw = s_invariant(CartanForm(act(f, w), ctx));
    CHECK(mod_floor(s.value + sw.value, ctx.two_p2()) == 0);
  }
}

TEST_CASE("s-invariant is Gamma_ns invariant") {
  const CartanContext& ctx = p17_ctx();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    QuadForm f = oracles::random_qns_form(rng, ctx, true);
    Sl2Matrix m = oracles::random_gamma_ns(rng, ctx);
    CHECK(s_invariant(CartanForm(f, ctx)).value ==
          s_invariant(CartanForm(act(f, m), ctx)).value);
  }
}

TEST_CASE("to_cartan_class fixes forms already in place") {
  const CartanContext& ctx = p17_ctx();
  QuadForm f{12, 0, 1};  // D = -48, s = 296
  auto [g, m] = to_cartan_class(f, 296, ctx);
  CHECK(g.form() == f);
  CHECK(m == Sl2Matrix::identity());
}

TEST_CASE("to_cartan_class postconditions") {
  const CartanContext& ctx = p17_ctx();
  SUBCASE("D = -48") {
    auto roots = sqrt_mod_4p2(mod_floor(ctx.eps() * -48, ctx.four_p2()), ctx.p());
    REQUIRE(!roots.empty());
    for (const auto& r : roots) {
      auto [g, m] = to_cartan_class(QuadForm{1, 0, 12}, r.value, ctx);
      CHECK(in_qns(g.form(), ctx));
      CHECK(s_invariant(g).value == r.value);
      CHECK(act(QuadForm{1, 0, 12}, m) == g.form());
      CHECK(g.form().is_posdef());
    }
  }
  SUBCASE("D = -3") {
    auto roots = sqrt_mod_4p2(mod_floor(ctx.eps() * -3, ctx.four_p2()), ctx.p());
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
      auto [g, m] = to_cartan_class(QuadForm{1, 1, 1}, r.value, ctx);
      CHECK(s_invariant(g).value == r.value);
      CHECK(g.form().is_primitive());
    }
  }
  SUBCASE("invalid s rejected") {
    CHECK_THROWS_AS(to_cartan_class(QuadForm{1, 1, 1}, 1, ctx), std::invalid_argument);
  }
}

TEST_CASE("to_cartan_class preserves primitivity") {
  const CartanContext& ctx = p17_ctx();
  for (Int D : {Int(-12), Int(-48)}) {
    auto roots = sqrt_mod_4p2(mod_floor(ctx.eps() * D, ctx.four_p2()), ctx.p());
    REQUIRE(!roots.empty());
    for (const QuadForm& f : class_reps(D)) {
      auto [g, m] = to_cartan_class(f, roots[0].value, ctx);
      CHECK(g.form().is_primitive() == f.is_primitive());
    }
  }
}

TEST_CASE("cartan_class_reps cardinalities") {
  const CartanContext& ctx = p17_ctx();
  auto count_for = [&](Int D) {
    auto roots = sqrt_mod_4p2(mod_floor(ctx.eps() * D, ctx.four_p2()), ctx.p());
    REQUIRE(!roots.empty());
    std::vector<CartanForm> reps = cartan_class_reps(D, roots[0].value, ctx);
    for (const CartanForm& g : reps) CHECK(g.form().is_posdef());
    return reps.size();
  };
  CHECK(count_for(-3) == 1);
  CHECK(count_for(-23) == 3);
  CHECK(count_for(-12) == 2);
  CHECK(count_for(-48) == class_reps(-48).size());
}

TEST_CASE("atkin_lehner_rep works for other contexts") {
  for (auto [p, eps] : {std::pair<Int, Int>{5, 13}, {7, 5}, {13, 5}}) {
    CartanContext ctx(p, eps);
    Sl2Matrix w = atkin_lehner_rep(ctx);
    CHECK(in_gamma_ns_plus(w.mat(), ctx));
    CHECK_FALSE(in_gamma_ns(w.mat(), ctx));
  }
}
