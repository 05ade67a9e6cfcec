#include "nscartan/arith.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace nscartan;

TEST_CASE("kronecker basics") {
  for (Int n : {Int(1), Int(2), Int(3), Int(10), Int(97), Int(578)})
    CHECK(kronecker(1, n) == 1);
  CHECK(kronecker(-3, 2) == -1);  // -3 = 5 (mod 8)
  CHECK(kronecker(-3, 17) == -1);
  CHECK_THROWS_AS(kronecker(5, 0), std::invalid_argument);
}

TEST_CASE("kronecker matches Legendre oracle on odd primes") {
  for (Int p : {Int(3), Int(5), Int(7), Int(11), Int(13), Int(17), Int(19), Int(23)})
    for (Int a = -30; a <= 30; ++a)
      CHECK(kronecker(a, p) == oracles::brute_legendre(a, p));
}

TEST_CASE("kronecker is multiplicative in the bottom argument") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Int> pick(-50, 50);
  std::uniform_int_distribution<Int> mod(1, 60);
  for (int i = 0; i < 300; ++i) {
    Int a = pick(rng);
    Int m = mod(rng), n = mod(rng);
    CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
  }
}

TEST_CASE("kronecker of unit squares") {
  for (Int n : {Int(5), Int(9), Int(17), Int(21)})
    for (Int u = 1; u < n; ++u) {
      if (std::gcd(u, n) != 1) continue;
      CHECK(kronecker(u * u, n) == 1);
    }
}

TEST_CASE("sqrt_mod_4p2 pinned values") {
  auto roots = sqrt_mod_4p2(916, 17);  // 5 * (-48) mod 1156
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].value == 282);
  CHECK(roots[1].value == 296);
  CHECK(roots[0].modulus == 578);

  CHECK(sqrt_mod_4p2(2, 17).empty());

  auto zero = sqrt_mod_4p2(0, 17);
  bool has_zero = false;
  for (const auto& r : zero) has_zero |= r.value == 0;
  CHECK(has_zero);
}

TEST_CASE("sqrt_mod_4p2 agrees with brute force") {
  for (Int p : {Int(3), Int(5), Int(7), Int(17)}) {
    for (Int t = 0; t < 4 * p * p; t += (p == 17 ? 7 : 1)) {
      auto fast = sqrt_mod_4p2(t, p);
      auto slow = oracles::brute_sqrt_mod_4p2(t, p);
      REQUIRE(fast.size() == slow.size());
      for (size_t i = 0; i < slow.size(); ++i) CHECK(fast[i].value == slow[i]);
    }
  }
}

TEST_CASE("sqrt_mod_4p2 unit-square inputs give exactly a +- pair") {
  const Int p = 17;
  for (Int s = 1; s < 2 * p * p; s += 11) {
    if (s % p == 0) continue;
    Int t = mod_floor(s * s, 4 * p * p);
    auto roots = sqrt_mod_4p2(t, p);
    REQUIRE(roots.size() == 2);
    CHECK(mod_floor(roots[0].value + roots[1].value, 2 * p * p) == 0);
  }
}

TEST_CASE("lift_sl2 identity and small cases") {
  Mat2 id = Mat2::Identity();
  CHECK(lift_sl2(id, 7) == id);
  Mat2 w;
  w << 0, 1, -1, 0;
  CHECK(lift_sl2(w, 5) == w);
}

TEST_CASE("lift_sl2 round trip, exhaustive mod 3 and random mod 17") {
  auto check_lift = [](const Mat2& mbar, Int m) {
    Mat2 lift = lift_sl2(mbar, m);
    CHECK(lift(0, 0) * lift(1, 1) - lift(0, 1) * lift(1, 0) == 1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(mod_floor(lift(i, j) - mbar(i, j), m) == 0);
  };
  for (Int a = 0; a < 3; ++a)
    for (Int b = 0; b < 3; ++b)
      for (Int c = 0; c < 3; ++c)
        for (Int d = 0; d < 3; ++d) {
          if (mod_floor(a * d - b * c, 3) != 1) continue;
          Mat2 mbar;
          mbar << a, b, c, d;
          check_lift(mbar, 3);
        }
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<Int> pick(0, 16);
  int found = 0;
  while (found < 1000) {
    Mat2 mbar;
    mbar << pick(rng), pick(rng), pick(rng), pick(rng);
    if (mod_floor(mbar(0, 0) * mbar(1, 1) - mbar(0, 1) * mbar(1, 0), 17) != 1) continue;
    check_lift(mbar, 17);
    ++found;
  }
}

TEST_CASE("lift_sl2 rejects non-unimodular input") {
  Mat2 bad;
  bad << 1, 0, 0, 2;
  CHECK_THROWS_AS(lift_sl2(bad, 5), std::invalid_argument);
}

TEST_CASE("crt and residue") {
  ResidueClass r = crt(residue(1, 2), residue(7, 289));
  CHECK(r.modulus == 578);
  CHECK(r.value % 2 == 1);
  CHECK(r.value % 289 == 7);
  CHECK_THROWS_AS(crt(residue(0, 4), residue(0, 6)), std::invalid_argument);
}
