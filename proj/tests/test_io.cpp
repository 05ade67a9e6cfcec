#include "nscartan/io.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

using namespace nscartan;

namespace {

const CartanContext& p17_ctx() {
  static CartanContext ctx(17, 5);
  return ctx;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = (std::filesystem::temp_directory_path() /
            ("nscartan_io_test_" + std::to_string(counter++) + ".txt"))
               .string();
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("table CSV loads the shipped fixture") {
  HeegnerTable tbl = load_table_csv("fixtures/table1.csv", p17_ctx());
  CHECK(tbl.m.size() == 48);
  CHECK(tbl.m.at(-3) == 1);
  CHECK(tbl.m.at(-48) == -2);
  CHECK(tbl.m.at(-199) == -1);
}

TEST_CASE("table CSV parse errors carry line numbers") {
  TempFile bad("D,m\n-3,1\n-7,x\n");
  try {
    load_table_csv(bad.path, p17_ctx());
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  TempFile noheader("-3,1\n");
  CHECK_THROWS_AS(load_table_csv(noheader.path, p17_ctx()), std::runtime_error);
}

TEST_CASE("gram fixture loads and round-trips") {
  IntMat g = load_gram_json("fixtures/gram_p17.json");
  REQUIRE(g.rows() == 9);
  CHECK(g(1, 1) == 578);
  CHECK(gram_from_json(gram_to_json(g)) == g);
}

TEST_CASE("curve fixture") {
  WeierstrassCurve e = load_curve_json("fixtures/curve289.json");
  CHECK(e.a1 == 1);
  CHECK(e.a6 == 510);
  WeierstrassCurve f = parse_curve_list("1,-1,1,-199,510");
  CHECK(f.a4 == -199);
  CHECK_THROWS_AS(parse_curve_list("1,2,3"), std::runtime_error);
}

TEST_CASE("coefficient table JSON round trip") {
  const CartanContext& ctx = p17_ctx();
  HeegnerTable tbl = load_table_csv("fixtures/table1.csv", ctx);
  CoeffTable t = assemble_series(tbl, ctx);
  json j = coeff_table_to_json(t);
  CHECK(j["p"] == 17);
  CHECK(j["eps"] == 5);
  CoeffTable back = coeff_table_from_json(j, ctx);
  CHECK(back.size() == t.size());
  for (const auto& [key, value] : t) CHECK(back.coeff(key.first, key.second) == value);
}

TEST_CASE("classical table JSON round trip") {
  ClassicalCoeffTable t(289);
  t.set(1, 5, Rat(3, 2));
  t.set(2, 1, Rat(-4));
  json j = classical_to_json(t);
  ClassicalCoeffTable back = classical_from_json(j);
  CHECK(back.coeff(1, 5) == Rat(3, 2));
  CHECK(back.coeff(1, -5) == Rat(3, 2));  // r and -r agree
  CHECK(back.coeff(2, 1) == Rat(-4));
}

TEST_CASE("formal cycle JSON") {
  const CartanContext& ctx = p17_ctx();
  FormalCycle x(ctx);
  auto roots = sqrt_mod_4p2(mod_floor(ctx.eps() * -3, ctx.four_p2()), ctx.p());
  x.add(-3, roots[0].value, Rat(2, 3));
  json j = cycle_to_json(x);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["D"] == -3);
  CHECK(j[0]["coeff_num"] == 2);
  CHECK(j[0]["coeff_den"] == 3);
}
