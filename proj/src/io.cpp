#include "nscartan/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace nscartan {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Int parse_int(const std::string& tok, const std::filesystem::path& path, int line) {
  size_t pos = 0;
  Int v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != tok.size())
    throw std::runtime_error(path.string() + ":" + std::to_string(line) +
                             ": expected an integer, got \"" + tok + "\"");
  return v;
}

}  // namespace

HeegnerTable load_table_csv(const std::filesystem::path& path, const CartanContext& ctx) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  int lineno = 0;
  std::map<Int, Int> entries;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "D,m")
        throw std::runtime_error(path.string() + ":1: expected header \"D,m\"");
      continue;
    }
    size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected \"D,m\" row");
    Int d = parse_int(line.substr(0, comma), path, lineno);
    Int m = parse_int(line.substr(comma + 1), path, lineno);
    if (entries.count(d))
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": duplicate discriminant");
    entries[d] = m;
  }
  return make_heegner_table(entries, ctx);
}

IntMat gram_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::runtime_error("gram JSON must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  IntMat g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw std::runtime_error("gram JSON rows must all have the matrix size");
    for (Eigen::Index k = 0; k < n; ++k) g(i, k) = row[static_cast<size_t>(k)].get<Int>();
  }
  return g;
}

json gram_to_json(const IntMat& gram) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < gram.cols(); ++k) row.push_back(gram(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMat load_gram_json(const std::filesystem::path& path) {
  return gram_from_json(json::parse(read_file(path)));
}

WeierstrassCurve load_curve_json(const std::filesystem::path& path) {
  json j = json::parse(read_file(path));
  if (!j.contains("a") || !j["a"].is_array() || j["a"].size() != 5)
    throw std::runtime_error(path.string() + ": expected {\"a\": [a1,a2,a3,a4,a6]}");
  const auto& a = j["a"];
  return make_curve(a[0].get<Int>(), a[1].get<Int>(), a[2].get<Int>(), a[3].get<Int>(),
                    a[4].get<Int>());
}

WeierstrassCurve parse_curve_list(const std::string& csv) {
  std::vector<Int> a;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    a.push_back(parse_int(tok, "curve coefficients", 1));
  if (a.size() != 5)
    throw std::runtime_error("expected five curve coefficients a1,a2,a3,a4,a6");
  return make_curve(a[0], a[1], a[2], a[3], a[4]);
}

json cycle_to_json(const FormalCycle& x) {
  json out = json::array();
  for (const auto& [sym, c] : x)
    out.push_back({{"D", sym.D}, {"s", sym.s}, {"coeff_num", c.num64()},
                   {"coeff_den", c.den64()}});
  return out;
}

json coeff_table_to_json(const CoeffTable& tbl) {
  json entries = json::array();
  for (const auto& [key, value] : tbl) {
    const auto& [m, s] = key;
    entries.push_back({{"D", tbl.disc_of(m)}, {"s", s}, {"num", value.num64()},
                       {"den", value.den64()}});
  }
  return {{"p", tbl.ctx().p()}, {"eps", tbl.ctx().eps()}, {"entries", entries}};
}

CoeffTable coeff_table_from_json(const json& j, const CartanContext& ctx) {
  if (j.value("p", Int(0)) != ctx.p() || j.value("eps", Int(0)) != ctx.eps())
    throw std::runtime_error("coeff table JSON (p, eps) do not match the context");
  CoeffTable out(ctx);
  for (const auto& e : j.at("entries")) {
    Int d = e.at("D").get<Int>();
    out.set(Rat(-d, ctx.four_p2()), e.at("s").get<Int>(),
            Rat(e.at("num").get<Int>(), e.at("den").get<Int>()));
  }
  return out;
}

json classical_to_json(const ClassicalCoeffTable& tbl) {
  json entries = json::array();
  for (const auto& [key, value] : tbl) {
    // reconstruct (n, r) from the internal key: n = (r^2 - disc) / (4 index)
    Wide disc = key.first;
    Int r = key.second;
    Wide n = (Wide(r) * r - disc) / (4 * Wide(tbl.index()));
    entries.push_back({{"n", checked_narrow(n)}, {"r", r}, {"num", value.num64()},
                       {"den", value.den64()}});
  }
  return {{"index", tbl.index()}, {"entries", entries}};
}

ClassicalCoeffTable classical_from_json(const json& j) {
  ClassicalCoeffTable out(j.at("index").get<Int>());
  for (const auto& e : j.at("entries"))
    out.set(e.at("n").get<Int>(), e.at("r").get<Int>(),
            Rat(e.at("num").get<Int>(), e.at("den").get<Int>()));
  return out;
}

ClassicalCoeffTable load_classical_json(const std::filesystem::path& path) {
  return classical_from_json(json::parse(read_file(path)));
}

}  // namespace nscartan
