#include "nscartan/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>

using namespace nscartan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct Options {
  Int p = 17;
  Int eps = 5;
  Int search_bound = 10;
  std::string format = "text";
};

bool json_mode(const Options& opt) { return opt.format == "json"; }

int cmd_forms(const Options& opt, Int disc) {
  std::vector<QuadForm> reps = class_reps(disc);
  if (json_mode(opt)) {
    json rows = json::array();
    for (const QuadForm& f : reps) {
      SpecialPoint z(f);
      rows.push_back({{"form", {f.a, f.b, f.c}},
                      {"primitive", f.is_primitive()},
                      {"point_re", z.approx().real()},
                      {"point_im", z.approx().imag()}});
    }
    std::cout << json({{"D", disc}, {"count", reps.size()}, {"forms", rows}}).dump(2)
              << "\n";
  } else {
    std::cout << "discriminant " << disc << ": " << reps.size() << " classes\n";
    for (const QuadForm& f : reps) {
      SpecialPoint z(f);
      char buf[80];
      std::snprintf(buf, sizeof buf, "%.12f + %.12fi", z.approx().real(),
                    z.approx().imag());
      std::cout << "  " << f << (f.is_primitive() ? "  primitive   " : "  imprimitive ")
                << "z = " << buf << "\n";
    }
  }
  return kExitOk;
}

int cmd_cartan(const Options& opt, const CartanContext& ctx, Int disc,
               std::optional<Int> s_opt) {
  std::vector<Int> roots;
  if (s_opt) {
    roots.push_back(mod_floor(*s_opt, ctx.two_p2()));
  } else {
    Int target = checked_narrow(wide_mod_floor(Wide(ctx.eps()) * disc, ctx.four_p2()));
    for (const ResidueClass& r : sqrt_mod_4p2(target, ctx.p()))
      roots.push_back(r.value);
  }
  if (roots.empty()) {
    std::cerr << "no s in Z/" << ctx.two_p2() << " satisfies s^2 = eps*D (mod 4p^2) for D="
              << disc << "; the class sets Q_{ns,D,s} are empty\n";
    return kExitVerifyFailure;
  }
  json out = json::array();
  for (Int s : roots) {
    std::vector<CartanForm> reps = cartan_class_reps(disc, s, ctx);
    if (json_mode(opt)) {
      json rows = json::array();
      for (const CartanForm& g : reps)
        rows.push_back({{"form", {g.form().a, g.form().b, g.form().c}},
                        {"s", s_invariant(g).value}});
      out.push_back({{"s", s}, {"count", reps.size()}, {"forms", rows}});
    } else {
      std::cout << "D = " << disc << ", s = " << s << ": " << reps.size()
                << " classes mod Gamma_ns\n";
      for (const CartanForm& g : reps)
        std::cout << "  " << g.form() << "  s-invariant " << s_invariant(g).value
                  << "\n";
    }
  }
  if (json_mode(opt)) std::cout << json({{"D", disc}, {"classes", out}}).dump(2) << "\n";
  return kExitOk;
}

json discform_json(const DiscriminantForm& df) {
  json gens = json::array();
  for (Eigen::Index i = 0; i < df.ngens(); ++i) {
    std::vector<Int> x(df.ngens(), 0);
    x[i] = 1;
    gens.push_back({{"order", df.divisors()[i]}, {"q", df.q(x).str()}});
  }
  return {{"order", wide_str(df.order())}, {"generators", gens}};
}

int cmd_lattice(const Options& opt, const CartanContext& ctx, const std::string& action,
                const std::string& gram_path) {
  const bool js = json_mode(opt);
  if (action == "build") {
    EvenLattice l = build_lns(ctx);
    if (js)
      std::cout << json({{"gram", gram_to_json(l.gram())}, {"det", wide_str(l.det())}})
                       .dump(2)
                << "\n";
    else
      std::cout << "L_ns Gram:\n" << l.gram() << "\ndet = " << wide_str(l.det()) << "\n";
    return kExitOk;
  }
  if (action == "discform") {
    DiscriminantForm df = disc_form(build_lns(ctx));
    if (js)
      std::cout << discform_json(df).dump(2) << "\n";
    else {
      std::cout << "discriminant group of order " << wide_str(df.order()) << ":";
      for (Int d : df.divisors()) std::cout << " Z/" << d;
      std::cout << "\n";
      for (Eigen::Index i = 0; i < df.ngens(); ++i) {
        std::vector<Int> x(df.ngens(), 0);
        x[i] = 1;
        std::cout << "  generator " << i << ": q = " << df.q(x) << " mod 1\n";
      }
    }
    return kExitOk;
  }
  if (action == "stabilize") {
    EvenLattice k = stabilize_to_posdef(ctx, opt.search_bound);
    DiscriminantForm df = disc_form(k);
    int sig = gauss_sum_signature(df);
    if (js)
      std::cout << json({{"gram", gram_to_json(k.gram())},
                         {"rank", k.rank()},
                         {"det", wide_str(k.det())},
                         {"positive_definite", is_positive_definite(k)},
                         {"disc_form", discform_json(df)},
                         {"gauss_signature", sig}})
                       .dump(2)
                << "\n";
    else {
      std::cout << "stabilized lattice, rank " << k.rank() << ", det "
                << wide_str(k.det()) << ", positive definite: "
                << (is_positive_definite(k) ? "yes" : "no")
                << ", Gauss signature " << sig << "\nGram:\n" << k.gram() << "\n";
    }
    return kExitOk;
  }
  if (action == "check-paper-gram") {
    EvenLattice l(load_gram_json(gram_path));
    DiscriminantForm df = disc_form(l);
    DiscriminantForm lns_df = disc_form(build_lns(ctx));
    bool posdef = is_positive_definite(l);
    bool iso = disc_form_isomorphic(df, lns_df).isomorphic;
    int sig = gauss_sum_signature(df);
    bool even = true;  // enforced by the EvenLattice constructor
    bool ok = posdef && iso && l.det() == Wide(2) * ctx.p2() && sig == 1;
    if (js)
      std::cout << json({{"det", wide_str(l.det())},
                         {"even", even},
                         {"positive_definite", posdef},
                         {"disc_form_matches_lns", iso},
                         {"gauss_signature", sig},
                         {"ok", ok}})
                       .dump(2)
                << "\n";
    else
      std::cout << "det = " << wide_str(l.det()) << ", even, positive definite: "
                << (posdef ? "yes" : "no") << ", disc form = L_ns: "
                << (iso ? "yes" : "no") << ", Gauss signature " << sig << "\n";
    return ok ? kExitOk : kExitVerifyFailure;
  }
  std::cerr << "unknown lattice action: " << action << "\n";
  return kExitUsage;
}

int cmd_verify(const Options& opt, const CartanContext& ctx, const std::string& table,
               const WeierstrassCurve& curve, Int lmax) {
  HeegnerTable tbl = load_table_csv(table, ctx);
  HeckeReport rep = verify_hecke_table(tbl, curve, lmax, ctx);

  CoeffTable series = assemble_series(tbl, ctx);
  SupportReport support = validate_support(series);
  Int coeff_failures = 0, coeff_checks = 0;
  for (Int ell : {Int(2), Int(3)}) {
    if (ell == ctx.p()) continue;
    CoeffHeckeReport crep = verify_coeff_hecke(series, curve, ell, ctx);
    coeff_failures += crep.failures();
    coeff_checks += static_cast<Int>(crep.checks.size());
  }

  bool any_nonzero = false;
  for (const auto& [key, value] : series) any_nonzero |= !value.is_zero();
  bool ok = rep.failures() == 0 && support.valid() &&
            (!any_nonzero || !support.hperp_supported) && coeff_failures == 0;
  if (tbl.m.empty())
    std::cerr << "warning: empty table, nothing checked\n";

  if (json_mode(opt)) {
    json checks = json::array();
    for (const HeckeCheck& c : rep.checks)
      checks.push_back(
          {{"D", c.D}, {"ell", c.ell}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}});
    std::cout << json({{"checks", checks},
                       {"skipped", rep.skipped},
                       {"failures", rep.failures()},
                       {"support",
                        {{"symmetry", support.symmetry_ok},
                         {"square_root_condition", support.support_ok},
                         {"hperp_supported", support.hperp_supported}}},
                       {"coefficient_checks", coeff_checks},
                       {"coefficient_failures", coeff_failures},
                       {"ok", ok}})
                     .dump(2)
              << "\n";
  } else {
    for (const HeckeCheck& c : rep.checks)
      std::cout << (c.ok ? "ok   " : "FAIL ") << "(D=" << c.D << ", ell=" << c.ell
                << "): " << c.lhs << " = " << c.rhs << "\n";
    std::cout << rep.checks.size() << " identities checked, " << rep.failures()
              << " failures, " << rep.skipped << " skipped\n";
    std::cout << "series: symmetry " << (support.symmetry_ok ? "ok" : "VIOLATED")
              << ", support " << (support.support_ok ? "ok" : "VIOLATED")
              << ", H-perp supported: " << (support.hperp_supported ? "yes" : "no")
              << "; coefficient recurrences: " << coeff_checks << " checked, "
              << coeff_failures << " failures\n";
  }
  return ok ? kExitOk : kExitVerifyFailure;
}

int cmd_compare(const Options& opt, const CartanContext& ctx, const std::string& phi_path,
                const std::string& table) {
  HeegnerTable tbl = load_table_csv(table, ctx);
  CoeffTable psi = assemble_series(tbl, ctx);
  ClassicalCoeffTable phi = load_classical_json(phi_path);
  CompareReport rep = compare_classical(phi, psi, ctx);
  if (json_mode(opt)) {
    std::cout << json({{"kappa_found", rep.kappa_found},
                       {"kappa", rep.kappa_found ? rep.kappa.str() : ""},
                       {"matched", rep.matched},
                       {"mismatches", rep.mismatches}})
                     .dump(2)
              << "\n";
  } else {
    if (rep.kappa_found)
      std::cout << "kappa = " << rep.kappa << ", " << rep.matched << " indices match, "
                << rep.mismatches.size() << " mismatches\n";
    for (const std::string& s : rep.mismatches) std::cout << "  " << s << "\n";
  }
  return (rep.kappa_found && rep.mismatches.empty()) ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-split Cartan Heegner-cycle toolkit"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--p", opt.p, "odd prime of the Cartan context")->capture_default_str();
  app.add_option("--eps", opt.eps, "non-square mod p, 1 mod 4")->capture_default_str();
  app.add_option("--search-bound", opt.search_bound,
                 "sup-norm bound for lattice searches")
      ->capture_default_str();
  app.add_option("--format", opt.format, "output format: text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  Int disc = 0;
  std::optional<Int> s_opt;
  std::string table = "fixtures/table1.csv";
  std::string curve_file;
  std::string curve_list;
  std::string phi_path;
  std::string gram_path = "fixtures/gram_p17.json";
  std::string lattice_action;
  Int lmax = 13;

  CLI::App* forms = app.add_subcommand("forms", "list form classes of a discriminant");
  forms->add_option("--disc", disc, "negative discriminant")->required();

  CLI::App* cartan = app.add_subcommand("cartan", "list Q_{ns,D,s} classes");
  cartan->add_option("--disc", disc, "negative discriminant prime to p")->required();
  Int s_value = 0;
  CLI::Option* s_flag = cartan->add_option("--s", s_value, "s with s^2 = eps*D (mod 4p^2)");

  CLI::App* lattice = app.add_subcommand("lattice", "L_ns and its stabilization");
  lattice->add_option("action", lattice_action,
                      "build | discform | stabilize | check-paper-gram")
      ->required()
      ->check(CLI::IsMember({"build", "discform", "stabilize", "check-paper-gram"}));
  lattice->add_option("--gram", gram_path, "gram fixture path")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Hecke identities on a position table");
  verify->add_option("--table", table, "CSV table D,m")->capture_default_str();
  verify->add_option("--curve", curve_list, "curve a1,a2,a3,a4,a6");
  verify->add_option("--curve-file", curve_file, "curve JSON file");
  verify->add_option("--lmax", lmax, "largest Hecke prime")->capture_default_str();

  CLI::App* compare = app.add_subcommand("compare", "match against a classical Jacobi form");
  compare->add_option("--phi", phi_path, "classical coefficient JSON")->required();
  compare->add_option("--table", table, "CSV table D,m")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (forms->parsed()) {
      if (disc >= 0 || mod_floor(disc, 4) > 1) {
        std::cerr << "usage error: --disc must be negative and 0 or 1 mod 4\n";
        return kExitUsage;
      }
      return cmd_forms(opt, disc);
    }
    CartanContext ctx(opt.p, opt.eps);
    if (cartan->parsed()) {
      if (*s_flag) s_opt = s_value;
      return cmd_cartan(opt, ctx, disc, s_opt);
    }
    if (lattice->parsed()) return cmd_lattice(opt, ctx, lattice_action, gram_path);
    if (verify->parsed()) {
      WeierstrassCurve curve =
          !curve_list.empty()
              ? parse_curve_list(curve_list)
              : load_curve_json(curve_file.empty() ? "fixtures/curve289.json"
                                                   : curve_file);
      return cmd_verify(opt, ctx, table, curve, lmax);
    }
    if (compare->parsed()) return cmd_compare(opt, ctx, phi_path, table);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
