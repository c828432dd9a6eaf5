#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "kmw/cartan.hpp"
#include "kmw/error.hpp"
#include "kmw/localfield.hpp"
#include "kmw/parallel.hpp"
#include "kmw/symmetrizer.hpp"
#include "kmw/toruscover.hpp"
#include "kmw/verify.hpp"
#include "kmw/weyl.hpp"
#include "kmw/whittaker.hpp"

using namespace kmw;
using io::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct Common {
  std::string format = "text";
  int threads = 0;
};

struct DatumSource {
  std::string file;
  std::string type;
  int n = 1;
  std::vector<int64_t> form;

  void add(CLI::App* app) {
    app->add_option("--datum", file, "datum JSON file {\"cartan\", \"form\", \"n\"}");
    app->add_option("--type", type, "built-in type label such as A2, B2, A1(1)");
    app->add_option("--n", n, "cover degree (with --type)")->check(CLI::PositiveNumber);
    app->add_option("--form", form, "values Q(a_i^vee) (with --type); standard form if omitted");
  }
  MetaplecticDatum get() const {
    if (file.empty() == type.empty()) throw InvalidInput("give exactly one of --datum and --type");
    if (!file.empty()) return io::load_datum(file);
    RootDatum d = RootDatum::simply_connected(cartan_from_label(type));
    QuadraticForm q = form.empty() ? QuadraticForm::standard(d) : QuadraticForm::from_values(d, form);
    return MetaplecticDatum(d, q, n);
  }
};

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string vec_str(const std::vector<int64_t>& v) {
  std::string s = "(";
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

AffineType family_type(const std::vector<std::string>& fam) {
  if (fam.size() != 3) throw InvalidInput("--family takes three values: letter, N and twist, e.g. B 3 1");
  try {
    return AffineType::parse(fam[0], std::stoi(fam[1]), std::stoi(fam[2]));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidInput("--family needs integer N and twist");
  }
}

// ---- classify ----

int run_classify(const Common& c, const std::string& matrix, const std::string& label) {
  if (matrix.empty() == label.empty()) throw InvalidInput("give exactly one of --matrix and --label");
  CartanMatrix a = matrix.empty() ? cartan_from_label(label) : CartanMatrix::parse(matrix);
  Classification cl = classify(a);
  json comps = json::array();
  std::string text = to_string(cl.overall());
  for (const auto& comp : cl.components) {
    json jc = {{"nodes", comp.nodes}, {"kind", to_string(comp.kind)}, {"label", comp.label}};
    if (comp.kind == CartanKind::Affine) {
      jc["delta"] = comp.delta;
      jc["delta_dual"] = comp.delta_dual;
    }
    comps.push_back(jc);
  }
  json j = {{"kind", to_string(cl.overall())}, {"label", cl.label()}, {"components", comps}};
  if (cl.components.size() == 1) {
    const auto& comp = cl.components.front();
    if (!comp.label.empty()) text += " " + comp.label;
    if (comp.kind == CartanKind::Affine) {
      text += ", delta=" + vec_str(comp.delta) + ", delta_dual=" + vec_str(comp.delta_dual);
      j["delta"] = comp.delta;
      j["delta_dual"] = comp.delta_dual;
    }
  } else {
    text += " " + cl.label();
  }
  try {
    Symmetrization s = symmetrize(a);
    json eps = json::array();
    std::string es;
    for (const auto& e : s.eps) {
      eps.push_back(e.str());
      es += (es.empty() ? "" : ",") + e.str();
    }
    j["epsilon"] = eps;
    text += ", epsilon=(" + es + ")";
  } catch (const NotSymmetrizable& e) {
    j["epsilon"] = nullptr;
    j["not_symmetrizable_cycle"] = e.cycle();
    text += ", not symmetrizable";
  }
  emit(c, j, text + "\n");
  return 0;
}

// ---- affine-table ----

json affine_json(const AffineData& d) {
  std::vector<std::vector<int64_t>> rows(d.cartan.size(), std::vector<int64_t>(d.cartan.size()));
  for (int i = 0; i < d.cartan.size(); ++i)
    for (int k = 0; k < d.cartan.size(); ++k) rows[i][k] = d.cartan(i, k);
  return {{"label", d.type.label()}, {"ell", d.type.ell()},       {"cartan", rows},
          {"delta", d.delta},        {"delta_dual", d.delta_dual}, {"exponents", d.exponents}};
}

std::string affine_text(const AffineData& d) {
  std::vector<int64_t> ex(d.exponents.begin(), d.exponents.end());
  return d.type.label() + ": delta=" + vec_str(d.delta) + " delta_dual=" + vec_str(d.delta_dual) +
         " exponents=" + vec_str(ex) + "\n";
}

int run_affine_table(const Common& c, const std::vector<std::string>& fam, bool all) {
  if (all == !fam.empty()) throw InvalidInput("give exactly one of --family and --all");
  if (!all) {
    AffineData d = affine_table(family_type(fam));
    emit(c, affine_json(d), affine_text(d));
    return 0;
  }
  json arr = json::array();
  std::string text;
  for (const auto& f : affine_families())
    for (const auto& t : f.smallest(2)) {
      AffineData d = affine_table(t);
      json jd = affine_json(d);
      jd["family"] = f.id;
      arr.push_back(jd);
      text += f.id + " " + affine_text(d);
    }
  emit(c, arr, text);
  return 0;
}

// ---- metaplectic-type ----

int run_metaplectic_type(const Common& c, const std::vector<std::string>& fam, const DatumSource& src, int n,
                         bool table, const std::string& golden) {
  if (table) {
    auto computed = compute_type_table(12);
    json j = io::type_table_to_json(computed);
    std::string text;
    for (const auto& r : computed) {
      text += r.family + " ell=" + std::to_string(r.ell) + " Q=" + vec_str(r.form) + ":";
      for (const auto& [k, label] : r.types) text += " " + std::to_string(k) + ":" + label;
      text += "\n";
    }
    CheckOutcome o = check_type_table(io::load_type_table(golden.empty() ? io::default_golden_path() : golden));
    j["golden"] = o.pass ? "pass" : "fail";
    j["detail"] = o.detail;
    text += std::string("golden table: ") + (o.pass ? "pass" : "fail") + " (" + o.detail + ")\n";
    emit(c, j, text);
    return o.pass ? 0 : kExitFail;
  }
  MetaplecticDatum m;
  if (!fam.empty()) {
    if (!src.file.empty() || !src.type.empty()) throw InvalidInput("give one of --family, --datum and --type");
    RootDatum d = RootDatum::simply_connected(family_type(fam).cartan());
    m = MetaplecticDatum(d, QuadraticForm::standard(d), n);
  } else {
    DatumSource s = src;
    if (s.file.empty()) s.n = n;
    m = s.get();
  }
  Classification cl = classify(m.tilde_cartan());
  json j = {{"type", cl.label()},
            {"kind", to_string(cl.overall())},
            {"n", m.n()},
            {"form", m.form().values()},
            {"n_i", m.n_values()},
            {"tilde_cartan", io::datum_to_json(MetaplecticDatum::plain(m.tilde_cartan(), 1))["cartan"]}};
  emit(c, j, cl.label() + "\n");
  return 0;
}

// ---- gauss ----

int run_gauss(const Common& c, int64_t q, int n) {
  GaussTable t(q, n);
  json gs = json::array();
  std::ostringstream text;
  text << std::setprecision(12);
  for (int k = 0; k < n; ++k) {
    auto z = t.g_complex(k);
    gs.push_back({{"k", k}, {"exact", t.g(k).str()}, {"re", z.real()}, {"im", z.imag()}});
    text << "g_" << k << " = " << t.g(k).str() << " ~ " << z.real() << (z.imag() < 0 ? " - " : " + ")
         << std::abs(z.imag()) << "i\n";
  }
  auto bad = t.check_relations();
  json j = {{"q", q}, {"n", n}, {"zeta_order", t.field().order()}, {"g", gs},
            {"relations", bad.empty() ? "pass" : "fail"}, {"failures", bad}};
  text << "z = exp(2 pi i / " << t.field().order() << "); relations g_0 = -1, g_k g_-k = q: "
       << (bad.empty() ? "pass" : "fail") << "\n";
  emit(c, j, text.str());
  return bad.empty() ? 0 : kExitFail;
}

// ---- symbol-check ----

int run_symbol_check(const Common& c, int64_t q, int n, int range) {
  LocalField f(q, n);
  SteinbergReport r = steinberg_check(f, range);
  json j = {{"q", q}, {"n", n}, {"valuation_range", range}, {"checked", r.checked},
            {"violations", r.violations}, {"result", r.ok() ? "pass" : "fail"}};
  std::string text = "Steinberg symbol identities over F_" + std::to_string(q) + "((pi)), n=" + std::to_string(n) +
                     ": " + std::to_string(r.checked) + " checked, " + (r.ok() ? "pass" : "fail") + "\n";
  for (const auto& v : r.violations) text += "  " + v + "\n";
  emit(c, j, text);
  return r.ok() ? 0 : kExitFail;
}

// ---- cover-verify ----

struct CoverArgs {
  std::string type;
  int64_t q = 13;
  int n = 2;
  uint64_t seed = 20240611;
  int samples = 40;
};

void add_cover_options(CLI::App* app, CoverArgs& a) {
  app->add_option("--type", a.type, "finite type label, e.g. B2")->required();
  app->add_option("--q", a.q, "residue field size, q = 1 mod 2n");
  app->add_option("--n", a.n, "cover degree")->check(CLI::PositiveNumber);
  app->add_option("--seed", a.seed, "seed for the random samples");
  app->add_option("--samples", a.samples, "random samples per check")->check(CLI::PositiveNumber);
}

int run_cover(const Common& c, const CoverArgs& a) {
  CoverReport r = verify_torus_cover(finite_cartan(a.type), a.q, a.n, a.seed, a.samples);
  json checks = json::array();
  std::string text;
  for (const auto& ch : r.checks) {
    checks.push_back({{"name", ch.name}, {"checked", ch.checked}, {"counterexamples", ch.counterexamples}});
    text += std::string(ch.ok() ? "pass " : "FAIL ") + ch.name + " (" + std::to_string(ch.checked) + ")\n";
    for (const auto& e : ch.counterexamples) text += "  " + e + "\n";
  }
  json j = {{"type", a.type}, {"q", a.q}, {"n", a.n}, {"seed", a.seed}, {"checks", checks},
            {"result", r.ok() ? "pass" : "fail"}};
  text += std::string("torus cover ") + a.type + ": " + (r.ok() ? "pass" : "fail") + "\n";
  emit(c, j, text);
  return r.ok() ? 0 : kExitFail;
}

// ---- symmetrize ----

std::optional<int64_t> opt_cap(int64_t v) { return v > 0 ? std::optional<int64_t>(v) : std::nullopt; }

int run_symmetrize(const Common& c, const DatumSource& src, const std::string& lambda, const std::string& flavor,
                   bool plain, bool identity, int64_t depth, int cap, int64_t weight_cap) {
  MetaplecticDatum m = src.get();
  StarContext ctx(m);
  Symmetrizer sym(ctx, !plain);
  std::vector<SymmetrizerReport> reports;
  if (identity) {
    if (!plain && m.n() > 1) throw InvalidInput("identity components are computed for the plain operators");
    reports.push_back(sym.check_identity_components(depth, cap, opt_cap(weight_cap)));
  } else {
    Coweight lam = lambda.empty() ? ctx.datum().zero() : io::parse_coweight(lambda, ctx.dim());
    std::vector<Flavor> flavors;
    if (flavor == "both")
      flavors = {Flavor::Spherical, Flavor::Whittaker};
    else
      flavors = {parse_flavor(flavor)};
    for (Flavor f : flavors) reports.push_back(sym.check_proportionality(f, lam, depth, cap, opt_cap(weight_cap)));
  }
  bool ok = true;
  json arr = json::array();
  std::string text;
  for (const auto& r : reports) {
    ok = ok && r.ok();
    arr.push_back(io::report_to_json(r));
    text += r.flavor + " lambda=" + r.lambda + (r.exact ? " exact" : " depth=" + std::to_string(r.depth) +
                                                                          " cap=" + std::to_string(r.cap)) +
            ": " + (r.ok() ? "pass" : "fail") + (r.stabilized ? "" : " (not stabilized)") + "\n";
    if (!r.mismatches.empty()) text += "  " + describe(r.mismatches) + "\n";
  }
  emit(c, {{"reports", arr}, {"result", ok ? "pass" : "fail"}}, text);
  return ok ? 0 : kExitFail;
}

// ---- mfactor ----

int run_mfactor(const Common& c, const DatumSource& src, const std::string& method, bool plain, int64_t depth,
                int64_t vdeg) {
  MetaplecticDatum m = src.get();
  StarContext ctx(m);
  Symmetrizer sym(ctx, !plain && m.n() > 1);
  int64_t floor = -depth * sym.depth_unit();
  std::optional<int64_t> wc;
  if (vdeg >= 0) wc = 2 * vdeg;
  std::vector<CorrectionMethod> methods;
  if (method == "all")
    methods = {CorrectionMethod::MacdonaldCt, CorrectionMethod::ExponentProduct, CorrectionMethod::ViswanathDivision};
  else
    methods = {parse_correction_method(method)};
  if (sym.finite()) methods = {CorrectionMethod::FiniteOne};
  std::vector<LatticeSeries> values;
  json jm = json::object();
  std::string text;
  for (auto meth : methods) {
    values.push_back(sym.correction_factor(meth, floor, wc));
    jm[to_string(meth)] = io::series_to_json(values.back());
    text += to_string(meth) + ": " + values.back().str() + "\n";
  }
  json mism = json::array();
  for (size_t k = 1; k < values.size(); ++k) {
    auto d = compare_series(values[0], values[k], sym.finite() ? std::nullopt : std::optional<int64_t>(floor));
    for (auto& x : io::mismatches_to_json(d)) {
      x["methods"] = to_string(methods[0]) + " vs " + to_string(methods[k]);
      mism.push_back(x);
    }
  }
  bool ok = mism.empty();
  json j = {{"floor", floor}, {"methods", jm}, {"mismatches", mism}, {"agree", ok}};
  if (values.size() > 1) text += std::string("routes agree: ") + (ok ? "pass" : "fail") + "\n";
  emit(c, j, text);
  return ok ? 0 : kExitFail;
}

// ---- whittaker ----

int run_whittaker(const Common& c, const DatumSource& src, const std::string& lambda, std::optional<int64_t> q,
                  int64_t depth, int cap, int64_t weight_cap, bool pieces) {
  MetaplecticDatum m = src.get();
  WhittakerEvaluator ev(m);
  Coweight lam = lambda.empty() ? m.datum().zero() : io::parse_coweight(lambda, m.dim());
  WhittakerOptions opt;
  opt.depth = depth;
  opt.cap = cap;
  opt.weight_cap = opt_cap(weight_cap);
  opt.q = q;
  WhittakerCrosscheck r = ev.crosscheck(lam, opt);
  json j = {{"lambda", lam.to_vector()},
            {"exact", r.hecke.exact},
            {"formal", io::series_to_json(r.hecke.formal)},
            {"crosscheck", r.ok() ? "pass" : "fail"}};
  if (!r.hecke.exact) {
    j["floor"] = r.hecke.floor;
    j["stabilized"] = r.simple.stabilized && r.hecke.stabilized;
  }
  if (r.hecke.specialized) j["specialized"] = io::specialized_to_json(*r.hecke.specialized);
  j["formal_mismatches"] = io::mismatches_to_json(r.formal_mismatches);
  j["specialized_mismatches"] = io::mismatches_to_json(r.specialized_mismatches);
  j["invariant_failures"] = r.invariant_failures;
  std::string text = "W(lambda=" + lam.str() + ") = " + r.hecke.formal.str() + "\n";
  if (r.hecke.specialized) {
    text += "specialized at q=" + std::to_string(*q) + ":\n";
    for (const auto& [mu, x] : *r.hecke.specialized) text += "  e" + mu.str() + ": " + x.str() + "\n";
  }
  if (pieces) {
    if (!ev.symmetrizer().finite()) throw InvalidInput("--pieces needs a finite datum");
    json jp = json::object();
    for (Flavor f : {Flavor::Whittaker, Flavor::Spherical}) {
      json arr = json::array();
      for (const auto& p : ev.iwahori_pieces(lam, f, opt)) {
        json e = {{"w", p.w.word()}, {"value", p.value.str()}};
        if (p.value.is_polynomial()) e["formal"] = io::series_to_json(p.value.numerator());
        if (p.specialized) e["specialized"] = io::specialized_to_json(*p.specialized);
        arr.push_back(e);
        text += to_string(f) + " w=" + io::json(p.w.word()).dump() + ": " + p.value.str() + "\n";
      }
      jp[to_string(f)] = arr;
    }
    j["pieces"] = jp;
  }
  text += std::string("crosscheck: ") + (r.ok() ? "pass" : "fail") + "\n";
  if (!r.formal_mismatches.empty()) text += "  formal: " + describe(r.formal_mismatches) + "\n";
  if (!r.specialized_mismatches.empty()) text += "  specialized: " + describe(r.specialized_mismatches) + "\n";
  for (const auto& s : r.invariant_failures) text += "  " + s + "\n";
  emit(c, j, text);
  return r.ok() ? 0 : kExitFail;
}

// ---- verify-all ----

int run_verify_all(const Common& c, bool quick, uint64_t seed, const std::vector<int>& only, const std::string& golden) {
  AcceptanceOptions opt;
  opt.quick = quick;
  opt.seed = seed;
  opt.only = only;
  for (int id : only)
    if (id < 1 || id > 14) throw InvalidInput("criterion ids are 1..14");
  opt.type_table = io::load_type_table(golden.empty() ? io::default_golden_path() : golden);
  if (c.format != "json")
    opt.on_result = [](const CriterionResult& r) {
      std::printf("[%s] %2d %-40s %8.3fs / %gs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                  r.limit, r.detail.c_str());
      std::fflush(stdout);
    };
  auto results = run_acceptance(opt);
  bool ok = true;
  json arr = json::array();
  for (const auto& r : results) {
    ok = ok && r.pass;
    // Timings vary between runs and stay out of the JSON document.
    arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"limit_seconds", r.limit}, {"detail", r.detail}});
  }
  if (c.format == "json")
    std::cout << json({{"criteria", arr}, {"result", ok ? "pass" : "fail"}}).dump(2) << "\n";
  else
    std::cout << (ok ? "pass" : "fail") << "\n";
  return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metaplectic Kac-Moody Whittaker computations"};
  app.fallthrough();
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", common.threads, "worker threads (default: KMW_THREADS or hardware)")
      ->check(CLI::NonNegativeNumber);

  std::function<int()> action;

  auto* classify_cmd = app.add_subcommand("classify", "classify a generalized Cartan matrix");
  std::string matrix, label;
  classify_cmd->add_option("--matrix", matrix, "matrix such as \"[[2,-1],[-1,2]]\"");
  classify_cmd->add_option("--label", label, "type label such as B3 or A2(2)");
  classify_cmd->callback([&] { action = [&] { return run_classify(common, matrix, label); }; });

  auto* affine_cmd = app.add_subcommand("affine-table", "null vectors and exponents of affine types");
  std::vector<std::string> family;
  bool all = false;
  affine_cmd->add_option("--family", family, "letter, N and twist, e.g. C 2 1")->expected(3);
  affine_cmd->add_flag("--all", all, "every family at its smallest two ranks");
  affine_cmd->callback([&] { action = [&] { return run_affine_table(common, family, all); }; });

  auto* mt_cmd = app.add_subcommand("metaplectic-type", "type of the metaplectic Cartan matrix");
  std::vector<std::string> mt_family;
  DatumSource mt_src;
  int mt_n = 1;
  bool mt_table = false;
  std::string golden;
  mt_cmd->add_option("--family", mt_family, "letter, N and twist, e.g. B 3 1")->expected(3);
  mt_cmd->add_option("--datum", mt_src.file, "datum JSON file");
  mt_cmd->add_option("--type", mt_src.type, "type label");
  mt_cmd->add_option("--n", mt_n, "cover degree")->check(CLI::PositiveNumber);
  mt_cmd->add_flag("--table", mt_table, "compute the whole table and compare with the golden file");
  mt_cmd->add_option("--golden", golden, "golden table path");
  mt_cmd->callback(
      [&] { action = [&] { return run_metaplectic_type(common, mt_family, mt_src, mt_n, mt_table, golden); }; });

  auto* gauss_cmd = app.add_subcommand("gauss", "exact Gauss sums g_0..g_{n-1}");
  int64_t gq = 13;
  int gn = 2;
  gauss_cmd->add_option("--q", gq, "residue field size")->required();
  gauss_cmd->add_option("--n", gn, "cover degree")->required()->check(CLI::PositiveNumber);
  gauss_cmd->callback([&] { action = [&] { return run_gauss(common, gq, gn); }; });

  auto* sym_cmd = app.add_subcommand("symbol-check", "Steinberg symbol identities of the tame symbol");
  int64_t sq = 13;
  int sn = 2, srange = 2;
  sym_cmd->add_option("--q", sq, "residue field size")->required();
  sym_cmd->add_option("--n", sn, "symbol order")->required()->check(CLI::PositiveNumber);
  sym_cmd->add_option("--range", srange, "valuations in [-range, range]")->check(CLI::NonNegativeNumber);
  sym_cmd->callback([&] { action = [&] { return run_symbol_check(common, sq, sn, srange); }; });

  CoverArgs cover_args;
  auto* cv_cmd = app.add_subcommand("cover-verify", "verify the torus cover relations");
  add_cover_options(cv_cmd, cover_args);
  cv_cmd->callback([&] { action = [&] { return run_cover(common, cover_args); }; });
  auto* cover_cmd = app.add_subcommand("cover", "torus cover commands");
  cover_cmd->require_subcommand(1);
  auto* cover_verify = cover_cmd->add_subcommand("verify", "verify the torus cover relations");
  add_cover_options(cover_verify, cover_args);
  cover_verify->callback([&] { action = [&] { return run_cover(common, cover_args); }; });

  auto* symz_cmd = app.add_subcommand("symmetrize", "Hecke symmetrizer against m times the simple symmetrizer");
  DatumSource symz_src;
  symz_src.add(symz_cmd);
  std::string symz_lambda, symz_flavor = "both";
  bool symz_plain = false, symz_identity = false;
  int64_t symz_depth = 3, symz_wc = 0;
  int symz_cap = 10;
  symz_cmd->add_option("--lambda", symz_lambda, "dominant coweight, e.g. \"1,0\"");
  symz_cmd->add_option("--flavor", symz_flavor, "spherical, whittaker or both")
      ->check(CLI::IsMember({"spherical", "whittaker", "both"}));
  symz_cmd->add_flag("--plain", symz_plain, "plain operators instead of the metaplectic ones");
  symz_cmd->add_flag("--identity", symz_identity, "compare the identity components of P and Pflat");
  symz_cmd->add_option("--depth", symz_depth, "depth in units of the minimal imaginary coroot")
      ->check(CLI::NonNegativeNumber);
  symz_cmd->add_option("--cap", symz_cap, "length cap of the Weyl group sums")->check(CLI::NonNegativeNumber);
  symz_cmd->add_option("--weight-cap", symz_wc, "drop coefficient monomials above this doubled v-weight (0: off)")
      ->check(CLI::NonNegativeNumber);
  symz_cmd->callback([&] {
    action = [&] {
      return run_symmetrize(common, symz_src, symz_lambda, symz_flavor, symz_plain, symz_identity, symz_depth,
                            symz_cap, symz_wc);
    };
  });

  auto* mf_cmd = app.add_subcommand("mfactor", "correction factor m by several routes");
  DatumSource mf_src;
  mf_src.add(mf_cmd);
  std::string mf_method = "all";
  bool mf_plain = false;
  int64_t mf_depth = 4, mf_vdeg = 12;
  mf_cmd->add_option("--method", mf_method, "macdonald_ct, exponent_product, viswanath_division or all");
  mf_cmd->add_flag("--plain", mf_plain, "plain coroots even when n > 1");
  mf_cmd->add_option("--depth", mf_depth, "depth in units of the minimal imaginary coroot")
      ->check(CLI::NonNegativeNumber);
  mf_cmd->add_option("--vdeg", mf_vdeg, "v-degree cap (-1: none)");
  mf_cmd->callback(
      [&] { action = [&] { return run_mfactor(common, mf_src, mf_method, mf_plain, mf_depth, mf_vdeg); }; });

  auto* wh_cmd = app.add_subcommand("whittaker", "metaplectic Whittaker function by two routes");
  DatumSource wh_src;
  wh_src.add(wh_cmd);
  std::string wh_lambda;
  std::optional<int64_t> wh_q;
  int64_t wh_depth = 4, wh_wc = 0;
  int wh_cap = 12;
  bool wh_pieces = false;
  wh_cmd->add_option("--lambda", wh_lambda, "dominant coweight, e.g. \"2,0\"");
  wh_cmd->add_option("--q", wh_q, "specialize at this residue field size");
  wh_cmd->add_option("--depth", wh_depth, "depth in units of the minimal imaginary coroot (affine)")
      ->check(CLI::NonNegativeNumber);
  wh_cmd->add_option("--cap", wh_cap, "length cap of the Weyl group sums (affine)")->check(CLI::NonNegativeNumber);
  wh_cmd->add_option("--weight-cap", wh_wc, "doubled v-weight cap (0: off)")->check(CLI::NonNegativeNumber);
  wh_cmd->add_flag("--pieces", wh_pieces, "also emit the Iwahori pieces of both flavors (finite data)");
  wh_cmd->callback([&] {
    action = [&] { return run_whittaker(common, wh_src, wh_lambda, wh_q, wh_depth, wh_cap, wh_wc, wh_pieces); };
  });

  auto* va_cmd = app.add_subcommand("verify-all", "run the acceptance criteria");
  bool quick = false;
  uint64_t seed = 20240611;
  std::vector<int> only;
  std::string va_golden;
  va_cmd->add_flag("--quick", quick, "smaller grids for the slowest criteria");
  va_cmd->add_option("--seed", seed, "seed for randomized checks");
  va_cmd->add_option("--only", only, "criterion ids to run")->delimiter(',');
  va_cmd->add_option("--golden", va_golden, "golden table path");
  va_cmd->callback([&] { action = [&] { return run_verify_all(common, quick, seed, only, va_golden); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (common.threads > 0) set_thread_count(common.threads);
  try {
    return action();
  } catch (const InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for the expected arguments\n";
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
