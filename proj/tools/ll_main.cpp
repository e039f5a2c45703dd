// Unified CLI: family / fsfp / cert / mds / vdc subcommands emitting
// stable-ordered JSON reports. Exit codes: 0 ok, 2 parse, 3 parameter,
// 4 budget/timeout, 5 internal.

#include <CLI11.hpp>

#include <functional>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ll/config.hpp"
#include "ll/errors.hpp"
#include "ll/json_io.hpp"

namespace {

using ll::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ll::ParseError("cannot open `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ll::WindowSet load_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ll::ParseError("cannot open set file `" + path + "`");
  return ll::parse_window_set(in);
}

ll::IntSequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ll::ParseError("cannot open sequence file `" + path + "`");
  return ll::parse_sequence(in);
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ll::ParseError("bad JSON in `" + path + "`: " + e.what());
  }
}

std::int64_t env_int(const char* name, std::int64_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr) return fallback;
  try {
    return std::stoll(v);
  } catch (const std::exception&) {
    throw ll::ParseError(std::string("environment variable ") + name + " is not an integer");
  }
}

struct CommonOpts {
  std::string out_path;
  std::string csv_path;
  std::int64_t seed = -1;
  std::int64_t max_window = -1;
  std::int64_t precision_bits = -1;
};

void apply_config(const CommonOpts& o) {
  auto& cfg = ll::config();
  cfg.max_window = o.max_window > 0 ? o.max_window : env_int("LL_MAX_WINDOW", cfg.max_window);
  cfg.precision_bits = static_cast<int>(
      o.precision_bits > 0 ? o.precision_bits : env_int("LL_PRECISION_BITS", cfg.precision_bits));
  cfg.seed = static_cast<std::uint64_t>(
      o.seed >= 0 ? o.seed : env_int("LL_SEED", static_cast<std::int64_t>(cfg.seed)));
  ll::apply_precision_config();
}

void emit(const CommonOpts& o, Json result, const std::string& csv = "") {
  const auto& cfg = ll::config();
  Json out{{"config", Json{{"seed", cfg.seed},
                           {"max_window", cfg.max_window},
                           {"precision_bits", cfg.precision_bits}}},
           {"result", std::move(result)}};
  const std::string text = out.dump(2) + "\n";
  if (o.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw ll::ParamError("cannot write `" + o.out_path + "`");
    f << text;
  }
  if (!o.csv_path.empty()) {
    if (csv.empty()) throw ll::ParamError("this subcommand has no CSV emitter");
    std::ofstream f(o.csv_path, std::ios::binary);
    if (!f) throw ll::ParamError("cannot write `" + o.csv_path + "`");
    f << csv;
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw ll::ParseError("bad integer `" + item + "` in list");
    }
  }
  return out;
}

std::vector<ll::FamilySpec> parse_family_list(const std::string& text) {
  std::vector<ll::FamilySpec> out;
  if (text.empty()) return out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(ll::family_from_compact(item));
  return out;
}

// --- subcommand option bags -------------------------------------------

struct FamilyCmd {
  std::string set_path, family, params, relax;
  std::string shifts, dilations;
  std::int64_t trials = 100;
};

struct FsfpCmd {
  std::string seq_path, set_path, family, params, tails;
  std::int64_t window = 0, depth = 1, budget = 0;
  std::int64_t pws_gap = 0, pws_span = 0;  // --g / --L shorthand
};

struct CertCmd {
  std::string file, set_path, family, params;
  std::int64_t depth = 1, budget = 0;
  int subset_bound = 0;
};

struct MdsCmd {
  std::string system, alpha = "golden", p = "1/2", a, b, c, order = "1", eps = "1/100";
  std::string report_path, families;
  std::int64_t m = 2, r = 1, nmax = 64, power = 2;
};

struct VdcCmd {
  std::string kind = "random";
  std::int64_t dim = 8, len = 64, block = 0, dmax = 0;
};

ll::MpsSpec build_system(const MdsCmd& c) {
  if (c.system == "cyclic") return ll::CyclicRotation{c.m, c.r};
  if (c.system == "torus") return ll::TorusRotation{ll::torus_alpha(c.alpha), c.alpha};
  if (c.system == "doubling") return ll::DoublingMap{};
  if (c.system == "bernoulli") return ll::BernoulliShift{ll::parse_rational(c.p), 1};
  throw ll::ParamError("unknown system `" + c.system +
                       "` (want cyclic|torus|doubling|bernoulli)");
}

std::vector<ll::EventSet> build_events(const ll::MpsSpec& sys, const MdsCmd& c,
                                       std::size_t needed) {
  std::vector<ll::EventSet> events;
  for (const std::string* s : {&c.a, &c.b, &c.c}) {
    if (s->empty()) continue;
    events.push_back(ll::parse_event(sys, *s));
  }
  if (events.size() < 2) throw ll::ParamError("need at least --A and --B events");
  while (events.size() < needed) events.push_back(events.back());  // repeat last, documented
  if (events.size() > needed) events.resize(needed);
  return events;
}

std::string mixing_csv(const ll::WindowSet& m) {
  std::ostringstream out;
  out << "n,in_mixing\n";
  for (std::int64_t n = 1; n <= m.window(); ++n)
    out << n << ',' << (m.contains(n) ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windowed largeness families, FS/FP subsystems, essential-set certificates "
               "and mixing diagnostics"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--out", common.out_path, "write the JSON report here instead of stdout");
  app.add_option("--csv", common.csv_path, "side CSV output (where supported)");
  app.add_option("--seed", common.seed, "RNG seed (env LL_SEED)");
  app.add_option("--max-window", common.max_window, "largest admissible window (env LL_MAX_WINDOW)");
  app.add_option("--precision-bits", common.precision_bits,
                 "torus mantissa bits (env LL_PRECISION_BITS)");

  FamilyCmd fam;
  auto* family = app.add_subcommand("family", "largeness family checks");
  auto* fam_check = family->add_subcommand("check", "decide the windowed proxy of A in F");
  auto* fam_dual = family->add_subcommand("dual", "decide membership in the dual family F*");
  auto* fam_ramsey = family->add_subcommand("ramsey", "empirical Ramsey-property probe");
  auto* fam_inv = family->add_subcommand("invariance", "shift/dilation invariance probe");
  for (auto* sc : {fam_check, fam_dual, fam_ramsey, fam_inv}) {
    sc->add_option("--set", fam.set_path, "set file")->required();
    sc->add_option("--family", fam.family, "family name")->required();
    sc->add_option("--params", fam.params, "family parameters k=v,...");
  }
  fam_ramsey->add_option("--trials", fam.trials, "number of random 2-colorings");
  fam_ramsey->add_option("--relax", fam.relax, "relaxation overrides k=v,...");
  fam_inv->add_option("--shifts", fam.shifts, "comma list of shifts");
  fam_inv->add_option("--dilations", fam.dilations, "comma list of dilation factors");

  FsfpCmd fs;
  auto* fsfp = app.add_subcommand("fsfp", "finite sums/products and sum subsystems");
  auto* fs_sums = fsfp->add_subcommand("sums", "distinct subset sums inside a window");
  auto* fs_products = fsfp->add_subcommand("products", "distinct subset products");
  auto* fs_subsystem = fsfp->add_subcommand("subsystem", "FS/FP sum-subsystem search");
  auto* fs_minimal = fsfp->add_subcommand("minimal", "FS-tail minimality diagnostic");
  for (auto* sc : {fs_sums, fs_products, fs_subsystem, fs_minimal})
    sc->add_option("--seq", fs.seq_path, "sequence file")->required();
  fs_sums->add_option("--window", fs.window, "window N")->required();
  fs_products->add_option("--window", fs.window, "window N")->required();
  fs_minimal->add_option("--window", fs.window, "window N")->required();
  fs_subsystem->add_option("--set", fs.set_path, "target set file")->required();
  fs_subsystem->add_option("--depth", fs.depth, "number of blocks")->required();
  fs_subsystem->add_option("--budget", fs.budget, "block visit budget");
  fs_minimal->add_option("--family", fs.family, "family name")->required();
  fs_minimal->add_option("--params", fs.params, "family parameters");
  fs_minimal->add_option("--g", fs.pws_gap, "pws gap (shorthand for --params g=...)");
  fs_minimal->add_option("--L", fs.pws_span, "pws span (shorthand for --params L=...)");
  fs_minimal->add_option("--tails", fs.tails, "tail starts, default 1,2,...");

  CertCmd cc;
  auto* cert = app.add_subcommand("cert", "essential-set certificates");
  auto* cert_vc = cert->add_subcommand("verify-chain", "re-validate a chain certificate");
  cert_vc->add_option("file", cc.file, "certificate JSON")->required();
  auto* cert_vt = cert->add_subcommand("verify-tree", "re-validate a function tree");
  cert_vt->add_option("file", cc.file, "tree JSON")->required();
  cert_vt->add_option("--family", cc.family, "family name (overrides the file's family key)");
  cert_vt->add_option("--params", cc.params, "family parameters");
  cert_vt->add_option("--subset-bound", cc.subset_bound, "intersection size bound");
  auto* cert_fc = cert->add_subcommand("find-chain", "search for a chain certificate");
  cert_fc->add_option("--set", cc.set_path, "target set file")->required();
  cert_fc->add_option("--family", cc.family, "family name")->required();
  cert_fc->add_option("--params", cc.params, "family parameters");
  cert_fc->add_option("--depth", cc.depth, "chain length")->required();
  cert_fc->add_option("--budget", cc.budget, "candidate budget");

  MdsCmd md;
  auto* mds = app.add_subcommand("mds", "measure-preserving system diagnostics");
  auto* mds_cor = mds->add_subcommand("correlate", "correlation sequence and mixing set");
  auto* mds_cls = mds->add_subcommand("classify", "classify a stored mixing set");
  auto* mds_pow = mds->add_subcommand("power", "compare T with T^n");
  for (auto* sc : {mds_cor, mds_pow}) {
    sc->add_option("--system", md.system, "cyclic|torus|doubling|bernoulli")->required();
    sc->add_option("--m", md.m, "cyclic modulus");
    sc->add_option("--r", md.r, "cyclic step");
    sc->add_option("--alpha", md.alpha, "torus alpha (golden|sqrt2m1|decimal)");
    sc->add_option("--p", md.p, "bernoulli p");
    sc->add_option("--A", md.a, "event A_0")->required();
    sc->add_option("--B", md.b, "event A_1")->required();
    sc->add_option("--C", md.c, "event A_2");
    sc->add_option("--eps", md.eps, "mixing tolerance epsilon");
    sc->add_option("--nmax", md.nmax, "window for n");
  }
  mds_cor->add_option("--order", md.order, "exponent list n_1<...<n_k (default 1)");
  mds_cor->add_option("--families", md.families,
                      "families for inline classification, e.g. pws:2:100,ipdepth:3");
  mds_cls->add_option("file", md.report_path, "correlate report JSON")->required();
  mds_cls->add_option("--families", md.families, "families, e.g. pws:2:100,ipdepth:3");
  mds_pow->add_option("--n", md.power, "the power")->required();
  mds_pow->add_option("--families", md.families, "families for classification");

  VdcCmd vd;
  auto* vdc = app.add_subcommand("vdc", "van der Corput inequality demonstrations");
  auto* vdc_demo = vdc->add_subcommand("demo", "evaluate the telescoping bound");
  vdc_demo->add_option("--kind", vd.kind, "orthonormal|constant|alternating|random");
  vdc_demo->add_option("--dim", vd.dim, "vector dimension");
  vdc_demo->add_option("--len", vd.len, "sequence length M");
  vdc_demo->add_option("--block", vd.block, "block size N (default M)");
  vdc_demo->add_option("--dmax", vd.dmax, "also report shifted correlations up to d");

  // global flags remain usable after subcommand arguments
  const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (auto* sub : a->get_subcommands({})) enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    Json err{{"error", Json{{"code", 2}, {"kind", "cli"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  }

  try {
    apply_config(common);

    if (fam_check->parsed() || fam_dual->parsed()) {
      const ll::WindowSet a = load_set(fam.set_path);
      const ll::FamilySpec spec = ll::make_family(fam.family, ll::parse_kv_list(fam.params));
      const ll::FamilyVerdict v =
          fam_check->parsed() ? ll::family_check(a, spec) : ll::dual_check(a, spec);
      emit(common, ll::verdict_to_json(v));
    } else if (fam_ramsey->parsed()) {
      const ll::WindowSet a = load_set(fam.set_path);
      const ll::FamilySpec spec = ll::make_family(fam.family, ll::parse_kv_list(fam.params));
      const ll::Relaxation relax = ll::parse_relaxation(ll::parse_kv_list(fam.relax));
      const ll::RamseyReport rep =
          ll::ramsey_probe(a, spec, fam.trials, relax, ll::config().seed);
      emit(common, ll::ramsey_to_json(rep), ll::ramsey_csv(rep));
    } else if (fam_inv->parsed()) {
      const ll::WindowSet a = load_set(fam.set_path);
      const ll::FamilySpec spec = ll::make_family(fam.family, ll::parse_kv_list(fam.params));
      const auto rep = ll::invariance_probe(spec, a, parse_int_list(fam.shifts),
                                            parse_int_list(fam.dilations));
      emit(common, ll::invariance_to_json(rep));
    } else if (fs_sums->parsed() || fs_products->parsed()) {
      const ll::IntSequence xs = load_sequence(fs.seq_path);
      const bool products = fs_products->parsed();
      const ll::FsSystem sys = products ? ll::finite_products(xs, fs.window)
                                        : ll::finite_sums(xs, fs.window);
      emit(common, ll::fs_system_to_json(sys, xs, products));
    } else if (fs_subsystem->parsed()) {
      const ll::IntSequence xs = load_sequence(fs.seq_path);
      const ll::WindowSet a = load_set(fs.set_path);
      const auto outcome =
          ll::build_fs_fp_subsystem(xs, a, static_cast<std::size_t>(fs.depth), fs.budget);
      emit(common, ll::subsystem_to_json(outcome));
      if (outcome.failure && outcome.failure->budget_exhausted)
        return static_cast<int>(ll::ExitCode::Budget);
    } else if (fs_minimal->parsed()) {
      const ll::IntSequence xs = load_sequence(fs.seq_path);
      auto kv = ll::parse_kv_list(fs.params);
      if (fs.pws_gap > 0) kv["g"] = std::to_string(fs.pws_gap);
      if (fs.pws_span > 0) kv["L"] = std::to_string(fs.pws_span);
      const ll::FamilySpec spec = ll::make_family(fs.family, kv);
      std::vector<std::size_t> tails;
      if (fs.tails.empty()) {
        for (std::size_t m = 1; m <= xs.size(); ++m) tails.push_back(m);
      } else {
        for (auto t : parse_int_list(fs.tails)) tails.push_back(static_cast<std::size_t>(t));
      }
      emit(common, ll::minimality_to_json(ll::minimality_diagnostic(xs, spec, fs.window, tails)));
    } else if (cert_vc->parsed()) {
      const ll::ChainCertificate c = ll::chain_cert_from_json(load_json(cc.file));
      const ll::ChainReport rep = ll::verify_chain(c);
      emit(common, ll::chain_report_to_json(rep), ll::chain_csv(rep));
      if (!rep.pass) return static_cast<int>(ll::ExitCode::Param);
    } else if (cert_vt->parsed()) {
      const Json j = load_json(cc.file);
      const ll::FunctionTree t = ll::tree_from_json(j);
      ll::FamilySpec spec;
      if (!cc.family.empty())
        spec = ll::make_family(cc.family, ll::parse_kv_list(cc.params));
      else if (j.contains("family"))
        spec = ll::family_from_json(j.at("family"));
      else
        throw ll::ParamError("tree file has no family key; pass --family/--params");
      const ll::TreeReport rep = ll::verify_tree(t, spec, cc.subset_bound);
      emit(common, ll::tree_report_to_json(rep));
      if (!rep.pass) return static_cast<int>(ll::ExitCode::Param);
    } else if (cert_fc->parsed()) {
      const ll::WindowSet a = load_set(cc.set_path);
      const ll::FamilySpec spec = ll::make_family(cc.family, ll::parse_kv_list(cc.params));
      const auto outcome = ll::find_chain(a, spec, cc.depth, cc.budget);
      std::string csv;
      if (outcome.certificate) csv = ll::chain_csv(ll::verify_chain(*outcome.certificate));
      emit(common, ll::chain_search_to_json(outcome), csv);
      if (outcome.failure && outcome.failure->budget_exhausted)
        return static_cast<int>(ll::ExitCode::Budget);
    } else if (mds_cor->parsed()) {
      const ll::MpsSpec sys = build_system(md);
      const auto exps = parse_int_list(md.order);
      const auto events = build_events(sys, md, exps.size() + 1);
      const auto rep =
          ll::correlation_sequence(sys, events, exps, md.nmax, ll::parse_rational(md.eps));
      Json j = ll::correlation_to_json(rep);
      if (!md.families.empty())
        j["classification"] =
            ll::classification_to_json(ll::classify_mixing_set(rep, parse_family_list(md.families)));
      emit(common, std::move(j), ll::correlation_csv(rep));
    } else if (mds_cls->parsed()) {
      Json j = load_json(md.report_path);
      if (j.contains("result")) j = j.at("result");
      const ll::CorrelationReport rep = ll::correlation_from_json(j);
      const auto cls = ll::classify_mixing_set(rep, parse_family_list(md.families));
      emit(common, ll::classification_to_json(cls), mixing_csv(rep.mixing_set));
    } else if (mds_pow->parsed()) {
      const ll::MpsSpec sys = build_system(md);
      const auto events = build_events(sys, md, 2);
      const auto rep = ll::power_system_check(sys, md.power, events[0], events[1],
                                              ll::parse_rational(md.eps), md.nmax,
                                              parse_family_list(md.families));
      emit(common, ll::power_to_json(rep));
    } else if (vdc_demo->parsed()) {
      const std::int64_t block = vd.block > 0 ? vd.block : vd.len;
      ll::VectorSequence xs = [&]() {
        if (vd.kind == "orthonormal") return ll::VectorSequence::orthonormal(vd.dim, vd.len);
        if (vd.kind == "constant") return ll::VectorSequence::constant(vd.dim, vd.len);
        if (vd.kind == "alternating") return ll::VectorSequence::alternating(vd.dim, vd.len);
        if (vd.kind == "random")
          return ll::VectorSequence::random(vd.dim, vd.len, ll::config().seed);
        throw ll::ParamError("unknown vdc kind `" + vd.kind + "`");
      }();
      Json j = ll::vdc_bound_to_json(ll::vdc_bound(xs, block), vd.dim, vd.len, block);
      if (vd.dmax > 0)
        j["shifted_correlations"] =
            ll::shifted_correlations_to_json(ll::shifted_correlations(xs, vd.dmax));
      emit(common, std::move(j));
    } else {
      throw ll::ParamError("no subcommand selected");
    }
  } catch (const ll::Error& e) {
    Json err{{"error",
              Json{{"code", static_cast<int>(e.code())}, {"kind", e.kind()},
                   {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    Json err{{"error", Json{{"code", 5}, {"kind", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 5;
  }
  return 0;
}
