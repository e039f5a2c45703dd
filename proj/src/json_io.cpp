#include "ll/json_io.hpp"

#include <algorithm>
#include <sstream>

#include "ll/config.hpp"
#include "ll/errors.hpp"

namespace ll {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json rat_json(const Rat& r) { return format_rational(r); }
Rat rat_from(const Json& j) { return parse_rational(j.get<std::string>()); }
}  // namespace

Json set_to_json(const WindowSet& a) {
  Json runs = Json::array();
  const auto ms = a.members();
  for (std::size_t i = 0; i < ms.size();) {
    std::size_t j = i;
    while (j + 1 < ms.size() && ms[j + 1] == ms[j] + 1) ++j;
    runs.push_back(Json::array({ms[i], ms[j]}));
    i = j + 1;
  }
  return Json{{"window", a.window()}, {"runs", runs}};
}

WindowSet set_from_json(const Json& j) {
  WindowSet out(j.at("window").get<std::int64_t>());
  for (const auto& run : j.at("runs")) {
    const std::int64_t s = run.at(0).get<std::int64_t>();
    const std::int64_t e = run.at(1).get<std::int64_t>();
    if (s > e) throw ParseError("set run out of order in JSON");
    for (std::int64_t m = s; m <= e; ++m) out.insert(m);
  }
  return out;
}

Json family_to_json(const FamilySpec& f) {
  Json params;
  std::visit(overloaded{
                 [&](const Infinite& x) { params["min_card"] = x.min_card; },
                 [&](const PiecewiseSyndetic& x) {
                   params["g"] = x.gap;
                   params["L"] = x.span;
                 },
                 [&](const UpperDensity& x) {
                   params["delta"] = rat_json(x.delta);
                   params["L"] = x.block_len;
                 },
                 [&](const APRich& x) { params["len"] = x.ap_len; },
                 [&](const ReciprocalSum& x) { params["sigma"] = rat_json(x.sigma); },
                 [&](const JSetSpec& x) {
                   params["r"] = x.num_seqs;
                   params["seq_bound"] = x.seq_bound;
                   params["block_bound"] = x.block_bound;
                 },
                 [&](const IPDepth& x) { params["k"] = x.depth; },
             },
             f.v);
  return Json{{"name", f.name()}, {"params", params}};
}

FamilySpec family_from_json(const Json& j) {
  const std::string name = j.at("name").get<std::string>();
  std::map<std::string, std::string> params;
  for (const auto& [k, v] : j.at("params").items()) {
    if (v.is_string())
      params[k] = v.get<std::string>();
    else
      params[k] = std::to_string(v.get<std::int64_t>());
  }
  return make_family(name, params);
}

Json witness_to_json(const Witness& w) {
  return std::visit(
      overloaded{
          [](const IntervalWitness& x) {
            return Json{{"kind", "interval"}, {"start", x.start}, {"end", x.end}};
          },
          [](const DensityWitness& x) {
            return Json{
                {"kind", "block"}, {"start", x.start}, {"len", x.len}, {"count", x.count}};
          },
          [](const APWitness& x) {
            return Json{{"kind", "ap"}, {"start", x.start}, {"step", x.step}, {"len", x.len}};
          },
          [](const GeneratorsWitness& x) {
            return Json{{"kind", "generators"}, {"gens", x.gens}};
          },
          [](const JSetWitness& x) {
            Json entries = Json::array();
            for (const auto& e : x.entries)
              entries.push_back(Json{{"a", e.a}, {"H", e.block}});
            return Json{{"kind", "jset"}, {"entries", entries}};
          },
      },
      w);
}

Witness witness_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval")
    return IntervalWitness{j.at("start").get<std::int64_t>(), j.at("end").get<std::int64_t>()};
  if (kind == "block")
    return DensityWitness{j.at("start").get<std::int64_t>(), j.at("len").get<std::int64_t>(),
                          j.at("count").get<std::int64_t>()};
  if (kind == "ap")
    return APWitness{j.at("start").get<std::int64_t>(), j.at("step").get<std::int64_t>(),
                     j.at("len").get<std::int64_t>()};
  if (kind == "generators")
    return GeneratorsWitness{j.at("gens").get<std::vector<std::int64_t>>()};
  if (kind == "jset") {
    JSetWitness w;
    for (const auto& e : j.at("entries"))
      w.entries.push_back(
          JEntryWitness{e.at("a").get<std::int64_t>(), e.at("H").get<std::vector<std::int64_t>>()});
    return w;
  }
  throw ParseError("unknown witness kind `" + kind + "`");
}

Json verdict_to_json(const FamilyVerdict& v) {
  Json out{{"belongs", v.belongs},
           {"family", family_to_json(v.params_echo)},
           {"window", v.window}};
  out["witness"] = v.witness ? witness_to_json(*v.witness) : Json(nullptr);
  return out;
}

FamilyVerdict verdict_from_json(const Json& j) {
  FamilyVerdict v;
  v.belongs = j.at("belongs").get<bool>();
  v.params_echo = family_from_json(j.at("family"));
  v.window = j.at("window").get<std::int64_t>();
  if (!j.at("witness").is_null()) v.witness = witness_from_json(j.at("witness"));
  return v;
}

Json ramsey_to_json(const RamseyReport& r) {
  return Json{{"trials", r.trials},
              {"successes", r.successes},
              {"fraction", r.fraction},
              {"seed", r.seed},
              {"family", family_to_json(r.family)},
              {"relaxed_family", family_to_json(r.relaxed_family)}};
}

Json invariance_to_json(const InvarianceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"op", row.op},
                        {"amount", row.amount},
                        {"params_used", family_to_json(row.params_used)},
                        {"belongs", row.belongs},
                        {"preserved", row.preserved}});
  return Json{{"base", verdict_to_json(r.base)}, {"rows", rows}};
}

Json fs_system_to_json(const FsSystem& fs, const IntSequence& generators, bool products) {
  return Json{{"kind", products ? "finite_products" : "finite_sums"},
              {"generators", generators.terms()},
              {"values", set_to_json(fs.values)},
              {"distinct", fs.values.count()},
              {"overflow_subsets", fs.overflow_subsets},
              {"duplicate_subsets", fs.duplicate_subsets}};
}

Json minimality_to_json(const MinimalityReport& r) {
  Json tails = Json::array();
  for (const auto& t : r.tails)
    tails.push_back(Json{{"tail_start", t.tail_start},
                         {"tail_gcd", t.tail_gcd},
                         {"params_used", family_to_json(t.params_used)},
                         {"belongs", t.belongs},
                         {"fs_count", t.fs_count}});
  return Json{{"tails", tails}, {"all_pass", r.all_pass}};
}

Json subsystem_to_json(const SubsystemOutcome& o) {
  Json out;
  out["blocks_visited"] = o.blocks_visited;
  if (o.result) {
    const auto& r = *o.result;
    Json blocks = Json::array();
    for (const auto& h : r.blocks.blocks()) blocks.push_back(h);
    out["result"] = Json{{"blocks", blocks},
                         {"ys", r.ys.terms()},
                         {"fs_set", set_to_json(r.fs_set)},
                         {"fp_set", set_to_json(r.fp_set)},
                         {"target_verified", r.target_verified},
                         {"unchecked_conditions", r.unchecked_conditions}};
  } else {
    out["result"] = Json(nullptr);
  }
  if (o.failure) {
    const auto& f = *o.failure;
    out["failure"] = Json{{"deepest_level", f.deepest_level},
                          {"budget_exhausted", f.budget_exhausted},
                          {"blocks_visited", f.blocks_visited},
                          {"rejected_membership", f.rejected_membership},
                          {"rejected_cross_sum", f.rejected_cross_sum},
                          {"rejected_cross_product", f.rejected_cross_product},
                          {"detail", f.detail}};
  } else {
    out["failure"] = Json(nullptr);
  }
  return out;
}

Json chain_cert_to_json(const ChainCertificate& c) {
  Json chain = Json::array();
  for (const auto& s : c.chain) chain.push_back(set_to_json(s));
  Json shift_map = Json::array();
  for (const auto& [key, m] : c.shift_map)
    shift_map.push_back(Json::array({key.first, key.second, m}));
  return Json{{"window", c.target.window()},
              {"target", set_to_json(c.target)},
              {"family", family_to_json(c.family)},
              {"chain", chain},
              {"shift_map", shift_map}};
}

ChainCertificate chain_cert_from_json(const Json& j) {
  WindowSet target = j.contains("target") && !j.at("target").is_null()
                         ? set_from_json(j.at("target"))
                         : WindowSet::full(j.at("window").get<std::int64_t>());
  std::vector<WindowSet> chain;
  for (const auto& s : j.at("chain")) chain.push_back(set_from_json(s));
  ChainCertificate cert(std::move(target), std::move(chain), family_from_json(j.at("family")));
  for (const auto& entry : j.at("shift_map")) {
    if (!entry.is_array() || entry.size() != 3)
      throw ParseError("shift_map entries must be [level, member, target] triples");
    cert.shift_map[{entry.at(0).get<std::int64_t>(), entry.at(1).get<std::int64_t>()}] =
        entry.at(2).get<std::int64_t>();
  }
  return cert;
}

Json chain_report_to_json(const ChainReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels)
    levels.push_back(
        Json{{"level", l.level}, {"family_pass", l.family_pass}, {"size", l.size}});
  return Json{{"pass", r.pass},
              {"failure", r.failure},
              {"levels", levels},
              {"worst_shift_margin", r.worst_shift_margin},
              {"min_effective_window", r.min_effective_window}};
}

Json tree_to_json(const FunctionTree& t) {
  Json nodes = Json::array();
  for (const auto& w : t.nodes()) nodes.push_back(w);
  Json out{{"window", t.window()},
           {"target", set_to_json(t.target())},
           {"nodes", nodes}};
  out["depth_horizon"] = t.depth_horizon() ? Json(*t.depth_horizon()) : Json(nullptr);
  return out;
}

FunctionTree tree_from_json(const Json& j) {
  std::vector<std::vector<std::int64_t>> nodes;
  for (const auto& w : j.at("nodes")) nodes.push_back(w.get<std::vector<std::int64_t>>());
  std::optional<int> horizon;
  if (j.contains("depth_horizon") && !j.at("depth_horizon").is_null())
    horizon = j.at("depth_horizon").get<int>();
  return FunctionTree(set_from_json(j.at("target")), std::move(nodes), horizon);
}

Json tree_report_to_json(const TreeReport& r) {
  Json out{{"pass", r.pass},
           {"nodes", r.nodes},
           {"interior_nodes", r.interior_nodes},
           {"shift_checks", r.shift_checks},
           {"shift_checks_window_skipped", r.shift_checks_window_skipped},
           {"family_checks", r.family_checks},
           {"family_checks_frontier_skipped", r.family_checks_frontier_skipped}};
  if (r.violation) {
    out["violation"] = Json{{"condition", r.violation->condition},
                            {"node", r.violation->node},
                            {"letter", r.violation->letter},
                            {"detail", r.violation->detail}};
  } else {
    out["violation"] = Json(nullptr);
  }
  return out;
}

Json correspondence_to_json(const CorrespondenceReport& r) {
  return Json{{"pass", r.pass},
              {"failure", r.failure},
              {"sets_checked", r.sets_checked},
              {"shift_conditions_checked", r.shift_conditions_checked},
              {"shift_conditions_horizon_skipped", r.shift_conditions_horizon_skipped}};
}

Json chain_search_to_json(const ChainSearchOutcome& o) {
  Json out;
  out["certificate"] = o.certificate ? chain_cert_to_json(*o.certificate) : Json(nullptr);
  if (o.failure) {
    out["failure"] = Json{{"failed_level", o.failure->failed_level},
                          {"candidates_tried", o.failure->candidates_tried},
                          {"budget_exhausted", o.failure->budget_exhausted},
                          {"detail", o.failure->detail}};
  } else {
    out["failure"] = Json(nullptr);
  }
  return out;
}

Json system_to_json(const MpsSpec& s) {
  return std::visit(
      overloaded{
          [](const CyclicRotation& x) {
            return Json{{"kind", "cyclic"}, {"m", x.modulus}, {"r", x.step}};
          },
          [](const TorusRotation& x) {
            return Json{{"kind", "torus"},
                        {"alpha", format_bigfloat(x.alpha)},
                        {"alpha_label", x.label}};
          },
          [](const DoublingMap& x) { return Json{{"kind", "doubling"}, {"expo", x.expo}}; },
          [](const BernoulliShift& x) {
            return Json{{"kind", "bernoulli"}, {"p", rat_json(x.p)}, {"stride", x.stride}};
          },
      },
      s);
}

Json event_to_json(const EventSet& e) {
  return std::visit(
      overloaded{
          [](const ResidueSet& x) { return Json{{"kind", "residues"}, {"values", x.residues}}; },
          [](const RatIntervals& x) {
            Json parts = Json::array();
            for (const auto& [l, r] : x.parts)
              parts.push_back(Json::array({rat_json(l), rat_json(r)}));
            return Json{{"kind", "intervals"}, {"parts", parts}};
          },
          [](const FloatIntervals& x) {
            Json parts = Json::array();
            for (const auto& [l, r] : x.parts)
              parts.push_back(Json::array({format_bigfloat(l), format_bigfloat(r)}));
            return Json{{"kind", "intervals_hp"}, {"parts", parts}};
          },
          [](const CylinderSet& x) {
            std::string sym;
            for (auto s : x.symbols) sym += s == 1 ? '1' : '0';
            return Json{{"kind", "cylinder"}, {"offset", x.offset}, {"symbols", sym}};
          },
      },
      e);
}

Json measure_to_json(const MeasureValue& m) {
  Json out{{"exact", m.exact}, {"approx", format_bigfloat(m.f)}};
  out["value"] = m.exact ? Json(format_rational(m.r)) : Json(nullptr);
  return out;
}

Json correlation_to_json(const CorrelationReport& r) {
  Json events = Json::array();
  for (const auto& e : r.events) events.push_back(event_to_json(e));
  Json entries = Json::array();
  for (const auto& en : r.entries) {
    Json e{{"n", en.n},
           {"exact", en.exact},
           {"approx", format_bigfloat(en.f)},
           {"in_mixing", en.in_mixing},
           {"borderline", en.borderline}};
    e["value"] = en.exact ? Json(format_rational(en.r)) : Json(nullptr);
    entries.push_back(e);
  }
  return Json{{"system", system_to_json(r.system)},
              {"events", events},
              {"exponents", r.exponents},
              {"n_max", r.n_max},
              {"epsilon", rat_json(r.epsilon)},
              {"product_target", measure_to_json(r.product_target)},
              {"entries", entries},
              {"mixing_set", set_to_json(r.mixing_set)}};
}

CorrelationReport correlation_from_json(const Json& j) {
  CorrelationReport r;
  r.n_max = j.at("n_max").get<std::int64_t>();
  r.epsilon = rat_from(j.at("epsilon"));
  r.mixing_set = set_from_json(j.at("mixing_set"));
  for (const auto& e : j.at("entries")) {
    CorrelationEntry en;
    en.n = e.at("n").get<std::int64_t>();
    en.exact = e.at("exact").get<bool>();
    if (en.exact) en.r = rat_from(e.at("value"));
    en.f = BigFloat(e.at("approx").get<std::string>());
    en.in_mixing = e.at("in_mixing").get<bool>();
    en.borderline = e.at("borderline").get<bool>();
    r.entries.push_back(en);
  }
  return r;
}

namespace {
Json boundary_to_json(const BoundaryStats& b) {
  return Json{{"count", b.count}, {"max_gap", b.max_gap}, {"density", b.density}};
}
}  // namespace

Json classification_to_json(const MixingClassification& c) {
  Json duals = Json::array();
  for (const auto& [f, ok] : c.dual_verdicts)
    duals.push_back(Json{{"family", family_to_json(f)}, {"dual_belongs", ok}});
  Json out{{"mixing", boundary_to_json(c.mixing)},
           {"complement", boundary_to_json(c.complement_stats)},
           {"dual_verdicts", duals}};
  out["cofinite_from"] = c.cofinite_from ? Json(*c.cofinite_from) : Json(nullptr);
  return out;
}

Json power_to_json(const PowerCheckReport& r) {
  return Json{{"power", r.power},
              {"degenerate", r.degenerate},
              {"base", correlation_to_json(r.base)},
              {"powered", correlation_to_json(r.powered)},
              {"base_classification", classification_to_json(r.base_cls)},
              {"powered_classification", classification_to_json(r.powered_cls)},
              {"subset_holds", r.subset_holds},
              {"equality_holds", r.equality_holds}};
}

Json vdc_bound_to_json(const VdcBound& b, std::int64_t dim, std::int64_t len,
                       std::int64_t block) {
  return Json{{"lhs", b.lhs},
              {"rhs", b.rhs},
              {"holds", b.holds},
              {"dim", dim},
              {"len", len},
              {"block", block}};
}

Json shifted_correlations_to_json(const std::vector<ShiftedCorrelationRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(Json{{"d", r.d}, {"average", r.average}});
  return out;
}

std::string correlation_csv(const CorrelationReport& r) {
  std::ostringstream out;
  out << "n,value,exact,in_mixing,borderline\n";
  for (const auto& e : r.entries)
    out << e.n << ',' << (e.exact ? format_rational(e.r) : format_bigfloat(e.f)) << ','
        << (e.exact ? 1 : 0) << ',' << (e.in_mixing ? 1 : 0) << ',' << (e.borderline ? 1 : 0)
        << '\n';
  return out.str();
}

std::string chain_csv(const ChainReport& r) {
  std::ostringstream out;
  out << "level,size,family_pass\n";
  for (const auto& l : r.levels)
    out << l.level << ',' << l.size << ',' << (l.family_pass ? 1 : 0) << '\n';
  return out.str();
}

std::string ramsey_csv(const RamseyReport& r) {
  std::ostringstream out;
  out << "trials,successes,fraction,seed\n";
  out << r.trials << ',' << r.successes << ',' << r.fraction << ',' << r.seed << '\n';
  return out.str();
}

std::map<std::string, std::string> parse_kv_list(const std::string& text) {
  std::map<std::string, std::string> out;
  if (text.empty()) return out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError("expected k=v in parameter list, got `" + item + "`");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

FamilySpec family_from_compact(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.empty()) throw ParseError("empty family descriptor");
  const std::string& name = parts[0];
  const auto need = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw ParseError("family `" + name + "` wants " + std::to_string(n) +
                       " positional parameters");
  };
  std::map<std::string, std::string> kv;
  if (name == "infinite") {
    need(1);
    kv["min_card"] = parts[1];
  } else if (name == "pws") {
    need(2);
    kv["g"] = parts[1];
    kv["L"] = parts[2];
  } else if (name == "density") {
    need(2);
    kv["delta"] = parts[1];
    kv["L"] = parts[2];
  } else if (name == "ap") {
    need(1);
    kv["len"] = parts[1];
  } else if (name == "recip") {
    need(1);
    kv["sigma"] = parts[1];
  } else if (name == "jset") {
    need(3);
    kv["r"] = parts[1];
    kv["seq_bound"] = parts[2];
    kv["block_bound"] = parts[3];
  } else if (name == "ipdepth") {
    need(1);
    kv["k"] = parts[1];
  } else {
    throw ParseError("unknown family `" + name + "`");
  }
  return make_family(name, kv);
}

EventSet parse_event(const MpsSpec& sys, const std::string& text) {
  if (text.rfind("cyl:", 0) == 0) {
    const auto second = text.find(':', 4);
    if (second == std::string::npos)
      throw ParseError("cylinder event wants cyl:OFFSET:SYMBOLS, got `" + text + "`");
    CylinderSet c;
    try {
      c.offset = std::stoll(text.substr(4, second - 4));
    } catch (const std::exception&) {
      throw ParseError("bad cylinder offset in `" + text + "`");
    }
    for (char ch : text.substr(second + 1)) {
      if (ch != '0' && ch != '1') throw ParseError("cylinder symbols must be 0/1");
      c.symbols.push_back(ch - '0');
    }
    return c;
  }
  if (text.find(':') != std::string::npos) {
    // interval list l:r,l:r
    std::vector<std::pair<Rat, Rat>> parts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos)
        throw ParseError("interval wants l:r, got `" + item + "`");
      parts.emplace_back(parse_rational(item.substr(0, colon)),
                         parse_rational(item.substr(colon + 1)));
    }
    if (std::holds_alternative<TorusRotation>(sys)) {
      FloatIntervals fi;
      for (const auto& [l, r] : parts) fi.parts.emplace_back(rat_to_bigfloat(l),
                                                             rat_to_bigfloat(r));
      return fi;
    }
    return RatIntervals{parts};
  }
  // residue list
  ResidueSet r;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      r.residues.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw ParseError("bad residue `" + item + "`");
    }
  }
  std::sort(r.residues.begin(), r.residues.end());
  return r;
}

}  // namespace ll
