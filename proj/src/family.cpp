#include "ll/family.hpp"

#include <algorithm>
#include <random>
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

std::int64_t need_int(const std::map<std::string, std::string>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw ParamError("missing family parameter `" + key + "`");
  try {
    return std::stoll(it->second);
  } catch (const std::exception&) {
    throw ParseError("family parameter `" + key + "` = `" + it->second + "` is not an integer");
  }
}

Rat need_rat(const std::map<std::string, std::string>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw ParamError("missing family parameter `" + key + "`");
  return parse_rational(it->second);
}
}  // namespace

void FamilySpec::validate() const {
  std::visit(overloaded{
                 [](const Infinite& f) {
                   if (f.min_card < 1) throw ParamError("infinite: min_card must be >= 1");
                 },
                 [](const PiecewiseSyndetic& f) {
                   if (f.gap < 1 || f.span < 1)
                     throw ParamError("pws: gap and span must be >= 1");
                 },
                 [](const UpperDensity& f) {
                   if (f.delta <= 0 || f.delta > 1)
                     throw ParamError("density: delta must lie in (0, 1]");
                   if (f.block_len < 1) throw ParamError("density: block length must be >= 1");
                 },
                 [](const APRich& f) {
                   if (f.ap_len < 1) throw ParamError("ap: length must be >= 1");
                 },
                 [](const ReciprocalSum& f) {
                   if (f.sigma <= 0) throw ParamError("recip: sigma must be > 0");
                   if (denominator(f.sigma) > (BigInt(1) << 62))
                     throw ParamError("recip: sigma denominator too large");
                 },
                 [](const JSetSpec& f) {
                   if (f.num_seqs < 1 || f.seq_bound < 1 || f.block_bound < 1)
                     throw ParamError("jset: all parameters must be >= 1");
                   if (f.block_bound > 20)
                     throw ParamError("jset: block_bound capped at 20 (2^H enumeration)");
                 },
                 [](const IPDepth& f) {
                   if (f.depth < 1 || f.depth > 20) throw ParamError("ipdepth: depth in [1, 20]");
                 },
             },
             v);
}

std::string FamilySpec::name() const {
  return std::visit(overloaded{[](const Infinite&) { return std::string("infinite"); },
                               [](const PiecewiseSyndetic&) { return std::string("pws"); },
                               [](const UpperDensity&) { return std::string("density"); },
                               [](const APRich&) { return std::string("ap"); },
                               [](const ReciprocalSum&) { return std::string("recip"); },
                               [](const JSetSpec&) { return std::string("jset"); },
                               [](const IPDepth&) { return std::string("ipdepth"); }},
                    v);
}

std::string FamilySpec::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const Infinite& f) { out << "infinite{min_card=" << f.min_card << "}"; },
                 [&](const PiecewiseSyndetic& f) {
                   out << "pws{g=" << f.gap << ",L=" << f.span << "}";
                 },
                 [&](const UpperDensity& f) {
                   out << "density{delta=" << format_rational(f.delta) << ",L=" << f.block_len
                       << "}";
                 },
                 [&](const APRich& f) { out << "ap{len=" << f.ap_len << "}"; },
                 [&](const ReciprocalSum& f) {
                   out << "recip{sigma=" << format_rational(f.sigma) << "}";
                 },
                 [&](const JSetSpec& f) {
                   out << "jset{r=" << f.num_seqs << ",seq_bound=" << f.seq_bound
                       << ",block_bound=" << f.block_bound << "}";
                 },
                 [&](const IPDepth& f) { out << "ipdepth{k=" << f.depth << "}"; },
             },
             v);
  return out.str();
}

FamilySpec make_family(const std::string& name,
                       const std::map<std::string, std::string>& params) {
  if (name == "infinite") return FamilySpec(Infinite{need_int(params, "min_card")});
  if (name == "pws")
    return FamilySpec(PiecewiseSyndetic{need_int(params, "g"), need_int(params, "L")});
  if (name == "density")
    return FamilySpec(UpperDensity{need_rat(params, "delta"), need_int(params, "L")});
  if (name == "ap") return FamilySpec(APRich{need_int(params, "len")});
  if (name == "recip") return FamilySpec(ReciprocalSum{need_rat(params, "sigma")});
  if (name == "jset")
    return FamilySpec(JSetSpec{static_cast<int>(need_int(params, "r")),
                               need_int(params, "seq_bound"), need_int(params, "block_bound")});
  if (name == "ipdepth") return FamilySpec(IPDepth{static_cast<int>(need_int(params, "k"))});
  throw ParamError("unknown family `" + name +
                   "` (want infinite|pws|density|ap|recip|jset|ipdepth)");
}

Relaxation parse_relaxation(const std::map<std::string, std::string>& params) {
  Relaxation r;
  for (const auto& [k, val] : params) {
    std::int64_t n = 0;
    try {
      n = std::stoll(val);
    } catch (const std::exception&) {
      throw ParseError("relaxation `" + k + "` = `" + val + "` is not an integer");
    }
    if (k == "gap_mult")
      r.gap_mult = n;
    else if (k == "span_div")
      r.span_div = n;
    else if (k == "min_card_div")
      r.min_card_div = n;
    else if (k == "delta_div")
      r.delta_div = n;
    else if (k == "ap_len_delta")
      r.ap_len_delta = n;
    else if (k == "sigma_div")
      r.sigma_div = n;
    else if (k == "ip_depth_delta")
      r.ip_depth_delta = n;
    else
      throw ParamError("unknown relaxation key `" + k + "`");
  }
  return r;
}

FamilySpec relax_family(const FamilySpec& f, const Relaxation& r) {
  FamilyVariant out = std::visit(
      overloaded{
          [&](const Infinite& x) -> FamilyVariant {
            return Infinite{std::max<std::int64_t>(1, x.min_card / std::max<std::int64_t>(
                                                          1, r.min_card_div))};
          },
          [&](const PiecewiseSyndetic& x) -> FamilyVariant {
            return PiecewiseSyndetic{
                x.gap * std::max<std::int64_t>(1, r.gap_mult),
                std::max<std::int64_t>(1, x.span / std::max<std::int64_t>(1, r.span_div))};
          },
          [&](const UpperDensity& x) -> FamilyVariant {
            return UpperDensity{x.delta / std::max<std::int64_t>(1, r.delta_div), x.block_len};
          },
          [&](const APRich& x) -> FamilyVariant {
            return APRich{std::max<std::int64_t>(3, x.ap_len + r.ap_len_delta)};
          },
          [&](const ReciprocalSum& x) -> FamilyVariant {
            return ReciprocalSum{x.sigma / std::max<std::int64_t>(1, r.sigma_div)};
          },
          [&](const JSetSpec& x) -> FamilyVariant { return x; },
          [&](const IPDepth& x) -> FamilyVariant {
            return IPDepth{static_cast<int>(
                std::max<std::int64_t>(2, x.depth + r.ip_depth_delta))};
          },
      },
      f.v);
  return FamilySpec(out);
}

FamilySpec rescale_for_dilation(const FamilySpec& f, std::int64_t n) {
  FamilyVariant out = std::visit(
      overloaded{
          [&](const Infinite& x) -> FamilyVariant { return x; },
          [&](const PiecewiseSyndetic& x) -> FamilyVariant {
            return PiecewiseSyndetic{x.gap * n, x.span};
          },
          [&](const UpperDensity& x) -> FamilyVariant {
            return UpperDensity{x.delta / n, x.block_len};
          },
          [&](const APRich& x) -> FamilyVariant { return x; },
          [&](const ReciprocalSum& x) -> FamilyVariant { return ReciprocalSum{x.sigma / n}; },
          [&](const JSetSpec& x) -> FamilyVariant { return x; },
          [&](const IPDepth& x) -> FamilyVariant { return x; },
      },
      f.v);
  return FamilySpec(out);
}

std::vector<std::vector<std::vector<std::int64_t>>> jset_battery(const JSetSpec& spec,
                                                                 std::uint64_t seed) {
  const int r = spec.num_seqs;
  const std::int64_t tmax = spec.block_bound;
  const auto clamp = [&](std::int64_t v) { return std::min(std::max<std::int64_t>(1, v),
                                                           spec.seq_bound); };
  std::vector<std::vector<std::vector<std::int64_t>>> battery;

  auto make_entry = [&](auto&& fn) {
    std::vector<std::vector<std::int64_t>> entry(static_cast<std::size_t>(r));
    for (int i = 1; i <= r; ++i) {
      auto& seq = entry[static_cast<std::size_t>(i - 1)];
      seq.resize(static_cast<std::size_t>(tmax));
      for (std::int64_t t = 1; t <= tmax; ++t)
        seq[static_cast<std::size_t>(t - 1)] = clamp(fn(i, t));
    }
    battery.push_back(std::move(entry));
  };

  make_entry([](int i, std::int64_t t) { return t + (i - 1); });  // staggered identities
  make_entry([](int i, std::int64_t) { return i; });              // constants
  make_entry([](int i, std::int64_t t) { return i * t; });        // linear ramps

  std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc908ULL);
  std::uniform_int_distribution<std::int64_t> dist(1, spec.seq_bound);
  for (int entry = 0; entry < config().jset_random_entries; ++entry) {
    make_entry([&](int, std::int64_t) { return dist(rng); });
  }
  return battery;
}

}  // namespace ll
