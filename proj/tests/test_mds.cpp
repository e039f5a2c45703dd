#include <doctest.h>

#include <random>

#include "ll/errors.hpp"
#include "ll/mds.hpp"

using namespace ll;

namespace {

RatIntervals half_interval() { return RatIntervals{{{Rat(0), Rat(1, 2)}}}; }

// test-side rational interval intersection (independent of the digit
// route used by the doubling correlator)
std::vector<std::pair<Rat, Rat>> isect(const std::vector<std::pair<Rat, Rat>>& a,
                                       const std::vector<std::pair<Rat, Rat>>& b) {
  std::vector<std::pair<Rat, Rat>> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Rat lo = std::max(a[i].first, b[j].first);
    const Rat hi = std::min(a[i].second, b[j].second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a[i].second < b[j].second)
      ++i;
    else
      ++j;
  }
  return out;
}

Rat parts_len(const std::vector<std::pair<Rat, Rat>>& parts) {
  Rat total(0);
  for (const auto& [l, r] : parts) total += r - l;
  return total;
}

BigFloat frac1(const BigFloat& x) {
  BigFloat f = x - floor(x);
  if (f < 0) f += 1;
  return f;
}

}  // namespace

TEST_CASE("measure basics") {
  const BernoulliShift bern{Rat(1, 2), 1};
  CHECK(measure(bern, CylinderSet{0, {1, 0, 1}}).r == Rat(1, 8));

  const CyclicRotation cyc{10, 3};
  CHECK(measure(cyc, ResidueSet{{0, 2, 4, 6, 8}}).r == Rat(1, 2));

  const DoublingMap dbl{};
  CHECK(measure(dbl, half_interval()).r == Rat(1, 2));

  const TorusRotation tor{torus_alpha("golden"), "golden"};
  const MeasureValue m = measure(tor, FloatIntervals{{{BigFloat(0), BigFloat(1) / 2}}});
  CHECK_FALSE(m.exact);
  CHECK(abs(m.f - BigFloat(1) / 2) < pow(BigFloat(2), -100));
}

TEST_CASE("event validation catches mismatches and malformed inputs") {
  CHECK_THROWS_AS(measure(DoublingMap{}, CylinderSet{0, {1}}), ParamError);
  CHECK_THROWS_AS(measure(CyclicRotation{4, 1}, half_interval()), ParamError);
  CHECK_THROWS_AS(measure(CyclicRotation{4, 1}, ResidueSet{{4}}), ParamError);
  CHECK_THROWS_AS(measure(BernoulliShift{Rat(1, 2), 1}, CylinderSet{0, {2}}), ParamError);
  // doubling needs dyadic endpoints
  CHECK_THROWS_AS(measure(DoublingMap{}, RatIntervals{{{Rat(0), Rat(1, 3)}}}), ParamError);
  // overlapping intervals
  CHECK_THROWS_AS(measure(DoublingMap{},
                          RatIntervals{{{Rat(0), Rat(1, 2)}, {Rat(1, 4), Rat(3, 4)}}}),
                  ParamError);
}

TEST_CASE("torus alpha rejects rationals") {
  CHECK_THROWS_AS(torus_alpha("1/2"), ParamError);
  CHECK_THROWS_AS(torus_alpha("0.5"), ParamError);
  CHECK_THROWS_AS(torus_alpha("0.25"), ParamError);
  CHECK_THROWS_AS(torus_alpha("2.5"), ParamError);
  CHECK_THROWS_AS(torus_alpha("gibberish"), ParseError);
  CHECK_NOTHROW(torus_alpha("golden"));
  CHECK_NOTHROW(torus_alpha("sqrt2m1"));
  // a 40-digit decimal is rational, but not at working precision
  CHECK_NOTHROW(torus_alpha("0.6180339887498948482045868343656381177203"));
}

TEST_CASE("preimage definition cases") {
  // doubling: two branches
  const EventSet pre = preimage(DoublingMap{}, half_interval(), 1);
  const auto& parts = std::get<RatIntervals>(pre).parts;
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == std::pair<Rat, Rat>{Rat(0), Rat(1, 4)});
  CHECK(parts[1] == std::pair<Rat, Rat>{Rat(1, 2), Rat(3, 4)});

  // cyclic orbit: T^2 x = x + 10 mod 12 lands in {0} iff x = 2
  const EventSet cpre = preimage(CyclicRotation{12, 5}, ResidueSet{{0}}, 2);
  CHECK(std::get<ResidueSet>(cpre).residues == std::vector<std::int64_t>{2});

  // bernoulli: plain coordinate shift
  const EventSet bpre = preimage(BernoulliShift{Rat(1, 2), 1}, CylinderSet{0, {1, 1}}, 3);
  CHECK(std::get<CylinderSet>(bpre).offset == 3);

  // resolution cap
  CHECK_THROWS_AS(preimage(DoublingMap{}, half_interval(), 25), BudgetError);
}

TEST_CASE("measure preservation across variants") {
  std::mt19937_64 rng(8001);
  for (int n = 1; n <= 64; n *= 2) {
    // cyclic with random residues
    {
      CyclicRotation sys{97, 13};
      std::vector<std::int64_t> res;
      for (std::int64_t v = 0; v < 97; ++v)
        if (rng() % 3 == 0) res.push_back(v);
      if (res.empty()) res.push_back(5);
      const ResidueSet e{res};
      CHECK(measure(sys, preimage(sys, e, n)).r == measure(sys, e).r);
    }
    // bernoulli cylinder
    {
      BernoulliShift sys{Rat(1, 3), 1};
      const CylinderSet e{2, {1, 0, 1, 1}};
      CHECK(measure(sys, preimage(sys, e, n)).r == measure(sys, e).r);
    }
    // doubling with a two-part dyadic event
    if (n <= 8) {
      DoublingMap sys{};
      const RatIntervals e{{{Rat(0), Rat(1, 4)}, {Rat(1, 2), Rat(5, 8)}}};
      CHECK(measure(sys, preimage(sys, e, n)).r == measure(sys, e).r);
    }
    // torus within 1e-12 at 128 bits
    {
      TorusRotation sys{torus_alpha("golden"), "golden"};
      const FloatIntervals e{{{BigFloat(1) / 8, BigFloat(3) / 8}}};
      const BigFloat diff = abs(measure(sys, preimage(sys, e, n)).f - measure(sys, e).f);
      CHECK(diff < BigFloat("1e-12"));
    }
  }
}

TEST_CASE("bernoulli independence: disjoint cylinders give exact products") {
  const BernoulliShift sys{Rat(1, 2), 1};
  const CylinderSet a{0, {1}};
  const auto rep = correlation_sequence(sys, {a, a}, {1}, 512, Rat(1, 1000));
  CHECK(rep.product_target.r == Rat(1, 4));
  for (const auto& e : rep.entries) {
    CHECK(e.exact);
    CHECK(e.r == Rat(1, 4));
    CHECK(e.in_mixing);
  }
  CHECK(rep.mixing_set == WindowSet::full(512));
}

TEST_CASE("bernoulli finite-range property") {
  // cylinders of diameter d decorrelate exactly once shifts clear d
  const BernoulliShift sys{Rat(1, 3), 1};
  const CylinderSet a{0, {1, 0, 1}};  // positions 1..3
  const CylinderSet b{1, {1, 1}};     // positions 2..3
  const auto rep = correlation_sequence(sys, {a, b}, {1}, 64, Rat(1, 1000000));
  const Rat target = measure(sys, EventSet{a}).r * measure(sys, EventSet{b}).r;
  for (const auto& e : rep.entries) {
    if (e.n >= 3) CHECK(e.r == target);  // disjoint coordinate windows
  }
}

TEST_CASE("doubling order-2 correlation is exactly 1/8") {
  const DoublingMap sys{};
  const auto rep = correlation_sequence(sys, {half_interval(), half_interval(),
                                              half_interval()},
                                        {1, 2}, 64, Rat(1, 100));
  CHECK(rep.product_target.r == Rat(1, 8));
  for (const auto& e : rep.entries) {
    CHECK(e.exact);
    CHECK(e.r == Rat(1, 8));
  }
  CHECK(rep.mixing_set == WindowSet::full(64));
}

TEST_CASE("doubling correlation agrees with the interval-preimage oracle") {
  const DoublingMap sys{};
  const RatIntervals a0{{{Rat(0), Rat(1, 4)}, {Rat(1, 2), Rat(5, 8)}}};
  const RatIntervals a1{{{Rat(1, 4), Rat(3, 4)}}};
  const RatIntervals a2{{{Rat(0), Rat(1, 2)}}};

  const auto rep = correlation_sequence(sys, {a0, a1, a2}, {1, 2}, 6, Rat(1, 100));
  for (const auto& e : rep.entries) {
    const auto p1 = std::get<RatIntervals>(preimage(sys, a1, e.n)).parts;
    const auto p2 = std::get<RatIntervals>(preimage(sys, a2, 2 * e.n)).parts;
    const Rat want = parts_len(isect(isect(a0.parts, p1), p2));
    CHECK(e.r == want);
  }
}

TEST_CASE("order-1 coherence against mu(A ^ T^-n B) across variants") {
  // cyclic
  {
    const CyclicRotation sys{24, 7};
    const ResidueSet a{{0, 1, 5, 9, 17}};
    const ResidueSet b{{2, 3, 11}};
    const auto rep = correlation_sequence(sys, {a, b}, {1}, 48, Rat(1, 100));
    for (const auto& e : rep.entries) {
      const auto pb = std::get<ResidueSet>(preimage(sys, b, e.n)).residues;
      std::int64_t cnt = 0;
      for (auto v : a.residues)
        cnt += std::binary_search(pb.begin(), pb.end(), v) ? 1 : 0;
      CHECK(e.r == Rat(cnt, 24));
    }
  }
  // doubling
  {
    const DoublingMap sys{};
    const RatIntervals a{{{Rat(1, 8), Rat(1, 2)}}};
    const RatIntervals b{{{Rat(0), Rat(3, 8)}}};
    const auto rep = correlation_sequence(sys, {a, b}, {1}, 8, Rat(1, 100));
    for (const auto& e : rep.entries) {
      const auto pb = std::get<RatIntervals>(preimage(sys, b, e.n)).parts;
      CHECK(e.r == parts_len(isect(a.parts, pb)));
    }
  }
}

TEST_CASE("cyclic correlation is periodic in n") {
  const CyclicRotation sys{12, 5};
  const ResidueSet a{{0, 3, 4}};
  const ResidueSet b{{1, 4, 7, 10}};
  const auto rep = correlation_sequence(sys, {a, b}, {1}, 36, Rat(1, 100));
  for (std::size_t i = 0; i + 12 < rep.entries.size(); ++i)
    CHECK(rep.entries[i].r == rep.entries[i + 12].r);
}

TEST_CASE("torus correlation matches the arc-overlap formula") {
  const TorusRotation sys{torus_alpha("golden"), "golden"};
  const FloatIntervals half{{{BigFloat(0), BigFloat(1) / 2}}};
  const auto rep = correlation_sequence(sys, {half, half}, {1}, 200, Rat(1, 100));
  const BigFloat tol = pow(BigFloat(2), -100);
  for (const auto& e : rep.entries) {
    const BigFloat t = frac1(BigFloat(e.n) * sys.alpha);
    const BigFloat want = abs(t - BigFloat(1) / 2);
    CHECK(abs(e.f - want) < tol);
  }
}

TEST_CASE("classification of the cyclic quarter system") {
  // c(n) = 1/4 when 4 | n, else 0; target 1/16; eps 1/10 keeps exactly
  // the non-multiples of 4
  const CyclicRotation sys{4, 1};
  const ResidueSet a{{0}};
  const auto rep = correlation_sequence(sys, {a, a}, {1}, 64, Rat(1, 10));
  for (const auto& e : rep.entries) CHECK(e.in_mixing == (e.n % 4 != 0));

  const auto cls = classify_mixing_set(rep, {FamilySpec(PiecewiseSyndetic{2, 16})});
  CHECK_FALSE(cls.cofinite_from.has_value());
  CHECK(cls.mixing.count == 48);
  CHECK(cls.mixing.max_gap == 2);
  CHECK(cls.mixing.density == doctest::Approx(0.75));
  CHECK(cls.complement_stats.max_gap == 4);
  CHECK(cls.complement_stats.count == 16);
}

TEST_CASE("classification of a full mixing set") {
  const BernoulliShift sys{Rat(1, 2), 1};
  const auto rep = correlation_sequence(sys, {CylinderSet{0, {1}}, CylinderSet{0, {1}}}, {1},
                                        128, Rat(1, 100));
  const auto cls = classify_mixing_set(rep, {FamilySpec(PiecewiseSyndetic{2, 32}),
                                             FamilySpec(IPDepth{2})});
  REQUIRE(cls.cofinite_from.has_value());
  CHECK(*cls.cofinite_from == 1);
  CHECK(cls.mixing.max_gap == 1);
  CHECK(cls.mixing.density == doctest::Approx(1.0));
  for (const auto& [f, ok] : cls.dual_verdicts) CHECK(ok);
}

TEST_CASE("torus rotation is not mixing: dual check against pws fails") {
  const TorusRotation sys{torus_alpha("golden"), "golden"};
  const FloatIntervals half{{{BigFloat(0), BigFloat(1) / 2}}};
  const auto rep = correlation_sequence(sys, {half, half}, {1}, 2000, Rat(1, 100));
  const auto cls = classify_mixing_set(rep, {FamilySpec(PiecewiseSyndetic{2, 100})});
  CHECK_FALSE(cls.cofinite_from.has_value());
  REQUIRE(cls.dual_verdicts.size() == 1);
  CHECK_FALSE(cls.dual_verdicts[0].second);  // complement is itself pws at scale
}

TEST_CASE("power systems: bernoulli and doubling stay mixing") {
  for (std::int64_t n : {2, 3}) {
    const auto bp = power_system_check(BernoulliShift{Rat(1, 2), 1}, n, CylinderSet{0, {1}},
                                       CylinderSet{0, {1}}, Rat(1, 100), 128, {});
    CHECK_FALSE(bp.degenerate);
    REQUIRE(bp.base_cls.cofinite_from.has_value());
    REQUIRE(bp.powered_cls.cofinite_from.has_value());
    CHECK(*bp.base_cls.cofinite_from == 1);
    CHECK(*bp.powered_cls.cofinite_from == 1);
    CHECK(bp.subset_holds);
    CHECK(bp.equality_holds);

    const auto dp = power_system_check(DoublingMap{}, n, half_interval(), half_interval(),
                                       Rat(1, 100), 64, {});
    CHECK(*dp.base_cls.cofinite_from == 1);
    CHECK(*dp.powered_cls.cofinite_from == 1);
    for (const auto& e : dp.powered.entries) CHECK(e.r == Rat(1, 4));
    CHECK(dp.subset_holds);
  }
}

TEST_CASE("degenerate power composition warns") {
  const auto rep = power_system_check(CyclicRotation{4, 1}, 4, ResidueSet{{0}},
                                      ResidueSet{{0}}, Rat(1, 10), 32, {});
  CHECK(rep.degenerate);
  // T^4 is the identity: c(n) = mu(A ^ B) = 1/4 for every n
  for (const auto& e : rep.powered.entries) CHECK(e.r == Rat(1, 4));
}

TEST_CASE("correlation input validation") {
  const DoublingMap sys{};
  CHECK_THROWS_AS(correlation_sequence(sys, {half_interval()}, {}, 8, Rat(1, 10)), ParamError);
  CHECK_THROWS_AS(
      correlation_sequence(sys, {half_interval(), half_interval()}, {1, 2}, 8, Rat(1, 10)),
      ParamError);
  CHECK_THROWS_AS(correlation_sequence(sys, {half_interval(), half_interval(), half_interval()},
                                       {2, 1}, 8, Rat(1, 10)),
                  ParamError);
  CHECK_THROWS_AS(
      correlation_sequence(sys, {half_interval(), half_interval()}, {1}, 8, Rat(0)),
      ParamError);
}

TEST_CASE("order-2 mixing sets are cofinite for the strongly mixing systems") {
  // bernoulli order 2: three unit cylinders sit on disjoint coordinates
  // for every n >= 1, so c(n) is the full product
  const BernoulliShift bern{Rat(1, 2), 1};
  const CylinderSet c{0, {1}};
  const auto brep = correlation_sequence(bern, {c, c, c}, {1, 2}, 128, Rat(1, 1000000));
  const auto bcls = classify_mixing_set(brep, {});
  REQUIRE(bcls.cofinite_from.has_value());
  CHECK(*bcls.cofinite_from == 1);
  for (const auto& e : brep.entries) CHECK(e.r == Rat(1, 8));

  const DoublingMap dbl{};
  const RatIntervals half{{{Rat(0), Rat(1, 2)}}};
  const auto drep = correlation_sequence(dbl, {half, half, half}, {1, 2}, 128, Rat(1, 1000000));
  const auto dcls = classify_mixing_set(drep, {});
  REQUIRE(dcls.cofinite_from.has_value());
  CHECK(*dcls.cofinite_from == 1);
}

TEST_CASE("torus mixing set stays sparse at small epsilon") {
  // |c(n) - 1/4| < 1/100 forces frac(n*alpha) into two arcs of total
  // length 1/25, so equidistribution keeps the window density well
  // under 0.2
  const TorusRotation sys{torus_alpha("golden"), "golden"};
  const FloatIntervals half{{{BigFloat(0), BigFloat(1) / 2}}};
  const auto rep = correlation_sequence(sys, {half, half}, {1}, 10000, Rat(1, 100));
  const auto cls = classify_mixing_set(rep, {});
  CHECK(cls.mixing.density < 0.2);
  CHECK_FALSE(cls.cofinite_from.has_value());
}
