// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line each. argv[1] is the CLI binary, used by the
// byte-identical-rerun criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ll/certificates.hpp"
#include "ll/errors.hpp"
#include "ll/family_check.hpp"
#include "ll/fsfp.hpp"
#include "ll/json_io.hpp"
#include "ll/mds.hpp"
#include "ll/vdc.hpp"

using namespace ll;

namespace {

WindowSet evens(std::int64_t n) {
  WindowSet s(n);
  for (std::int64_t m = 2; m <= n; m += 2) s.insert(m);
  return s;
}

WindowSet odds(std::int64_t n) {
  WindowSet s(n);
  for (std::int64_t m = 1; m <= n; m += 2) s.insert(m);
  return s;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

#define REQUIRE_TRUE(cond)                                   \
  do {                                                       \
    if (!(cond)) return {false, "failed condition: " #cond}; \
  } while (0)

Outcome criterion1_fs_minimality_contrast() {
  std::vector<std::int64_t> pow2;
  for (int i = 1; i <= 10; ++i) pow2.push_back(std::int64_t{1} << i);
  const FsSystem fs2 = finite_sums(IntSequence(pow2), 2046);
  REQUIRE_TRUE(fs2.values == evens(2046));
  REQUIRE_TRUE(fs2.values.count() == 1023);
  REQUIRE_TRUE(family_check(fs2.values, FamilySpec(PiecewiseSyndetic{2, 500})).belongs);

  std::vector<std::int64_t> pow4;
  for (int i = 1; i <= 6; ++i) pow4.push_back(std::int64_t{1} << (2 * i));
  const FsSystem fs4 = finite_sums(IntSequence(pow4), 5460);
  REQUIRE_TRUE(!family_check(fs4.values, FamilySpec(PiecewiseSyndetic{8, 200})).belongs);
  return {true, "FS(2^n) = evens and piecewise syndetic; FS(4^n) is not"};
}

Outcome criterion2_duality_identity() {
  std::mt19937_64 rng(20260809);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::int64_t n = 64 + static_cast<std::int64_t>(rng() % 4033);
    WindowSet e(n);
    std::bernoulli_distribution coin(0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0);
    for (std::int64_t m = 1; m <= n; ++m)
      if (coin(rng)) e.insert(m);
    FamilySpec f;
    switch (rng() % 7) {
      case 0: f = FamilySpec(Infinite{1 + static_cast<std::int64_t>(rng() % 32)}); break;
      case 1:
        f = FamilySpec(PiecewiseSyndetic{1 + static_cast<std::int64_t>(rng() % 6),
                                         1 + static_cast<std::int64_t>(rng() % (n / 2))});
        break;
      case 2:
        f = FamilySpec(UpperDensity{Rat(1, 1 + static_cast<std::int64_t>(rng() % 5)),
                                    1 + static_cast<std::int64_t>(rng() % (n / 2))});
        break;
      case 3: f = FamilySpec(APRich{3 + static_cast<std::int64_t>(rng() % 3)}); break;
      case 4:
        f = FamilySpec(ReciprocalSum{Rat(1 + static_cast<std::int64_t>(rng() % 40), 10)});
        break;
      case 5: f = FamilySpec(JSetSpec{1 + static_cast<int>(rng() % 2), 3, 3}); break;
      default: f = FamilySpec(IPDepth{2 + static_cast<int>(rng() % 2)}); break;
    }
    const bool dual = dual_check(e, f).belongs;
    const bool inner = family_check(complement(e), f).belongs;
    if (dual != !inner) {
      std::ostringstream msg;
      msg << "identity violated at rep " << rep << " with " << f.describe();
      return {false, msg.str()};
    }
  }
  REQUIRE_TRUE(dual_check(evens(4096), FamilySpec(IPDepth{2})).belongs);
  return {true, "1000 seeded pairs satisfy dual = NOT check(complement); evens are IP*-2"};
}

Outcome criterion3_subsystem_builder() {
  std::vector<std::int64_t> xs;
  for (std::int64_t i = 1; i <= 60; ++i) xs.push_back(i);
  WindowSet mult6(1000000);
  for (std::int64_t m = 6; m <= 1000000; m += 6) mult6.insert(m);
  const auto good = build_fs_fp_subsystem(IntSequence(xs), mult6, 3, 0);
  REQUIRE_TRUE(good.result.has_value());
  REQUIRE_TRUE(good.result->target_verified);
  REQUIRE_TRUE(good.result->unchecked_conditions == 0);
  REQUIRE_TRUE(verify_subsystem(*good.result, IntSequence(xs), mult6));
  REQUIRE_TRUE(good.result->fs_set.subset_of(mult6));
  REQUIRE_TRUE(good.result->fp_set.subset_of(mult6));

  const auto bad = build_fs_fp_subsystem(IntSequence(xs), odds(1000000), 2, 0);
  REQUIRE_TRUE(!bad.result.has_value());
  REQUIRE_TRUE(bad.failure.has_value());
  REQUIRE_TRUE(bad.failure->deepest_level == 1);  // dies extending to level 2
  REQUIRE_TRUE(!bad.failure->budget_exhausted);
  REQUIRE_TRUE(bad.failure->rejected_cross_sum > 0);  // the parity obstruction
  return {true, "depth-3 witness inside multiples of 6; clean parity failure on odds"};
}

Outcome criterion4_chain_round_trip() {
  const auto outcome = find_chain(evens(256), FamilySpec(PiecewiseSyndetic{2, 64}), 4, 0);
  REQUIRE_TRUE(outcome.certificate.has_value());
  REQUIRE_TRUE(verify_chain(*outcome.certificate).pass);
  const std::int64_t levels = static_cast<std::int64_t>(outcome.certificate->chain.size());
  for (const auto& [key, m] : outcome.certificate->shift_map) {
    for (std::int64_t wrong : {std::int64_t{0}, levels + 1}) {
      auto cert = *outcome.certificate;
      cert.shift_map[key] = wrong;
      bool rejected = false;
      try {
        rejected = !verify_chain(cert).pass;
      } catch (const ll::Error&) {
        rejected = true;
      }
      if (!rejected) return {false, "a corrupted shift_map entry was accepted"};
    }
  }
  return {true, "emitted chain verifies; every single-entry corruption is rejected"};
}

Outcome criterion5_tree_chain_correspondence() {
  const FunctionTree t = FunctionTree::all_words(evens(64), evens(64), 3);
  const TreeReport tree_rep = verify_tree(t, FamilySpec(PiecewiseSyndetic{2, 32}), 2);
  REQUIRE_TRUE(tree_rep.pass);
  const CorrespondenceReport rep =
      tree_chain_correspondence(t, FamilySpec(PiecewiseSyndetic{2, 32}), 2);
  REQUIRE_TRUE(rep.pass);
  REQUIRE_TRUE(rep.sets_checked > 0);
  REQUIRE_TRUE(rep.shift_conditions_checked > 0);
  return {true, "derived C_F sets pass the downward-directed checks at pws{2,32}"};
}

Outcome criterion6_mixing_exactness() {
  const BernoulliShift bern{Rat(1, 2), 1};
  const CylinderSet c{0, {1}};
  const auto brep = correlation_sequence(bern, {c, c}, {1}, 512, Rat(1, 1000));
  const Rat target = brep.product_target.r;
  REQUIRE_TRUE(target == Rat(1, 4));
  for (const auto& e : brep.entries) {
    if (!e.exact || e.r != target) return {false, "bernoulli correlation not exactly 1/4"};
  }

  const DoublingMap dbl{};
  const RatIntervals half{{{Rat(0), Rat(1, 2)}}};
  const auto drep = correlation_sequence(dbl, {half, half, half}, {1, 2}, 64, Rat(1, 1000));
  REQUIRE_TRUE(drep.product_target.r == Rat(1, 8));
  for (const auto& e : drep.entries) {
    if (!e.exact || e.r != Rat(1, 8)) return {false, "doubling order-2 entry differs from 1/8"};
  }
  return {true, "bernoulli c(n) = 1/4 and doubling order-2 c(n) = 1/8, exactly"};
}

Outcome criterion7_torus_control() {
  const TorusRotation tor{torus_alpha("golden"), "golden"};
  const FloatIntervals half{{{BigFloat(0), BigFloat(1) / 2}}};
  const auto rep = correlation_sequence(tor, {half, half}, {1}, 10000, Rat(1, 100));
  BigFloat cesaro(0);
  const BigFloat quarter = BigFloat(1) / 4;
  for (const auto& e : rep.entries) cesaro += abs(e.f - quarter);
  cesaro /= rep.entries.size();
  // margin of at least 1e-3 over the 0.05 threshold
  REQUIRE_TRUE(cesaro > BigFloat("0.051"));
  const auto cls = classify_mixing_set(rep, {});
  REQUIRE_TRUE(!cls.cofinite_from.has_value());
  std::ostringstream msg;
  msg << "Cesaro average of |c(n) - 1/4| = " << format_bigfloat(cesaro).substr(0, 8)
      << " > 0.051; no cofinite tail";
  return {true, msg.str()};
}

Outcome criterion8_power_systems() {
  for (std::int64_t n : {2, 3}) {
    const auto bp = power_system_check(BernoulliShift{Rat(1, 2), 1}, n, CylinderSet{0, {1}},
                                       CylinderSet{0, {1}}, Rat(1, 100), 256, {});
    REQUIRE_TRUE(bp.base_cls.cofinite_from && *bp.base_cls.cofinite_from == 1);
    REQUIRE_TRUE(bp.powered_cls.cofinite_from && *bp.powered_cls.cofinite_from == 1);
    REQUIRE_TRUE(bp.subset_holds);

    const RatIntervals half{{{Rat(0), Rat(1, 2)}}};
    const auto dp =
        power_system_check(DoublingMap{}, n, half, half, Rat(1, 100), 64, {});
    REQUIRE_TRUE(dp.base_cls.cofinite_from && *dp.base_cls.cofinite_from == 1);
    REQUIRE_TRUE(dp.powered_cls.cofinite_from && *dp.powered_cls.cofinite_from == 1);
    REQUIRE_TRUE(dp.subset_holds);
  }
  return {true, "bernoulli and doubling keep cofinite_from = 1 under T^2 and T^3"};
}

Outcome criterion9_vdc() {
  // the orthonormal block pins both sides at 1/N
  for (std::int64_t n : {4, 64, 512}) {
    const VdcBound b = vdc_bound(VectorSequence::orthonormal(n, n), n);
    const double want = 1.0 / static_cast<double>(n);
    REQUIRE_TRUE(b.holds);
    REQUIRE_TRUE(std::abs(b.lhs - want) <= 1e-9);
    REQUIRE_TRUE(std::abs(b.rhs - want) <= 1e-9);
  }
  std::mt19937_64 rng(424242);
  for (int rep = 0; rep < 10000; ++rep) {
    const bool big = rep % 50 == 0;  // cover the full stated ranges sparsely
    const std::int64_t dim = 1 + static_cast<std::int64_t>(rng() % (big ? 128 : 48));
    const std::int64_t len = 2 + static_cast<std::int64_t>(rng() % (big ? 1023 : 96));
    VectorSequence xs = VectorSequence::random(dim, len, rng());
    if (rng() % 4 == 0) {
      Eigen::MatrixXd cols = xs.columns();
      for (Eigen::Index j = 0; j < cols.cols(); ++j)
        cols.col(j) *= static_cast<double>(1 + rng() % 7);
      xs = VectorSequence(cols);
    }
    const std::int64_t block = 1 + static_cast<std::int64_t>(rng() % len);
    if (!vdc_bound(xs, block).holds) {
      std::ostringstream msg;
      msg << "bound violated at rep " << rep << " dim " << dim << " len " << len;
      return {false, msg.str()};
    }
  }
  return {true, "10000 fuzzed sequences satisfy the bound; orthonormal case is tight"};
}

// --- criterion 10: byte-identical CLI reruns ---------------------------

int run_cmd(const std::string& cmd) { return std::system(cmd.c_str()); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome criterion10_determinism(const std::string& cli) {
  if (cli.empty()) return {false, "CLI path missing (pass it as argv[1])"};
  char tmpl[] = "/tmp/ll_accept_XXXXXX";
  const char* dir = mkdtemp(tmpl);
  if (dir == nullptr) return {false, "cannot create temp dir"};
  const std::string d(dir);

  {
    std::ofstream evens_file(d + "/evens.txt");
    evens_file << to_text(evens(256));
    std::ofstream seq_file(d + "/seq.txt");
    for (int i = 1; i <= 40; ++i) seq_file << i << "\n";
    std::ofstream seq16_file(d + "/seq16.txt");
    for (int i = 1; i <= 16; ++i) seq16_file << i << "\n";
    std::ofstream mult6_file(d + "/mult6.txt");
    WindowSet m6(20000);
    for (std::int64_t m = 6; m <= 20000; m += 6) m6.insert(m);
    mult6_file << to_text(m6);
    std::ofstream pow2_file(d + "/pow2.txt");
    for (int i = 1; i <= 10; ++i) pow2_file << (std::int64_t{1} << i) << "\n";
  }

  // files consumed by the chained verify/classify commands
  if (run_cmd(cli + " cert find-chain --set " + d + "/evens.txt --family pws "
                    "--params g=2,L=64 --depth 4 --out " + d + "/chain_search.json 2>/dev/null") !=
      0)
    return {false, "chain search for the battery failed"};
  {
    const Json search = Json::parse(slurp(d + "/chain_search.json"));
    std::ofstream cert_file(d + "/cert.json");
    cert_file << search.at("result").at("certificate").dump(2) << "\n";
  }
  if (run_cmd(cli + " mds correlate --system doubling --A 0:1/2 --B 0:1/2 --order 1,2 "
                    "--nmax 64 --eps 1/100 --out " + d + "/doubling.json 2>/dev/null") != 0)
    return {false, "doubling correlate for the battery failed"};

  const std::vector<std::string> commands = {
      " family check --set " + d + "/evens.txt --family pws --params g=2,L=64",
      " family dual --set " + d + "/evens.txt --family ipdepth --params k=2",
      " family ramsey --set " + d + "/evens.txt --family infinite --params min_card=16 "
          "--trials 50 --seed 7",
      " family invariance --set " + d + "/evens.txt --family pws --params g=2,L=64 "
          "--shifts 2,4 --dilations 2,3",
      " fsfp sums --seq " + d + "/seq16.txt --window 512",
      " fsfp products --seq " + d + "/seq16.txt --window 512",
      " fsfp subsystem --seq " + d + "/seq.txt --set " + d + "/mult6.txt --depth 2",
      " fsfp minimal --seq " + d + "/pow2.txt --window 2046 --family pws --g 2 --L 256",
      " cert find-chain --set " + d + "/evens.txt --family pws --params g=2,L=64 --depth 4",
      " cert verify-chain " + d + "/cert.json",
      " mds correlate --system bernoulli --p 1/2 --A cyl:0:1 --B cyl:0:1 --nmax 64 "
          "--eps 1/100",
      " mds correlate --system doubling --A 0:1/2 --B 0:1/2 --order 1,2 --nmax 64 "
          "--eps 1/100",
      " mds correlate --system torus --alpha golden --A 0:1/2 --B 0:1/2 --nmax 200 "
          "--eps 1/100",
      " mds classify " + d + "/doubling.json --families pws:2:16,ipdepth:3",
      " mds power --system doubling --n 2 --A 0:1/2 --B 0:1/2 --nmax 32 --eps 1/100",
      " mds power --system bernoulli --p 1/2 --n 3 --A cyl:0:1 --B cyl:0:1 --nmax 64 "
          "--eps 1/100",
      " vdc demo --kind random --dim 16 --len 128 --block 64 --seed 11",
      " vdc demo --kind orthonormal --dim 64 --len 64 --block 64 --dmax 8",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string out1 = d + "/out_" + std::to_string(i) + "_a.json";
    const std::string out2 = d + "/out_" + std::to_string(i) + "_b.json";
    const std::string base = cli + commands[i];
    if (run_cmd(base + " --out " + out1 + " 2>" + d + "/err.txt") != 0)
      return {false, "command failed: " + commands[i] + " | " + slurp(d + "/err.txt")};
    if (run_cmd(base + " --out " + out2 + " 2>/dev/null") != 0)
      return {false, "rerun failed: " + commands[i]};
    const std::string a = slurp(out1), b = slurp(out2);
    if (a.empty() || a != b) return {false, "rerun differs for:" + commands[i]};
  }
  return {true, std::to_string(commands.size()) + " CLI configurations rerun byte-identically"};
}

}  // namespace

int main(int argc, char** argv) {
  apply_precision_config();
  const std::string cli = argc > 1 ? argv[1] : "";

  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "FS minimality contrast", 1.0, criterion1_fs_minimality_contrast},
      {2, "duality identity", 10.0, criterion2_duality_identity},
      {3, "FS/FP subsystem builder", 30.0, criterion3_subsystem_builder},
      {4, "chain certificate round trip", 5.0, criterion4_chain_round_trip},
      {5, "tree-to-chain correspondence", 5.0, criterion5_tree_chain_correspondence},
      {6, "mixing exactness", 30.0, criterion6_mixing_exactness},
      {7, "non-mixing torus control", 60.0, criterion7_torus_control},
      {8, "power-system mixing", 30.0, criterion8_power_systems},
      {9, "van der Corput inequality", 60.0, criterion9_vdc},
      {10, "CLI determinism", 120.0, [&]() { return criterion10_determinism(cli); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %-32s (%6.2fs <= %5.1fs) %s\n", pass ? "PASS" : "FAIL",
                c.id, c.name, secs, c.limit_seconds,
                out.pass ? out.detail.c_str()
                         : (out.detail + (in_time ? "" : " [over time]")).c_str());
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
