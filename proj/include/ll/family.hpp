#ifndef LL_FAMILY_HPP
#define LL_FAMILY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ll/rational.hpp"

namespace ll {

// Window-scale proxies of the largeness families. Each carries the
// finite parameters that make "A belongs to F" decidable on [1, N];
// every claim the checkers make is relative to these scales.

struct Infinite {
  std::int64_t min_card = 1;
};

/// Some interval of length `span` on which A has covering gaps <= `gap`
/// (every gap-length subwindow of the interval meets A).
struct PiecewiseSyndetic {
  std::int64_t gap = 1;
  std::int64_t span = 1;
};

/// Some block of length `block_len` on which |A & block| / block_len >= delta.
struct UpperDensity {
  Rat delta = Rat(1, 2);
  std::int64_t block_len = 1;
};

/// Contains an arithmetic progression of length `ap_len`.
struct APRich {
  std::int64_t ap_len = 3;
};

/// sum of 1/a over members reaches `sigma` (exact comparison).
struct ReciprocalSum {
  Rat sigma = Rat(1);
};

/// For every entry of a deterministic battery of `num_seqs`-tuples of
/// sequences f_i : [1, block_bound] -> [1, seq_bound], some a and block
/// H land a + sum_{t in H} f_i(t) inside A for every i.
struct JSetSpec {
  int num_seqs = 1;
  std::int64_t seq_bound = 4;
  std::int64_t block_bound = 4;
};

/// Contains FS(<x_1..x_k>) for some x_1 < ... < x_k (all 2^k - 1 subset
/// sums inside the window and inside A).
struct IPDepth {
  int depth = 2;
};

using FamilyVariant = std::variant<Infinite, PiecewiseSyndetic, UpperDensity, APRich,
                                   ReciprocalSum, JSetSpec, IPDepth>;

struct FamilySpec {
  FamilyVariant v;

  FamilySpec() = default;
  FamilySpec(FamilyVariant var) : v(std::move(var)) { validate(); }

  /// Throws ParamError on out-of-range parameters.
  void validate() const;
  /// Short CLI name: infinite | pws | density | ap | recip | jset | ipdepth.
  std::string name() const;
  /// name plus params, e.g. "pws{g=2,L=100}"; used in reports.
  std::string describe() const;
};

/// Builds a spec from its CLI name and a k=v parameter map.
FamilySpec make_family(const std::string& name,
                       const std::map<std::string, std::string>& params);

// Structured witnesses; FamilyVerdict::witness holds whichever shape the
// family admits.
struct IntervalWitness {
  std::int64_t start = 0, end = 0;  // inclusive
};
struct DensityWitness {
  std::int64_t start = 0, len = 0, count = 0;
};
struct APWitness {
  std::int64_t start = 0, step = 0, len = 0;
};
struct GeneratorsWitness {
  std::vector<std::int64_t> gens;
};
struct JEntryWitness {
  std::int64_t a = 0;
  std::vector<std::int64_t> block;  // the H that worked
};
struct JSetWitness {
  std::vector<JEntryWitness> entries;  // one per battery entry
};
using Witness =
    std::variant<IntervalWitness, DensityWitness, APWitness, GeneratorsWitness, JSetWitness>;

struct FamilyVerdict {
  bool belongs = false;
  std::optional<Witness> witness;
  FamilySpec params_echo;
  std::int64_t window = 0;
};

/// Per-family slack applied by ramsey_probe to the cells of a random
/// 2-coloring. Defaults follow the doubled-gap / halved-span convention.
struct Relaxation {
  std::int64_t gap_mult = 2;
  std::int64_t span_div = 2;
  std::int64_t min_card_div = 2;
  std::int64_t delta_div = 2;
  std::int64_t ap_len_delta = -1;  // floored at 3
  std::int64_t sigma_div = 2;
  std::int64_t ip_depth_delta = -1;  // floored at 2
};
Relaxation parse_relaxation(const std::map<std::string, std::string>& params);
FamilySpec relax_family(const FamilySpec& f, const Relaxation& r);

/// Parameter rescale applied when probing dilation invariance by factor n
/// (gap and thresholds scale; progression length and depth do not).
FamilySpec rescale_for_dilation(const FamilySpec& f, std::int64_t n);

/// The deterministic J-set test battery: battery[entry][i][t-1] is the
/// value f_i(t). Three structured entries plus three seeded ones.
std::vector<std::vector<std::vector<std::int64_t>>> jset_battery(const JSetSpec& spec,
                                                                 std::uint64_t seed);

}  // namespace ll

#endif
