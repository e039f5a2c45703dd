#ifndef LL_FSFP_HPP
#define LL_FSFP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ll/family.hpp"
#include "ll/int_sequence.hpp"
#include "ll/window_set.hpp"

namespace ll {

/// Distinct nonempty-subset sums (or products) of a sequence inside a
/// window, with the number of subsets whose value overflowed the window.
struct FsSystem {
  WindowSet values;
  std::uint64_t overflow_subsets = 0;
  /// subsets whose value coincided with an earlier subset's value
  std::uint64_t duplicate_subsets = 0;

  FsSystem() : values(1) {}
  explicit FsSystem(std::int64_t window) : values(window) {}
};

/// All nonempty-subset sums <= window. Throws ParamError when the term
/// count exceeds Config::fs_term_cap.
FsSystem finite_sums(const IntSequence& xs, std::int64_t window);

/// Multiplicative analogue: nonempty-subset products <= window.
FsSystem finite_products(const IntSequence& xs, std::int64_t window);

struct TailVerdict {
  std::size_t tail_start = 1;
  std::int64_t tail_gcd = 1;
  FamilySpec params_used;
  bool belongs = false;
  std::int64_t fs_count = 0;
};

struct MinimalityReport {
  std::vector<TailVerdict> tails;
  bool all_pass = false;
};

/// Family checks on FS of each listed tail of xs within [1, window].
/// For piecewise-syndetic checks the gap is rescaled by the ratio of the
/// tail gcd to the full-sequence gcd, so the dilation structure of tails
/// does not masquerade as gap growth; other families run unrescaled.
MinimalityReport minimality_diagnostic(const IntSequence& xs, const FamilySpec& family,
                                       std::int64_t window,
                                       const std::vector<std::size_t>& tail_starts);

struct SubsystemResult {
  BlockSystem blocks;
  IntSequence ys;
  WindowSet fs_set;
  WindowSet fp_set;
  bool target_verified = false;
  /// FS/FP closure conditions whose value exceeded the window; zero is
  /// required for target_verified ("verified" vs "verified-up-to-window").
  std::uint64_t unchecked_conditions = 0;

  SubsystemResult(BlockSystem b, IntSequence y, WindowSet fs, WindowSet fp)
      : blocks(std::move(b)), ys(std::move(y)), fs_set(std::move(fs)), fp_set(std::move(fp)) {}
};

struct SubsystemFailure {
  std::size_t deepest_level = 0;  // levels fully built before the dead end
  bool budget_exhausted = false;
  std::int64_t blocks_visited = 0;
  // per-condition elimination counts at the failing level
  std::int64_t rejected_membership = 0;
  std::int64_t rejected_cross_sum = 0;
  std::int64_t rejected_cross_product = 0;
  std::string detail;
};

struct SubsystemOutcome {
  std::optional<SubsystemResult> result;
  std::optional<SubsystemFailure> failure;
  std::int64_t blocks_visited = 0;
};

/// Depth-first search for ordered blocks H_1 < ... < H_depth over the
/// positions of xs with y_i = sum over H_i, keeping FS(<y>) and FP(<y>)
/// inside A at every step. Blocks are enumerated by (max index, size,
/// lexicographic) order and the first full witness is returned. When a
/// level admits no feasible block-sum value at all, the search fails
/// cleanly with per-condition counts instead of exhausting blocks.
SubsystemOutcome build_fs_fp_subsystem(const IntSequence& xs, const WindowSet& a,
                                       std::size_t depth, std::int64_t budget);

/// Recomputes FS/FP of ys from scratch and re-checks every condition;
/// build_fs_fp_subsystem only sets target_verified when this passes with
/// zero unchecked conditions.
bool verify_subsystem(const SubsystemResult& r, const IntSequence& xs, const WindowSet& a);

}  // namespace ll

#endif
