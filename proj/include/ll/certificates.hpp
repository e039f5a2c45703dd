#ifndef LL_CERTIFICATES_HPP
#define LL_CERTIFICATES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ll/family.hpp"
#include "ll/window_set.hpp"

namespace ll {

/// A prefix-closed set of finite words over [1, N] (each word: a
/// function from its length to letters), together with the target set
/// the letters must come from. depth_horizon, when set, marks words of
/// that length as truncation artifacts: their extension sets are unknown
/// rather than empty, so intersection checks skip them.
class FunctionTree {
public:
  FunctionTree(WindowSet target, std::vector<std::vector<std::int64_t>> words,
               std::optional<int> depth_horizon = std::nullopt);

  const WindowSet& target() const { return target_; }
  std::int64_t window() const { return target_.window(); }
  const std::vector<std::vector<std::int64_t>>& nodes() const { return words_; }
  std::optional<int> depth_horizon() const { return depth_horizon_; }

  bool is_node(const std::vector<std::int64_t>& f) const;
  /// Node at or beyond the declared horizon (never true without one).
  bool is_frontier(const std::vector<std::int64_t>& f) const;

  /// All words of length <= depth with letters drawn from `letters`
  /// (repetition allowed); the canonical dense fixture shape.
  static FunctionTree all_words(const WindowSet& target, const WindowSet& letters, int depth);

private:
  WindowSet target_;
  std::vector<std::vector<std::int64_t>> words_;
  std::optional<int> depth_horizon_;
  std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> children_;
  friend WindowSet bf_set(const FunctionTree&, const std::vector<std::int64_t>&);
};

/// B_f(T) = {x : f concat x in T}. Throws ParamError when f is not a node.
WindowSet bf_set(const FunctionTree& t, const std::vector<std::int64_t>& f);

struct TreeViolation {
  std::string condition;  // "range", "shift", "family"
  std::vector<std::int64_t> node;
  std::int64_t letter = 0;  // for shift violations
  std::string detail;
};

struct TreeReport {
  bool pass = false;
  std::optional<TreeViolation> violation;
  std::int64_t nodes = 0;
  std::int64_t interior_nodes = 0;
  std::int64_t shift_checks = 0;
  std::int64_t shift_checks_window_skipped = 0;
  std::int64_t family_checks = 0;
  std::int64_t family_checks_frontier_skipped = 0;
};

/// Checks (i) letters inside the target, (ii) B_{f^x} inside -x + B_f on
/// the effective window, (iii) family membership of every intersection
/// of up to `subset_bound` B_f sets over non-frontier nodes.
TreeReport verify_tree(const FunctionTree& t, const FamilySpec& family, int subset_bound = 0);

struct ChainCertificate {
  WindowSet target;
  std::vector<WindowSet> chain;  // C_1 over C_2 over ... inside target
  FamilySpec family;
  /// (level n, member x of C_n) -> level m with C_m inside -x + C_n.
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> shift_map;

  ChainCertificate(WindowSet tgt, std::vector<WindowSet> c, FamilySpec fam)
      : target(std::move(tgt)), chain(std::move(c)), family(std::move(fam)) {}
};

struct ChainLevelReport {
  std::int64_t level = 0;
  bool family_pass = false;
  std::int64_t size = 0;
};

struct ChainReport {
  bool pass = false;
  std::string failure;  // empty when pass
  std::vector<ChainLevelReport> levels;
  /// smallest containment slack |(-x + C_n) restricted| - |C_m restricted|
  /// over all checked shift conditions; large values mean loose chains
  std::int64_t worst_shift_margin = 0;
  /// smallest effective window N - x over all shift checks
  std::int64_t min_effective_window = 0;
};

/// Re-validates decreasingness and containment in the target, the family
/// verdict per level, and every shift-map condition on its effective
/// window. Throws ParamError when the shift map's domain does not match
/// the chain (missing/extra entries or levels out of range).
ChainReport verify_chain(const ChainCertificate& cert);

struct ChainSearchFailure {
  std::int64_t failed_level = 0;
  std::int64_t candidates_tried = 0;
  bool budget_exhausted = false;
  std::string detail;
};

struct ChainSearchOutcome {
  std::optional<ChainCertificate> certificate;
  std::optional<ChainSearchFailure> failure;
};

/// Bounded search over shift-stabilized subsets of A (iterated
/// A & (-x_1 + A) & ...) for a depth-L certificate, deterministic order,
/// first hit returned. Requires family_check(a, family) to hold.
ChainSearchOutcome find_chain(const WindowSet& a, const FamilySpec& family, std::int64_t depth,
                              std::int64_t budget = 0);

struct CorrespondenceReport {
  bool pass = false;
  std::string failure;
  std::int64_t sets_checked = 0;
  std::int64_t shift_conditions_checked = 0;
  std::int64_t shift_conditions_horizon_skipped = 0;
};

/// The (b) -> (c) transformation at finite scale: for every set F of up
/// to subset_bound nodes lying two levels inside the horizon, C_F =
/// intersection of B_f must pass the family check, and for every
/// x in C_F the shifted family G = {f^x} must satisfy
/// C_G inside -x + C_F on the effective window.
CorrespondenceReport tree_chain_correspondence(const FunctionTree& t, const FamilySpec& family,
                                               int subset_bound = 0);

}  // namespace ll

#endif
