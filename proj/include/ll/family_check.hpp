#ifndef LL_FAMILY_CHECK_HPP
#define LL_FAMILY_CHECK_HPP

#include <cstdint>
#include <vector>

#include "ll/family.hpp"
#include "ll/window_set.hpp"

namespace ll {

/// Decides the windowed proxy of A in F. Throws ParamError when the
/// window cannot host the family's scales (e.g. span > window).
FamilyVerdict family_check(const WindowSet& a, const FamilySpec& f);

/// E in F* iff complement(E) not in F (upward-hereditary duality).
FamilyVerdict dual_check(const WindowSet& e, const FamilySpec& f);

/// Re-checks a witness against the set that produced it; used by tests
/// and by report loading. True when the witness substantiates membership.
bool witness_valid(const WindowSet& a, const FamilySpec& f, const Witness& w);

struct RamseyReport {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double fraction = 0.0;
  std::uint64_t seed = 0;
  FamilySpec family;          // the family A was required to be in
  FamilySpec relaxed_family;  // what each cell was checked against
};

/// Empirical Ramsey-property probe: random 2-colorings of A, fraction of
/// trials in which some cell passes the relaxed check. Requires
/// family_check(a, f) to hold.
RamseyReport ramsey_probe(const WindowSet& a, const FamilySpec& f, std::int64_t trials,
                          const Relaxation& relax, std::uint64_t seed);

struct InvarianceRow {
  std::string op;  // "shift" or "dilate"
  std::int64_t amount = 0;
  FamilySpec params_used;
  bool belongs = false;
  bool preserved = false;  // belongs matches the base verdict
};
struct InvarianceReport {
  FamilyVerdict base;
  std::vector<InvarianceRow> rows;
};

InvarianceReport invariance_probe(const FamilySpec& f, const WindowSet& a,
                                  const std::vector<std::int64_t>& shifts,
                                  const std::vector<std::int64_t>& dilations);

}  // namespace ll

#endif
