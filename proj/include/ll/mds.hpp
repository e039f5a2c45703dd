#ifndef LL_MDS_HPP
#define LL_MDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ll/family.hpp"
#include "ll/rational.hpp"
#include "ll/window_set.hpp"

namespace ll {

// --- systems ---------------------------------------------------------

/// x -> x + step (mod modulus) on Z_modulus. step 0 only arises from
/// degenerate power composition and is flagged, not rejected.
struct CyclicRotation {
  std::int64_t modulus = 2;
  std::int64_t step = 1;
};

/// x -> x + alpha (mod 1). alpha must be irrational to working
/// precision; construct via torus_alpha().
struct TorusRotation {
  BigFloat alpha;
  std::string label;  // how alpha was specified, for reports
};

/// x -> 2^expo * x (mod 1); expo > 1 arises from power composition.
struct DoublingMap {
  int expo = 1;
};

/// One-sided Bernoulli(p) shift on {0,1}^N; stride > 1 arises from
/// power composition (T^n shifts by n).
struct BernoulliShift {
  Rat p = Rat(1, 2);
  std::int64_t stride = 1;
};

using MpsSpec = std::variant<CyclicRotation, TorusRotation, DoublingMap, BernoulliShift>;

std::string system_name(const MpsSpec& sys);
void validate_system(const MpsSpec& sys);

/// Parses "golden" ((sqrt5-1)/2), "sqrt2m1" (sqrt2-1), or a decimal
/// string. Rejects values that are rational to working precision
/// (including all p/q inputs) and values outside (0, 1).
BigFloat torus_alpha(const std::string& text);

/// The n-th power system, with the same state space. Sets *degenerate
/// for a cyclic rotation whose composed step vanishes.
MpsSpec power_system(const MpsSpec& sys, std::int64_t n, bool* degenerate);

// --- events ----------------------------------------------------------

struct ResidueSet {
  std::vector<std::int64_t> residues;  // sorted, within [0, modulus)
};

/// Disjoint half-open intervals [l, r) inside [0, 1) with rational
/// endpoints; DoublingMap additionally requires dyadic denominators.
struct RatIntervals {
  std::vector<std::pair<Rat, Rat>> parts;
};

/// Interval union with high-precision endpoints (torus events).
struct FloatIntervals {
  std::vector<std::pair<BigFloat, BigFloat>> parts;
};

/// Fixed symbols at coordinates offset+1 .. offset+symbols.size().
struct CylinderSet {
  std::int64_t offset = 0;
  std::vector<int> symbols;  // each 0 or 1
};

using EventSet = std::variant<ResidueSet, RatIntervals, FloatIntervals, CylinderSet>;

void validate_event(const MpsSpec& sys, const EventSet& e);

struct MeasureValue {
  bool exact = true;
  Rat r;       // meaningful when exact
  BigFloat f;  // always usable
};

MeasureValue measure(const MpsSpec& sys, const EventSet& e);

/// Exact T^{-n} E. DoublingMap preimages beyond Config::preimage_piece_cap
/// interval pieces raise BudgetError (resolution), never approximate.
EventSet preimage(const MpsSpec& sys, const EventSet& e, std::int64_t n);

// --- correlations ----------------------------------------------------

struct CorrelationEntry {
  std::int64_t n = 0;
  bool exact = true;
  Rat r;
  BigFloat f;
  bool in_mixing = false;
  bool borderline = false;  // torus only: within the guard band of eps
};

struct CorrelationReport {
  MpsSpec system;
  std::vector<EventSet> events;        // A_0 .. A_k
  std::vector<std::int64_t> exponents;  // n_1 < ... < n_k
  std::int64_t n_max = 0;
  Rat epsilon;
  MeasureValue product_target;
  std::vector<CorrelationEntry> entries;
  WindowSet mixing_set;

  CorrelationReport() : mixing_set(1) {}
};

/// c(n) = mu(A_0 & T^{-n n_1} A_1 & ... & T^{-n n_k} A_k) for n in
/// [1, n_max], the target product, and the epsilon-mixing set. Exact for
/// cyclic / Bernoulli / doubling events, high-precision for the torus.
CorrelationReport correlation_sequence(const MpsSpec& sys, const std::vector<EventSet>& events,
                                       const std::vector<std::int64_t>& exponents,
                                       std::int64_t n_max, const Rat& epsilon);

struct BoundaryStats {
  std::int64_t count = 0;
  std::int64_t max_gap = 0;  // including the gaps at both window ends
  double density = 0.0;
};

struct MixingClassification {
  std::optional<std::int64_t> cofinite_from;
  BoundaryStats mixing;
  BoundaryStats complement_stats;
  std::vector<std::pair<FamilySpec, bool>> dual_verdicts;
};

MixingClassification classify_mixing_set(const CorrelationReport& rep,
                                         const std::vector<FamilySpec>& families);

struct PowerCheckReport {
  std::int64_t power = 1;
  bool degenerate = false;
  CorrelationReport base;
  CorrelationReport powered;
  MixingClassification base_cls;
  MixingClassification powered_cls;
  /// quotient(M_base, n) inside M_powered on the common window (the
  /// windowed shadow of "T^n inherits the mixing set"), and equality,
  /// which the two computation routes should also deliver.
  bool subset_holds = false;
  bool equality_holds = false;
};

PowerCheckReport power_system_check(const MpsSpec& sys, std::int64_t n, const EventSet& a,
                                    const EventSet& b, const Rat& epsilon, std::int64_t n_max,
                                    const std::vector<FamilySpec>& families);

}  // namespace ll

#endif
