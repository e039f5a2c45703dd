#include "ll/fsfp.hpp"

#include <algorithm>
#include <numeric>

#include "ll/config.hpp"
#include "ll/errors.hpp"
#include "ll/family_check.hpp"

namespace ll {

namespace {

// Recursive subset enumeration over terms sorted ascending. Once a
// partial value exceeds the window every extension does too and the
// whole subtree is counted as overflow in one step.
struct EnumState {
  std::vector<std::int64_t> terms;  // ascending
  std::int64_t window = 0;
  bool multiplicative = false;
  WindowSet seen;
  std::uint64_t overflow = 0;
  std::uint64_t duplicates = 0;

  explicit EnumState(std::int64_t w) : window(w), seen(w) {}

  void walk(std::size_t i, std::int64_t value, bool nonempty) {
    if (nonempty) {
      if (seen.contains(value))
        ++duplicates;
      else
        seen.insert(value);
    }
    for (std::size_t j = i; j < terms.size(); ++j) {
      std::int64_t next;
      if (multiplicative) {
        if (nonempty && value > window / terms[j]) {
          overflow += subtree_count(j);
          return;  // terms ascending: later j overflow as well
        }
        next = nonempty ? value * terms[j] : terms[j];
      } else {
        next = (nonempty ? value : 0) + terms[j];
      }
      if (next > window) {
        overflow += subtree_count(j);
        return;
      }
      walk(j + 1, next, true);
    }
  }

  // number of nonempty subsets drawing their minimum element from
  // position >= j (each such subset extends the current prefix)
  std::uint64_t subtree_count(std::size_t j) const {
    std::uint64_t total = 0;
    for (std::size_t t = j; t < terms.size(); ++t)
      total += std::uint64_t{1} << (terms.size() - t - 1);
    return total;
  }
};

FsSystem enumerate_fs(const IntSequence& xs, std::int64_t window, bool multiplicative) {
  if (static_cast<int>(xs.size()) > config().fs_term_cap)
    throw ParamError("sequence has " + std::to_string(xs.size()) +
                     " terms; finite sums/products capped at " +
                     std::to_string(config().fs_term_cap));
  EnumState st(window);
  st.terms = xs.terms();
  std::sort(st.terms.begin(), st.terms.end());
  st.multiplicative = multiplicative;
  st.walk(0, multiplicative ? 1 : 0, false);
  FsSystem out(window);
  out.values = st.seen;
  out.overflow_subsets = st.overflow;
  out.duplicate_subsets = st.duplicates;
  return out;
}

std::int64_t gcd_of(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto t : v) g = std::gcd(g, t);
  return g == 0 ? 1 : g;
}

}  // namespace

FsSystem finite_sums(const IntSequence& xs, std::int64_t window) {
  return enumerate_fs(xs, window, false);
}

FsSystem finite_products(const IntSequence& xs, std::int64_t window) {
  return enumerate_fs(xs, window, true);
}

MinimalityReport minimality_diagnostic(const IntSequence& xs, const FamilySpec& family,
                                       std::int64_t window,
                                       const std::vector<std::size_t>& tail_starts) {
  MinimalityReport rep;
  rep.all_pass = true;
  const std::int64_t full_gcd = gcd_of(xs.terms());
  for (auto m : tail_starts) {
    const IntSequence tail = xs.tail(m);
    const FsSystem fs = finite_sums(tail, window);
    TailVerdict v;
    v.tail_start = m;
    v.tail_gcd = gcd_of(tail.terms());
    v.fs_count = fs.values.count();
    v.params_used = family;
    if (const auto* ps = std::get_if<PiecewiseSyndetic>(&family.v)) {
      const std::int64_t ratio = std::max<std::int64_t>(1, v.tail_gcd / full_gcd);
      v.params_used = FamilySpec(PiecewiseSyndetic{ps->gap * ratio, ps->span});
    }
    v.belongs = family_check(fs.values, v.params_used).belongs;
    rep.all_pass = rep.all_pass && v.belongs;
    rep.tails.push_back(std::move(v));
  }
  return rep;
}

namespace {

struct BuilderLevel {
  std::vector<std::int64_t> block;
  std::int64_t y = 0;
};

// Values v (as block sums) acceptable as the next y given the running
// FS/FP value lists. A value passes when v itself, every v+s (s in FS)
// and every v*p (p in FP) that stays inside the window lands in A.
// strict = reject values with any above-window condition, keeping
// target_verified achievable.
struct ValueFilter {
  const WindowSet& a;
  const std::vector<std::int64_t>& fs;
  const std::vector<std::int64_t>& fp;
  std::int64_t rejected_membership = 0;
  std::int64_t rejected_cross_sum = 0;
  std::int64_t rejected_cross_product = 0;

  bool admissible(std::int64_t v, std::uint64_t* unchecked) {
    if (!a.contains(v)) {
      ++rejected_membership;
      return false;
    }
    for (auto s : fs) {
      if (v + s > a.window()) {
        if (unchecked)
          ++*unchecked;
        else {
          ++rejected_cross_sum;
          return false;
        }
      } else if (!a.contains(v + s)) {
        ++rejected_cross_sum;
        return false;
      }
    }
    for (auto p : fp) {
      if (v > a.window() / p) {
        if (unchecked)
          ++*unchecked;
        else {
          ++rejected_cross_product;
          return false;
        }
      } else if (!a.contains(v * p)) {
        ++rejected_cross_product;
        return false;
      }
    }
    return true;
  }
};

// Bitset of all block-sum values <= window achievable from positions
// [lo, hi] of xs.
WindowSet achievable_sums(const IntSequence& xs, std::size_t lo, std::size_t hi,
                          std::int64_t window) {
  std::vector<std::uint64_t> dp(static_cast<std::size_t>((window >> 6) + 1), 0);
  auto set_bit = [&](std::int64_t v) { dp[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1}
                                           << (v & 63); };
  auto get_bit = [&](std::int64_t v) {
    return (dp[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u;
  };
  for (std::size_t i = lo; i <= hi; ++i) {
    const std::int64_t x = xs.at(i);
    if (x > window) continue;
    // shift dp left by x and or-in, walking backwards via words
    const std::size_t words = dp.size();
    const std::size_t ws = static_cast<std::size_t>(x >> 6);
    const int bs = static_cast<int>(x & 63);
    for (std::size_t w = words; w-- > 0;) {
      std::uint64_t v = 0;
      if (w >= ws) {
        v = dp[w - ws] << bs;
        if (bs != 0 && w > ws) v |= dp[w - ws - 1] >> (64 - bs);
      }
      dp[w] |= v;
    }
    set_bit(x);
  }
  WindowSet out(window);
  for (std::int64_t v = 1; v <= window; ++v)
    if (get_bit(v)) out.insert(v);
  return out;
}

class BlockEnumerator {
public:
  // Blocks over positions [lo, k] of xs in (max index, size, lex) order.
  BlockEnumerator(std::size_t lo, std::size_t k, std::size_t size_cap)
      : lo_(lo), k_(k), size_cap_(size_cap) {}

  // returns false when exhausted
  bool next(std::vector<std::int64_t>& out) {
    while (true) {
      if (max_ == 0) {
        if (lo_ > k_) return false;
        max_ = lo_;
        size_ = 1;
        idx_.clear();
        out.assign(1, static_cast<std::int64_t>(max_));
        return true;
      }
      if (advance_combination()) {
        out.clear();
        for (auto i : idx_) out.push_back(static_cast<std::int64_t>(i));
        out.push_back(static_cast<std::int64_t>(max_));
        return true;
      }
      // next size, then next max
      ++size_;
      if (size_ > std::min(size_cap_, max_ - lo_ + 1)) {
        ++max_;
        if (max_ > k_) return false;
        size_ = 1;
        idx_.clear();
        out.assign(1, static_cast<std::int64_t>(max_));
        return true;
      }
      // first combination of size_-1 from [lo_, max_-1]
      idx_.resize(size_ - 1);
      for (std::size_t i = 0; i < size_ - 1; ++i) idx_[i] = lo_ + i;
      out.clear();
      for (auto i : idx_) out.push_back(static_cast<std::int64_t>(i));
      out.push_back(static_cast<std::int64_t>(max_));
      return true;
    }
  }

private:
  bool advance_combination() {
    if (idx_.empty()) return false;  // size 1 has a single block per max
    // positions drawn from [lo_, max_-1]
    std::size_t i = idx_.size();
    while (i-- > 0) {
      if (idx_[i] < max_ - 1 - (idx_.size() - 1 - i)) {
        ++idx_[i];
        for (std::size_t j = i + 1; j < idx_.size(); ++j) idx_[j] = idx_[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  std::size_t lo_, k_, size_cap_;
  std::size_t max_ = 0, size_ = 1;
  std::vector<std::size_t> idx_;
};

}  // namespace

namespace {

struct BuilderSearch {
  const IntSequence& xs;
  const WindowSet& a;
  std::size_t depth;
  std::int64_t budget;
  std::int64_t visited = 0;
  std::size_t deepest = 0;
  std::vector<BuilderLevel> levels;
  std::vector<std::int64_t> fs_values, fp_values;
  bool budget_hit = false;

  BuilderSearch(const IntSequence& s, const WindowSet& target, std::size_t d, std::int64_t b)
      : xs(s), a(target), depth(d), budget(b) {}

  // true when some achievable block-sum value from positions [lo, k]
  // passes the closure filter against the current FS/FP values. When
  // none does, no block from these positions can work either.
  bool level_feasible(std::size_t lo, SubsystemFailure* f) {
    if (lo > xs.size()) {
      if (f) {
        f->deepest_level = levels.size();
        f->detail = "no positions left for block " + std::to_string(levels.size() + 1);
      }
      return false;
    }
    const WindowSet ach = achievable_sums(xs, lo, xs.size(), a.window());
    ValueFilter filter{a, fs_values, fp_values, 0, 0, 0};
    for (std::int64_t v = ach.first(); v != 0; v = ach.next(v)) {
      std::uint64_t unchecked = 0;
      if (filter.admissible(v, &unchecked) && unchecked == 0) return true;
    }
    if (f) {
      f->deepest_level = levels.size();
      f->rejected_membership = filter.rejected_membership;
      f->rejected_cross_sum = filter.rejected_cross_sum;
      f->rejected_cross_product = filter.rejected_cross_product;
      f->detail = "no achievable block-sum value satisfies the closure conditions at level " +
                  std::to_string(levels.size() + 1);
    }
    return false;
  }

  bool dfs(std::size_t lo) {
    BlockEnumerator en(lo, xs.size(),
                       static_cast<std::size_t>(config().builder_block_size_cap));
    std::vector<std::int64_t> block;
    while (en.next(block)) {
      if (++visited > budget) {
        budget_hit = true;
        return false;
      }
      std::int64_t y = 0;
      for (auto pos : block) y += xs.at(static_cast<std::size_t>(pos));
      if (y > a.window()) continue;
      ValueFilter filter{a, fs_values, fp_values, 0, 0, 0};
      std::uint64_t unchecked = 0;
      if (!filter.admissible(y, &unchecked) || unchecked > 0) continue;

      levels.push_back(BuilderLevel{block, y});
      deepest = std::max(deepest, levels.size());
      const std::size_t fs_mark = fs_values.size(), fp_mark = fp_values.size();
      for (std::size_t i = 0; i < fs_mark; ++i) fs_values.push_back(fs_values[i] + y);
      fs_values.push_back(y);
      for (std::size_t i = 0; i < fp_mark; ++i) fp_values.push_back(fp_values[i] * y);
      fp_values.push_back(y);

      if (levels.size() == depth) return true;
      const std::size_t next_lo = static_cast<std::size_t>(block.back()) + 1;
      if (level_feasible(next_lo, nullptr) && dfs(next_lo)) return true;

      fs_values.resize(fs_mark);
      fp_values.resize(fp_mark);
      levels.pop_back();
      if (budget_hit) return false;
    }
    return false;
  }
};

}  // namespace

SubsystemOutcome build_fs_fp_subsystem(const IntSequence& xs, const WindowSet& a,
                                       std::size_t depth, std::int64_t budget) {
  if (a.empty()) throw ParamError("target set is empty");
  if (depth < 1) throw ParamError("depth must be >= 1");
  if (static_cast<int>(xs.size()) > config().builder_position_cap)
    throw ParamError("sequence has " + std::to_string(xs.size()) +
                     " positions; builder capped at " +
                     std::to_string(config().builder_position_cap));
  if (budget < 1) budget = config().builder_budget;

  SubsystemOutcome outcome;
  BuilderSearch search(xs, a, depth, budget);

  // Value-level pre-passes: level 1, and for depth >= 2 the level-2
  // conditions for every admissible first value. Either failing proves
  // impossibility without block enumeration (conditions depend on block
  // sums only, and position availability can only shrink).
  {
    SubsystemFailure f;
    if (!search.level_feasible(1, &f)) {
      outcome.failure = std::move(f);
      return outcome;
    }
  }
  if (depth >= 2) {
    const WindowSet ach1 = achievable_sums(xs, 1, xs.size(), a.window());
    bool some_first_extends = false;
    SubsystemFailure probe;
    std::int64_t admissible_firsts = 0;
    for (std::int64_t v = ach1.first(); v != 0 && !some_first_extends; v = ach1.next(v)) {
      if (!a.contains(v)) continue;
      ++admissible_firsts;
      search.fs_values.assign(1, v);
      search.fp_values.assign(1, v);
      search.levels.assign(1, BuilderLevel{{}, v});
      SubsystemFailure f;
      // most permissive position availability for block 2
      if (search.level_feasible(2, &f)) {
        some_first_extends = true;
      } else {
        probe.rejected_membership += f.rejected_membership;
        probe.rejected_cross_sum += f.rejected_cross_sum;
        probe.rejected_cross_product += f.rejected_cross_product;
      }
    }
    search.fs_values.clear();
    search.fp_values.clear();
    search.levels.clear();
    if (!some_first_extends && admissible_firsts > 0) {
      probe.deepest_level = 1;
      probe.detail = "every admissible first value (" + std::to_string(admissible_firsts) +
                     " candidates) fails the level-2 closure conditions";
      outcome.failure = std::move(probe);
      return outcome;
    }
  }

  if (search.dfs(1)) {
    std::vector<std::vector<std::int64_t>> blocks;
    std::vector<std::int64_t> ys;
    for (const auto& lv : search.levels) {
      blocks.push_back(lv.block);
      ys.push_back(lv.y);
    }
    WindowSet fs_set(a.window()), fp_set(a.window());
    for (auto v : search.fs_values) fs_set.insert(v);
    for (auto v : search.fp_values) fp_set.insert(v);
    SubsystemResult res(BlockSystem(blocks), IntSequence(ys), fs_set, fp_set);
    res.unchecked_conditions = 0;
    res.target_verified = verify_subsystem(res, xs, a);
    outcome.result = std::move(res);
    outcome.blocks_visited = search.visited;
    return outcome;
  }

  SubsystemFailure f;
  f.deepest_level = search.deepest;
  f.budget_exhausted = search.budget_hit;
  f.blocks_visited = search.visited;
  f.detail = search.budget_hit
                 ? "budget of " + std::to_string(budget) + " block visits exhausted"
                 : "search space exhausted without a witness";
  outcome.failure = std::move(f);
  outcome.blocks_visited = search.visited;
  return outcome;
}

bool verify_subsystem(const SubsystemResult& r, const IntSequence& xs, const WindowSet& a) {
  // blocks must reproduce ys
  const IntSequence recomputed = sum_subsystem(xs, r.blocks);
  if (recomputed.terms() != r.ys.terms()) return false;
  // FS/FP from scratch, requiring zero overflow
  const FsSystem fs = finite_sums(r.ys, a.window());
  const FsSystem fp = finite_products(r.ys, a.window());
  if (fs.overflow_subsets != 0 || fp.overflow_subsets != 0) return false;
  if (!(fs.values == r.fs_set) || !(fp.values == r.fp_set)) return false;
  return fs.values.subset_of(a) && fp.values.subset_of(a);
}

}  // namespace ll
