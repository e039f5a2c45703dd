#include "ll/certificates.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ll/config.hpp"
#include "ll/errors.hpp"
#include "ll/family_check.hpp"

namespace ll {

namespace {
std::string word_str(const std::vector<std::int64_t>& w) {
  std::ostringstream out;
  out << '<';
  for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << w[i];
  out << '>';
  return out.str();
}

/// Same members, wider window.
WindowSet embed(const WindowSet& s, std::int64_t window) {
  WindowSet out(window);
  for (std::int64_t m = s.first(); m != 0; m = s.next(m)) out.insert(m);
  return out;
}
}  // namespace

FunctionTree::FunctionTree(WindowSet target, std::vector<std::vector<std::int64_t>> words,
                           std::optional<int> depth_horizon)
    : target_(std::move(target)), words_(std::move(words)), depth_horizon_(depth_horizon) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  if (words_.empty() || !words_.front().empty())
    throw ParamError("tree must contain the empty word as root");
  const int depth_cap = config().tree_depth_cap;
  for (const auto& w : words_) {
    if (static_cast<int>(w.size()) > depth_cap)
      throw ParamError("tree word " + word_str(w) + " exceeds depth cap " +
                       std::to_string(depth_cap));
    for (auto letter : w)
      if (letter < 1 || letter > target_.window())
        throw ParamError("tree letter " + std::to_string(letter) + " outside window [1, " +
                         std::to_string(target_.window()) + "]");
  }
  // prefix closure + children index
  for (const auto& w : words_) {
    if (w.empty()) continue;
    std::vector<std::int64_t> prefix(w.begin(), w.end() - 1);
    if (!std::binary_search(words_.begin(), words_.end(), prefix))
      throw ParamError("tree not prefix-closed: " + word_str(w) + " lacks " +
                       word_str(prefix));
    children_[prefix].push_back(w.back());
  }
  const int branch_cap = config().tree_branching_cap;
  for (auto& [node, kids] : children_) {
    std::sort(kids.begin(), kids.end());
    if (static_cast<int>(kids.size()) > branch_cap)
      throw ParamError("node " + word_str(node) + " has " + std::to_string(kids.size()) +
                       " children; branching cap " + std::to_string(branch_cap));
  }
  if (depth_horizon_ && *depth_horizon_ < 0) throw ParamError("depth horizon must be >= 0");
}

bool FunctionTree::is_node(const std::vector<std::int64_t>& f) const {
  return std::binary_search(words_.begin(), words_.end(), f);
}

bool FunctionTree::is_frontier(const std::vector<std::int64_t>& f) const {
  return depth_horizon_ && static_cast<int>(f.size()) >= *depth_horizon_;
}

FunctionTree FunctionTree::all_words(const WindowSet& target, const WindowSet& letters,
                                     int depth) {
  const auto ls = letters.members();
  std::vector<std::vector<std::int64_t>> words;
  words.push_back({});
  std::size_t level_begin = 0;
  for (int d = 0; d < depth; ++d) {
    const std::size_t level_end = words.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (auto x : ls) {
        auto w = words[i];
        w.push_back(x);
        words.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return FunctionTree(target, std::move(words), depth);
}

WindowSet bf_set(const FunctionTree& t, const std::vector<std::int64_t>& f) {
  if (!t.is_node(f)) throw ParamError("bf_set: " + word_str(f) + " is not a node");
  WindowSet out(t.window());
  const auto it = t.children_.find(f);
  if (it != t.children_.end())
    for (auto x : it->second) out.insert(x);
  return out;
}

TreeReport verify_tree(const FunctionTree& t, const FamilySpec& family, int subset_bound) {
  if (subset_bound < 1) subset_bound = config().tree_subset_bound;
  TreeReport rep;
  rep.nodes = static_cast<std::int64_t>(t.nodes().size());

  // (i) range condition: last letter of every nonroot word in target
  // (prefix closure covers the earlier letters).
  for (const auto& w : t.nodes()) {
    if (w.empty()) continue;
    if (!t.target().contains(w.back())) {
      rep.violation = TreeViolation{"range", w, w.back(),
                                    "letter " + std::to_string(w.back()) + " not in target"};
      return rep;
    }
  }

  // B sets, aligned with node order
  std::vector<WindowSet> bsets;
  bsets.reserve(t.nodes().size());
  for (const auto& w : t.nodes()) bsets.push_back(bf_set(t, w));

  // (ii) B_{f^x} restricted to [1, N-x] inside -x + B_f
  const std::int64_t n = t.window();
  for (std::size_t i = 0; i < t.nodes().size(); ++i) {
    const auto& f = t.nodes()[i];
    const WindowSet& bf = bsets[i];
    for (std::int64_t x = bf.first(); x != 0; x = bf.next(x)) {
      auto fx = f;
      fx.push_back(x);
      const WindowSet bfx = bf_set(t, fx);
      ++rep.shift_checks;
      if (x >= n) {  // effective window empty: nothing checkable
        rep.shift_checks_window_skipped += bfx.count();
        continue;
      }
      rep.shift_checks_window_skipped += bfx.count() - bfx.restricted(n - x).count();
      const WindowSet lhs = bfx.restricted(n - x);
      const WindowSet rhs = shift_set(bf, x);
      if (!lhs.subset_of(rhs)) {
        rep.violation = TreeViolation{
            "shift", f, x,
            "B_" + word_str(fx) + " not inside -" + std::to_string(x) + " + B_" + word_str(f)};
        return rep;
      }
    }
  }

  // (iii) intersections over non-frontier nodes
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < t.nodes().size(); ++i)
    if (!t.is_frontier(t.nodes()[i])) interior.push_back(i);
  rep.interior_nodes = static_cast<std::int64_t>(interior.size());
  rep.family_checks_frontier_skipped =
      static_cast<std::int64_t>(t.nodes().size() - interior.size());

  // enumerate index subsets of size 1..subset_bound
  auto check_intersection = [&](const std::vector<std::size_t>& ids) -> bool {
    WindowSet c = bsets[ids[0]];
    for (std::size_t j = 1; j < ids.size(); ++j) c = intersect(c, bsets[ids[j]]);
    ++rep.family_checks;
    if (!family_check(c, family).belongs) {
      std::ostringstream detail;
      detail << "intersection over {";
      for (std::size_t j = 0; j < ids.size(); ++j)
        detail << (j ? ", " : "") << word_str(t.nodes()[ids[j]]);
      detail << "} fails " << family.describe();
      rep.violation = TreeViolation{"family", t.nodes()[ids[0]], 0, detail.str()};
      return false;
    }
    return true;
  };
  // recursive subset enumeration
  std::vector<std::size_t> stackv;
  const std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (!stackv.empty() && !check_intersection(stackv)) return false;
    if (static_cast<int>(stackv.size()) == subset_bound) return true;
    for (std::size_t i = start; i < interior.size(); ++i) {
      stackv.push_back(interior[i]);
      if (!rec(i + 1)) return false;
      stackv.pop_back();
    }
    return true;
  };
  if (!rec(0)) return rep;

  rep.pass = true;
  return rep;
}

ChainReport verify_chain(const ChainCertificate& cert) {
  const std::size_t levels = cert.chain.size();
  if (levels == 0) throw ParamError("chain certificate has no levels");
  const std::int64_t n = cert.target.window();
  for (const auto& c : cert.chain)
    if (c.window() != n)
      throw ParamError("chain sets must share the target's window");

  // shift_map domain must be exactly {(n, x) : x in C_n}, with levels in range
  for (const auto& [key, m] : cert.shift_map) {
    const auto [lvl, x] = key;
    if (lvl < 1 || lvl > static_cast<std::int64_t>(levels))
      throw ParamError("shift_map level " + std::to_string(lvl) + " out of range");
    if (m < 1 || m > static_cast<std::int64_t>(levels))
      throw ParamError("shift_map target level " + std::to_string(m) + " out of range");
    if (!cert.chain[static_cast<std::size_t>(lvl - 1)].contains(x))
      throw ParamError("shift_map entry (" + std::to_string(lvl) + ", " + std::to_string(x) +
                       ") is not a member of its level");
  }
  std::size_t expected_entries = 0;
  for (std::size_t i = 0; i < levels; ++i)
    expected_entries += static_cast<std::size_t>(cert.chain[i].count());
  if (cert.shift_map.size() != expected_entries)
    throw ParamError("shift_map domain incomplete: " + std::to_string(cert.shift_map.size()) +
                     " entries for " + std::to_string(expected_entries) + " (level, member) pairs");

  ChainReport rep;
  rep.min_effective_window = n;
  rep.worst_shift_margin = n;

  if (!cert.chain[0].subset_of(cert.target)) {
    rep.failure = "C_1 is not contained in the target set";
    return rep;
  }
  for (std::size_t i = 1; i < levels; ++i) {
    if (!cert.chain[i].subset_of(cert.chain[i - 1])) {
      rep.failure = "C_" + std::to_string(i + 1) + " is not contained in C_" + std::to_string(i);
      return rep;
    }
  }

  bool families_ok = true;
  for (std::size_t i = 0; i < levels; ++i) {
    ChainLevelReport lr;
    lr.level = static_cast<std::int64_t>(i + 1);
    lr.size = cert.chain[i].count();
    lr.family_pass = family_check(cert.chain[i], cert.family).belongs;
    families_ok = families_ok && lr.family_pass;
    rep.levels.push_back(lr);
  }
  if (!families_ok) {
    rep.failure = "some level fails " + cert.family.describe();
    return rep;
  }

  for (const auto& [key, m] : cert.shift_map) {
    const auto [lvl, x] = key;
    const WindowSet& cn = cert.chain[static_cast<std::size_t>(lvl - 1)];
    const WindowSet& cm = cert.chain[static_cast<std::size_t>(m - 1)];
    if (x >= n) {
      rep.min_effective_window = 0;
      continue;  // empty effective window: vacuous
    }
    rep.min_effective_window = std::min(rep.min_effective_window, n - x);
    const WindowSet lhs = cm.restricted(n - x);
    const WindowSet rhs = shift_set(cn, x);
    if (!lhs.subset_of(rhs)) {
      rep.failure = "C_" + std::to_string(m) + " not inside -" + std::to_string(x) + " + C_" +
                    std::to_string(lvl);
      return rep;
    }
    rep.worst_shift_margin = std::min(rep.worst_shift_margin, rhs.count() - lhs.count());
  }

  rep.pass = true;
  return rep;
}

namespace {

// A & (-x + A), re-embedded on A's window.
WindowSet stabilize(const WindowSet& s, std::int64_t x) {
  if (x >= s.window()) return WindowSet(s.window());
  return intersect(s, embed(shift_set(s, x), s.window()));
}

// constant chain condition: S restricted to [1, N-x] inside -x + S for
// every member x (windowed sum closure)
bool shift_stable(const WindowSet& s) {
  const std::int64_t n = s.window();
  for (std::int64_t x = s.first(); x != 0; x = s.next(x)) {
    if (x >= n) continue;
    if (!s.restricted(n - x).subset_of(shift_set(s, x))) return false;
  }
  return true;
}

ChainCertificate make_constant_chain(const WindowSet& a, const WindowSet& s,
                                     const FamilySpec& family, std::int64_t depth) {
  std::vector<WindowSet> chain(static_cast<std::size_t>(depth), s);
  ChainCertificate cert(a, std::move(chain), family);
  for (std::int64_t lvl = 1; lvl <= depth; ++lvl)
    for (std::int64_t x = s.first(); x != 0; x = s.next(x))
      cert.shift_map[{lvl, x}] = lvl;
  return cert;
}

}  // namespace

ChainSearchOutcome find_chain(const WindowSet& a, const FamilySpec& family, std::int64_t depth,
                              std::int64_t budget) {
  if (depth < 1) throw ParamError("chain depth must be >= 1");
  if (budget < 1) budget = config().chain_budget;
  ChainSearchOutcome out;
  if (!family_check(a, family).belongs) {
    out.failure = ChainSearchFailure{1, 0, false,
                                     "the target set itself fails " + family.describe()};
    return out;
  }

  // Candidate lattice: A and its iterated shift-stabilizations, BFS
  // order, deduplicated. Generation is capped by the budget.
  std::vector<WindowSet> candidates;
  candidates.push_back(a);
  std::int64_t tried = 0;
  const int stab_shifts = 8;  // stabilize against the first few members

  for (std::size_t qi = 0; qi < candidates.size(); ++qi) {
    if (static_cast<std::int64_t>(candidates.size()) > budget) break;
    // constant-chain test on this candidate
    const WindowSet s = candidates[qi];
    ++tried;
    if (tried > budget) {
      out.failure = ChainSearchFailure{0, tried, true, "candidate budget exhausted"};
      return out;
    }
    if (!s.empty() && family_check(s, family).belongs && shift_stable(s)) {
      out.certificate = make_constant_chain(a, s, family, depth);
      return out;
    }
    // children
    int added = 0;
    for (std::int64_t x = s.first(); x != 0 && added < stab_shifts; x = s.next(x)) {
      const WindowSet child = stabilize(s, x);
      ++added;
      if (child.empty()) continue;
      bool seen = false;
      for (const auto& c : candidates)
        if (c == child) {
          seen = true;
          break;
        }
      if (!seen) candidates.push_back(child);
    }
  }

  // Nested fallback: pick levels from the candidate list (subset-ordered),
  // then try to discharge every shift condition by pointing at the
  // deepest level that fits.
  std::vector<std::size_t> pick;
  const std::function<bool(std::size_t)> build = [&](std::size_t from) -> bool {
    if (static_cast<std::int64_t>(pick.size()) == depth) return true;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      if (++tried > budget) return false;
      const WindowSet& s = candidates[i];
      if (s.empty()) continue;
      if (!pick.empty() && !s.subset_of(candidates[pick.back()])) continue;
      if (!family_check(s, family).belongs) continue;
      pick.push_back(i);
      if (build(i)) return true;  // i again allowed: repeated levels are legal
      pick.pop_back();
    }
    return false;
  };

  if (build(0)) {
    std::vector<WindowSet> chain;
    for (auto i : pick) chain.push_back(candidates[i]);
    ChainCertificate cert(a, chain, family);
    bool all_assigned = true;
    const std::int64_t n = a.window();
    for (std::int64_t lvl = 1; lvl <= depth && all_assigned; ++lvl) {
      const WindowSet& cn = cert.chain[static_cast<std::size_t>(lvl - 1)];
      for (std::int64_t x = cn.first(); x != 0; x = cn.next(x)) {
        std::int64_t assigned = 0;
        if (x >= n) {
          assigned = depth;  // vacuous; point anywhere
        } else {
          const WindowSet rhs = shift_set(cn, x);
          for (std::int64_t m = 1; m <= depth; ++m) {
            if (cert.chain[static_cast<std::size_t>(m - 1)].restricted(n - x).subset_of(rhs)) {
              assigned = m;
              break;
            }
          }
        }
        if (assigned == 0) {
          all_assigned = false;
          break;
        }
        cert.shift_map[{lvl, x}] = assigned;
      }
    }
    if (all_assigned) {
      out.certificate = std::move(cert);
      return out;
    }
  }

  out.failure = ChainSearchFailure{
      depth, tried, tried > budget,
      "no depth-" + std::to_string(depth) + " chain over " +
          std::to_string(candidates.size()) + " lattice candidates"};
  return out;
}

CorrespondenceReport tree_chain_correspondence(const FunctionTree& t, const FamilySpec& family,
                                               int subset_bound) {
  if (subset_bound < 1) subset_bound = config().tree_subset_bound;
  CorrespondenceReport rep;
  const std::int64_t n = t.window();

  // Nodes two levels inside the horizon: their one-step extensions keep
  // exact B sets, so every emitted check is a real one.
  std::vector<std::size_t> deep;
  for (std::size_t i = 0; i < t.nodes().size(); ++i) {
    const auto& w = t.nodes()[i];
    if (!t.depth_horizon() || static_cast<int>(w.size()) <= *t.depth_horizon() - 2)
      deep.push_back(i);
  }
  std::vector<WindowSet> bsets;
  bsets.reserve(t.nodes().size());
  for (const auto& w : t.nodes()) bsets.push_back(bf_set(t, w));

  std::vector<std::size_t> pick;
  const std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (!pick.empty()) {
      WindowSet cf = bsets[pick[0]];
      for (std::size_t j = 1; j < pick.size(); ++j) cf = intersect(cf, bsets[pick[j]]);
      ++rep.sets_checked;
      if (!family_check(cf, family).belongs) {
        std::ostringstream msg;
        msg << "C_F fails " << family.describe() << " for F = {";
        for (std::size_t j = 0; j < pick.size(); ++j)
          msg << (j ? ", " : "") << word_str(t.nodes()[pick[j]]);
        msg << "}";
        rep.failure = msg.str();
        return false;
      }
      // shift condition: G = {f^x : f in F}
      for (std::int64_t x = cf.first(); x != 0; x = cf.next(x)) {
        bool frontier = false;
        WindowSet cg = WindowSet::full(n);
        for (auto fi : pick) {
          auto fx = t.nodes()[fi];
          fx.push_back(x);
          if (t.is_frontier(fx)) {
            frontier = true;
            break;
          }
          cg = intersect(cg, bf_set(t, fx));
        }
        if (frontier) {
          ++rep.shift_conditions_horizon_skipped;
          continue;
        }
        ++rep.shift_conditions_checked;
        if (x >= n) continue;
        if (!cg.restricted(n - x).subset_of(shift_set(cf, x))) {
          rep.failure = "C_G not inside -" + std::to_string(x) + " + C_F for F = {" +
                        word_str(t.nodes()[pick[0]]) + ", ...}";
          return false;
        }
      }
    }
    if (static_cast<int>(pick.size()) == subset_bound) return true;
    for (std::size_t i = start; i < deep.size(); ++i) {
      pick.push_back(deep[i]);
      if (!rec(i + 1)) return false;
      pick.pop_back();
    }
    return true;
  };
  if (!rec(0)) return rep;
  rep.pass = true;
  return rep;
}

}  // namespace ll
