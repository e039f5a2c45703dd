#include "ll/family_check.hpp"

#include <algorithm>
#include <random>

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

// A length-`span` interval I = [s, e] is a pws witness when A & I is
// nonempty, its first member is within gap-1 of s, consecutive members
// differ by at most gap, and its last member is within gap-1 of e.
// (Equivalently: every gap-length subwindow of I meets A, degenerating
// to plain nonemptiness when gap >= span.)
bool pws_interval_ok(const WindowSet& a, std::int64_t gap, const IntervalWitness& w) {
  if (w.start < 1 || w.end > a.window() || w.end < w.start) return false;
  const std::int64_t first = a.next(w.start - 1);
  if (first == 0 || first > w.end) return false;
  if (first - w.start > gap - 1) return false;
  std::int64_t prev = first;
  for (std::int64_t m = a.next(prev); m != 0 && m <= w.end; m = a.next(m)) {
    if (m - prev > gap) return false;
    prev = m;
  }
  return w.end - prev <= gap - 1;
}

// Scan maximal runs of members with consecutive differences <= gap; a
// run [a_i, a_j] padded by gap-1 on both sides hosts every valid
// interval it can produce.
std::optional<IntervalWitness> pws_find(const WindowSet& a, std::int64_t gap,
                                        std::int64_t span) {
  const std::int64_t n = a.window();
  auto try_run = [&](std::int64_t run_first, std::int64_t run_last)
      -> std::optional<IntervalWitness> {
    const std::int64_t lo = std::max<std::int64_t>(1, run_first - (gap - 1));
    const std::int64_t hi = std::min<std::int64_t>(n, run_last + (gap - 1));
    if (hi - lo + 1 < span) return std::nullopt;
    const std::int64_t s = std::max(lo, run_first - span + 1);
    return IntervalWitness{s, s + span - 1};
  };
  std::int64_t run_start = 0, prev = 0;
  for (std::int64_t m = a.first(); m != 0; m = a.next(m)) {
    if (run_start == 0) {
      run_start = prev = m;
    } else if (m - prev <= gap) {
      prev = m;
    } else {
      if (auto w = try_run(run_start, prev)) return w;
      run_start = prev = m;
    }
  }
  if (run_start != 0)
    if (auto w = try_run(run_start, prev)) return w;
  return std::nullopt;
}

std::optional<DensityWitness> density_find(const WindowSet& a, const Rat& delta,
                                           std::int64_t len) {
  const std::int64_t n = a.window();
  const BigInt p = numerator(delta), q = denominator(delta);
  std::int64_t cnt = 0;
  for (std::int64_t i = 1; i <= len; ++i) cnt += a.contains(i) ? 1 : 0;
  for (std::int64_t s = 1;; ++s) {
    if (BigInt(cnt) * q >= p * len) return DensityWitness{s, len, cnt};
    if (s + len > n) break;
    cnt += a.contains(s + len) ? 1 : 0;
    cnt -= a.contains(s) ? 1 : 0;
  }
  return std::nullopt;
}

std::optional<APWitness> ap_find(const WindowSet& a, std::int64_t len) {
  const std::int64_t n = a.window();
  if (len == 1) {
    const std::int64_t m = a.first();
    if (m == 0) return std::nullopt;
    return APWitness{m, 1, 1};
  }
  for (std::int64_t d = 1; (len - 1) * d <= n - 1; ++d) {
    WindowSet b = a;
    for (std::int64_t j = 1; j < len; ++j) {
      b = intersect(b, shift_set(a, j * d));
      if (b.empty()) break;
    }
    const std::int64_t start = b.first();
    if (start != 0) return APWitness{start, d, len};
  }
  return std::nullopt;
}

// Exact comparison sum_{m in A} 1/m >= sigma without building the huge
// reduced fraction: 64.64 fixed-point lower bound F <= 2^64 * sum <
// F + |A|, exact integer comparison against sigma, and an exact mpq
// fallback only in the undecided band.
bool recip_at_least(const WindowSet& a, const Rat& sigma) {
  unsigned __int128 f = 0;
  std::int64_t cnt = 0;
  for (std::int64_t m = a.first(); m != 0; m = a.next(m)) {
    ++cnt;
    if (m == 1) {
      f += static_cast<unsigned __int128>(1) << 64;
    } else if ((m & (m - 1)) == 0) {
      int j = std::countr_zero(static_cast<std::uint64_t>(m));
      f += static_cast<unsigned __int128>(1) << (64 - j);
    } else {
      f += ~std::uint64_t{0} / static_cast<std::uint64_t>(m);
    }
  }
  const BigInt f_lo(static_cast<std::uint64_t>(f >> 64));
  const BigInt f_big = (f_lo << 64) + BigInt(static_cast<std::uint64_t>(f));
  const BigInt lhs_hi = (f_big + cnt) * denominator(sigma);
  const BigInt lhs_lo = f_big * denominator(sigma);
  const BigInt rhs = numerator(sigma) << 64;
  if (lhs_lo >= rhs) return true;
  if (lhs_hi < rhs) return false;
  Rat sum = 0;
  for (std::int64_t m = a.first(); m != 0; m = a.next(m)) {
    sum += Rat(1, m);
    if (sum >= sigma) return true;
  }
  return sum >= sigma;
}

bool ip_dfs(const WindowSet& a, int depth, std::vector<std::int64_t>& gens,
            std::vector<std::int64_t>& fs, std::int64_t fs_max) {
  if (static_cast<int>(gens.size()) == depth) return true;
  for (std::int64_t x = a.next(gens.empty() ? 0 : gens.back()); x != 0; x = a.next(x)) {
    if (x + fs_max > a.window()) break;  // larger x only overflows more
    bool ok = true;
    for (auto s : fs) {
      if (!a.contains(x + s)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const std::size_t mark = fs.size();
    gens.push_back(x);
    for (std::size_t i = 0; i < mark; ++i) fs.push_back(fs[i] + x);
    fs.push_back(x);
    if (ip_dfs(a, depth, gens, fs, fs_max + x)) return true;
    fs.resize(mark);
    gens.pop_back();
  }
  return false;
}

std::optional<GeneratorsWitness> ip_find(const WindowSet& a, int depth) {
  std::vector<std::int64_t> gens, fs;
  if (ip_dfs(a, depth, gens, fs, 0)) return GeneratorsWitness{gens};
  return std::nullopt;
}

// smallest (size, lex) block H and smallest shift a such that
// a + sum_{t in H} f_i(t) lands in A for every i of the entry.
std::optional<JEntryWitness> jset_entry_find(
    const WindowSet& a, const std::vector<std::vector<std::int64_t>>& entry,
    std::int64_t block_bound) {
  std::vector<std::int64_t> h;
  // enumerate nonempty subsets of [1, block_bound] by (size, lex)
  std::vector<std::int64_t> idx;
  for (std::int64_t size = 1; size <= block_bound; ++size) {
    idx.assign(static_cast<std::size_t>(size), 0);
    for (std::int64_t i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      // test this H
      WindowSet d = WindowSet::full(a.window());
      bool feasible = true;
      for (const auto& seq : entry) {
        std::int64_t s = 0;
        for (auto t : idx) s += seq[static_cast<std::size_t>(t - 1)];
        if (s >= a.window()) {
          feasible = false;
          break;
        }
        d = intersect(d, shift_set(a, s));
        if (d.empty()) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        const std::int64_t start = d.first();
        if (start != 0) return JEntryWitness{start, idx};
      }
      // next combination
      std::int64_t i = size - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == block_bound - (size - 1 - i)) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (std::int64_t j = i + 1; j < size; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;
}
}  // namespace

FamilyVerdict family_check(const WindowSet& a, const FamilySpec& f) {
  f.validate();
  const std::int64_t n = a.window();
  FamilyVerdict out;
  out.params_echo = f;
  out.window = n;

  std::visit(
      overloaded{
          [&](const Infinite& x) {
            if (x.min_card > n)
              throw ParamError("window " + std::to_string(n) + " cannot hold " +
                               std::to_string(x.min_card) + " members");
            out.belongs = a.count() >= x.min_card;
          },
          [&](const PiecewiseSyndetic& x) {
            if (x.span > n)
              throw ParamError("pws span " + std::to_string(x.span) + " exceeds window " +
                               std::to_string(n));
            auto w = pws_find(a, x.gap, x.span);
            out.belongs = w.has_value();
            if (w) out.witness = *w;
          },
          [&](const UpperDensity& x) {
            if (x.block_len > n)
              throw ParamError("density block " + std::to_string(x.block_len) +
                               " exceeds window " + std::to_string(n));
            auto w = density_find(a, x.delta, x.block_len);
            out.belongs = w.has_value();
            if (w) out.witness = *w;
          },
          [&](const APRich& x) {
            if (x.ap_len > n)
              throw ParamError("ap length " + std::to_string(x.ap_len) + " exceeds window " +
                               std::to_string(n));
            auto w = ap_find(a, x.ap_len);
            out.belongs = w.has_value();
            if (w) out.witness = *w;
          },
          [&](const ReciprocalSum& x) { out.belongs = recip_at_least(a, x.sigma); },
          [&](const JSetSpec& x) {
            const auto battery = jset_battery(x, config().seed);
            JSetWitness jw;
            bool all = true;
            for (const auto& entry : battery) {
              auto ew = jset_entry_find(a, entry, x.block_bound);
              if (!ew) {
                all = false;
                break;
              }
              jw.entries.push_back(*ew);
            }
            out.belongs = all;
            if (all) out.witness = jw;
          },
          [&](const IPDepth& x) {
            if (x.depth < 63 && n < (std::int64_t{1} << x.depth) - 1)
              throw ParamError("window " + std::to_string(n) + " cannot host depth-" +
                               std::to_string(x.depth) + " finite sums");
            auto w = ip_find(a, x.depth);
            out.belongs = w.has_value();
            if (w) out.witness = *w;
          },
      },
      f.v);
  return out;
}

FamilyVerdict dual_check(const WindowSet& e, const FamilySpec& f) {
  const FamilyVerdict inner = family_check(complement(e), f);
  FamilyVerdict out;
  out.belongs = !inner.belongs;
  out.params_echo = f;
  out.window = e.window();
  return out;
}

bool witness_valid(const WindowSet& a, const FamilySpec& f, const Witness& w) {
  return std::visit(
      overloaded{
          [&](const IntervalWitness& iv) {
            const auto* ps = std::get_if<PiecewiseSyndetic>(&f.v);
            if (ps == nullptr) return false;
            return iv.end - iv.start + 1 == ps->span && pws_interval_ok(a, ps->gap, iv);
          },
          [&](const DensityWitness& dw) {
            const auto* ud = std::get_if<UpperDensity>(&f.v);
            if (ud == nullptr || dw.len != ud->block_len) return false;
            if (dw.start < 1 || dw.start + dw.len - 1 > a.window()) return false;
            std::int64_t cnt = 0;
            for (std::int64_t i = dw.start; i < dw.start + dw.len; ++i)
              cnt += a.contains(i) ? 1 : 0;
            return cnt == dw.count &&
                   BigInt(cnt) * denominator(ud->delta) >= numerator(ud->delta) * dw.len;
          },
          [&](const APWitness& ap) {
            const auto* spec = std::get_if<APRich>(&f.v);
            if (spec == nullptr || ap.len != spec->ap_len || ap.step < 1) return false;
            for (std::int64_t j = 0; j < ap.len; ++j)
              if (!a.contains(ap.start + j * ap.step)) return false;
            return true;
          },
          [&](const GeneratorsWitness& gw) {
            const auto* spec = std::get_if<IPDepth>(&f.v);
            if (spec == nullptr || static_cast<int>(gw.gens.size()) != spec->depth) return false;
            for (std::size_t i = 1; i < gw.gens.size(); ++i)
              if (gw.gens[i] <= gw.gens[i - 1]) return false;
            const std::size_t k = gw.gens.size();
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
              std::int64_t s = 0;
              for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::uint64_t{1} << i)) s += gw.gens[i];
              if (s > a.window() || !a.contains(s)) return false;
            }
            return true;
          },
          [&](const JSetWitness& jw) {
            const auto* spec = std::get_if<JSetSpec>(&f.v);
            if (spec == nullptr) return false;
            const auto battery = jset_battery(*spec, config().seed);
            if (jw.entries.size() != battery.size()) return false;
            for (std::size_t e = 0; e < battery.size(); ++e) {
              const auto& ew = jw.entries[e];
              if (ew.block.empty()) return false;
              for (const auto& seq : battery[e]) {
                std::int64_t s = ew.a;
                for (auto t : ew.block) {
                  if (t < 1 || t > spec->block_bound) return false;
                  s += seq[static_cast<std::size_t>(t - 1)];
                }
                if (s > a.window() || !a.contains(s)) return false;
              }
            }
            return true;
          },
      },
      w);
}

RamseyReport ramsey_probe(const WindowSet& a, const FamilySpec& f, std::int64_t trials,
                          const Relaxation& relax, std::uint64_t seed) {
  if (trials < 1) throw ParamError("ramsey_probe needs at least one trial");
  if (!family_check(a, f).belongs)
    throw ParamError("ramsey_probe requires the base set to pass family_check(" + f.describe() +
                     ")");
  RamseyReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.family = f;
  rep.relaxed_family = relax_family(f, relax);

  std::mt19937_64 rng(seed);
  const auto members = a.members();
  for (std::int64_t t = 0; t < trials; ++t) {
    WindowSet a1(a.window()), a2(a.window());
    for (auto m : members) {
      if (rng() & 1u)
        a1.insert(m);
      else
        a2.insert(m);
    }
    if (family_check(a1, rep.relaxed_family).belongs ||
        family_check(a2, rep.relaxed_family).belongs)
      ++rep.successes;
  }
  rep.fraction = static_cast<double>(rep.successes) / static_cast<double>(trials);
  return rep;
}

InvarianceReport invariance_probe(const FamilySpec& f, const WindowSet& a,
                                  const std::vector<std::int64_t>& shifts,
                                  const std::vector<std::int64_t>& dilations) {
  InvarianceReport rep;
  rep.base = family_check(a, f);
  for (auto x : shifts) {
    InvarianceRow row;
    row.op = "shift";
    row.amount = x;
    row.params_used = f;
    row.belongs = family_check(shift_set(a, x), f).belongs;
    row.preserved = row.belongs == rep.base.belongs;
    rep.rows.push_back(std::move(row));
  }
  for (auto n : dilations) {
    InvarianceRow row;
    row.op = "dilate";
    row.amount = n;
    row.params_used = rescale_for_dilation(f, n);
    row.belongs = family_check(dilate(a, n), row.params_used).belongs;
    row.preserved = row.belongs == rep.base.belongs;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace ll
