#include "ll/mds.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "ll/config.hpp"
#include "ll/errors.hpp"
#include "ll/family_check.hpp"

namespace ll {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

BigFloat guard_band() {
  return BigFloat(1) / BigFloat(BigInt(1) << 64);
}

BigFloat frac_part(const BigFloat& x) {
  BigFloat f = x - floor(x);
  if (f < 0) f += 1;
  if (f >= 1) f -= 1;
  return f;
}
}  // namespace

std::string system_name(const MpsSpec& sys) {
  return std::visit(overloaded{[](const CyclicRotation&) { return std::string("cyclic"); },
                               [](const TorusRotation&) { return std::string("torus"); },
                               [](const DoublingMap&) { return std::string("doubling"); },
                               [](const BernoulliShift&) { return std::string("bernoulli"); }},
                    sys);
}

void validate_system(const MpsSpec& sys) {
  std::visit(overloaded{
                 [](const CyclicRotation& s) {
                   if (s.modulus < 2) throw ParamError("cyclic: modulus must be >= 2");
                   if (s.modulus > config().max_window)
                     throw ParamError("cyclic: modulus exceeds the configured maximum window");
                   if (s.step < 0 || s.step >= s.modulus)
                     throw ParamError("cyclic: step must lie in [0, modulus)");
                 },
                 [](const TorusRotation& s) {
                   if (s.alpha <= 0 || s.alpha >= 1)
                     throw ParamError("torus: alpha must lie in (0, 1)");
                 },
                 [](const DoublingMap& s) {
                   if (s.expo < 1 || s.expo > 62) throw ParamError("doubling: expo in [1, 62]");
                 },
                 [](const BernoulliShift& s) {
                   if (s.p <= 0 || s.p >= 1) throw ParamError("bernoulli: p must lie in (0, 1)");
                   if (s.stride < 1) throw ParamError("bernoulli: stride must be >= 1");
                 },
             },
             sys);
}

BigFloat torus_alpha(const std::string& text) {
  if (text == "golden") return (sqrt(BigFloat(5)) - 1) / 2;
  if (text == "sqrt2m1") return sqrt(BigFloat(2)) - 1;
  if (text.find('/') != std::string::npos)
    throw ParamError("torus alpha `" + text + "` is an exact rational; rotation would be periodic");
  BigFloat a;
  try {
    a = BigFloat(text);
  } catch (const std::exception&) {
    throw ParseError("cannot parse torus alpha `" + text + "`");
  }
  if (a <= 0 || a >= 1) throw ParamError("torus alpha must lie in (0, 1)");
  // Continued-fraction probe at working precision: a small-denominator
  // rational terminates quickly and is rejected.
  const BigFloat floor_eps = pow(BigFloat(2), -(config().precision_bits - 16));
  BigFloat x = a;
  BigInt q_prev = 0, q = 1;  // convergent denominators
  for (int depth = 0; depth < 64; ++depth) {
    const BigFloat fp = frac_part(x);
    if (fp < floor_eps) {
      if (q < (BigInt(1) << 16))
        throw ParamError("torus alpha `" + text +
                         "` is rational to working precision (denominator " + q.str() + ")");
      return a;
    }
    x = 1 / fp;
    if (x > BigFloat(std::int64_t{1} << 40)) return a;  // giant partial quotient; accept
    const BigInt ai(floor(x).convert_to<long long>());
    const BigInt q_next = ai * q + q_prev;
    q_prev = q;
    q = q_next;
    if (q > (BigInt(1) << 16)) return a;  // effectively irrational at scale
  }
  return a;
}

MpsSpec power_system(const MpsSpec& sys, std::int64_t n, bool* degenerate) {
  if (n < 1 || n > config().max_window)
    throw ParamError("power must lie in [1, max window]");
  if (degenerate) *degenerate = false;
  return std::visit(
      overloaded{
          [&](const CyclicRotation& s) -> MpsSpec {
            CyclicRotation out = s;
            out.step = (s.step % s.modulus) * (n % s.modulus) % s.modulus;
            if (out.step == 0 && degenerate) *degenerate = true;
            return out;
          },
          [&](const TorusRotation& s) -> MpsSpec {
            TorusRotation out;
            out.alpha = frac_part(BigFloat(n) * s.alpha);
            out.label = s.label + "*" + std::to_string(n);
            return out;
          },
          [&](const DoublingMap& s) -> MpsSpec {
            if (n > 62 || s.expo * n > 62) throw ParamError("doubling power too large");
            return DoublingMap{static_cast<int>(s.expo * n)};
          },
          [&](const BernoulliShift& s) -> MpsSpec {
            return BernoulliShift{s.p, s.stride * n};
          },
      },
      sys);
}

void validate_event(const MpsSpec& sys, const EventSet& e) {
  const std::string sname = system_name(sys);
  std::visit(
      overloaded{
          [&](const ResidueSet& r) {
            const auto* c = std::get_if<CyclicRotation>(&sys);
            if (c == nullptr)
              throw ParamError("residue events only fit cyclic systems, not " + sname);
            std::int64_t prev = -1;
            for (auto v : r.residues) {
              if (v < 0 || v >= c->modulus)
                throw ParamError("residue " + std::to_string(v) + " outside [0, " +
                                 std::to_string(c->modulus) + ")");
              if (v <= prev) throw ParamError("residues must be strictly ascending");
              prev = v;
            }
          },
          [&](const RatIntervals& iv) {
            const bool doubling = std::holds_alternative<DoublingMap>(sys);
            const bool torus = std::holds_alternative<TorusRotation>(sys);
            if (!doubling && !torus)
              throw ParamError("interval events only fit doubling/torus systems, not " + sname);
            Rat prev_end(0);
            bool first = true;
            for (const auto& [l, r] : iv.parts) {
              if (l < 0 || r > 1 || l >= r)
                throw ParamError("interval endpoints must satisfy 0 <= l < r <= 1");
              if (!first && l < prev_end) throw ParamError("intervals must be disjoint, sorted");
              first = false;
              prev_end = r;
              if (doubling) {
                for (const Rat* endp : {&l, &r}) {
                  const BigInt den = denominator(*endp);
                  if ((den & (den - 1)) != 0)
                    throw ParamError("doubling events need dyadic endpoints, got " +
                                     format_rational(*endp));
                }
              }
            }
          },
          [&](const FloatIntervals& iv) {
            if (!std::holds_alternative<TorusRotation>(sys))
              throw ParamError("high-precision intervals only fit the torus, not " + sname);
            BigFloat prev_end(0);
            bool first = true;
            for (const auto& [l, r] : iv.parts) {
              if (l < 0 || r > 1 || l >= r)
                throw ParamError("interval endpoints must satisfy 0 <= l < r <= 1");
              if (!first && l < prev_end) throw ParamError("intervals must be disjoint, sorted");
              first = false;
              prev_end = r;
            }
          },
          [&](const CylinderSet& c) {
            if (!std::holds_alternative<BernoulliShift>(sys))
              throw ParamError("cylinder events only fit the Bernoulli shift, not " + sname);
            if (c.offset < 0) throw ParamError("cylinder offset must be >= 0");
            if (c.symbols.empty()) throw ParamError("cylinder must fix at least one symbol");
            for (auto s : c.symbols)
              if (s != 0 && s != 1) throw ParamError("cylinder symbols must be 0 or 1");
          },
      },
      e);
}

MeasureValue measure(const MpsSpec& sys, const EventSet& e) {
  validate_system(sys);
  validate_event(sys, e);
  MeasureValue out;
  std::visit(overloaded{
                 [&](const ResidueSet& r) {
                   const auto& c = std::get<CyclicRotation>(sys);
                   out.r = Rat(static_cast<std::int64_t>(r.residues.size()), c.modulus);
                 },
                 [&](const RatIntervals& iv) {
                   Rat total(0);
                   for (const auto& [l, r] : iv.parts) total += r - l;
                   out.r = total;
                 },
                 [&](const FloatIntervals& iv) {
                   out.exact = false;
                   BigFloat total(0);
                   for (const auto& [l, r] : iv.parts) total += r - l;
                   out.f = total;
                 },
                 [&](const CylinderSet& c) {
                   const auto& b = std::get<BernoulliShift>(sys);
                   Rat total(1);
                   for (auto s : c.symbols) total *= (s == 1 ? b.p : Rat(1) - b.p);
                   out.r = total;
                 },
             },
             e);
  if (out.exact) out.f = rat_to_bigfloat(out.r);
  return out;
}

namespace {

// normalized torus interval union ops (sorted disjoint half-open parts)
std::vector<std::pair<BigFloat, BigFloat>> normalize_parts(
    std::vector<std::pair<BigFloat, BigFloat>> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<BigFloat, BigFloat>> out;
  for (auto& p : parts) {
    if (p.second <= p.first) continue;
    if (!out.empty() && p.first <= out.back().second) {
      if (p.second > out.back().second) out.back().second = p.second;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<std::pair<BigFloat, BigFloat>> shift_parts_mod1(
    const std::vector<std::pair<BigFloat, BigFloat>>& parts, const BigFloat& t) {
  // translate by -t mod 1 (the preimage of rotation by t)
  std::vector<std::pair<BigFloat, BigFloat>> out;
  for (const auto& [l, r] : parts) {
    BigFloat nl = frac_part(l - t);
    const BigFloat len = r - l;
    if (nl + len <= 1) {
      out.emplace_back(nl, nl + len);
    } else {
      out.emplace_back(nl, BigFloat(1));
      out.emplace_back(BigFloat(0), nl + len - 1);
    }
  }
  return normalize_parts(std::move(out));
}

std::vector<std::pair<BigFloat, BigFloat>> intersect_parts(
    const std::vector<std::pair<BigFloat, BigFloat>>& a,
    const std::vector<std::pair<BigFloat, BigFloat>>& b) {
  std::vector<std::pair<BigFloat, BigFloat>> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const BigFloat lo = a[i].first > b[j].first ? a[i].first : b[j].first;
    const BigFloat hi = a[i].second < b[j].second ? a[i].second : b[j].second;
    if (lo < hi) out.emplace_back(lo, hi);
    if (a[i].second < b[j].second)
      ++i;
    else
      ++j;
  }
  return out;
}

std::vector<std::pair<BigFloat, BigFloat>> to_float_parts(const EventSet& e) {
  if (const auto* f = std::get_if<FloatIntervals>(&e)) return f->parts;
  const auto& rp = std::get<RatIntervals>(e).parts;
  std::vector<std::pair<BigFloat, BigFloat>> out;
  for (const auto& [l, r] : rp) out.emplace_back(rat_to_bigfloat(l), rat_to_bigfloat(r));
  return out;
}

// --- doubling-map word sets -------------------------------------------

// A dyadic interval union at resolution depth d is a set of binary words
// of length d: word w covers [w/2^d, (w+1)/2^d).
struct WordSet {
  int depth = 0;
  std::vector<std::uint64_t> bits;  // 2^depth positions

  bool contains(std::uint64_t w) const { return (bits[w >> 6] >> (w & 63)) & 1u; }
  void set(std::uint64_t w) { bits[w >> 6] |= std::uint64_t{1} << (w & 63); }
};

int dyadic_depth(const RatIntervals& e) {
  int d = 0;
  for (const auto& [l, r] : e.parts) {
    for (const Rat* endp : {&l, &r}) {
      const BigInt den = denominator(*endp);
      int bitsz = 0;
      BigInt t = den;
      while (t > 1) {
        t >>= 1;
        ++bitsz;
      }
      d = std::max(d, bitsz);
    }
  }
  return std::max(d, 1);
}

WordSet dyadic_to_words(const RatIntervals& e) {
  WordSet ws;
  ws.depth = dyadic_depth(e);
  if (ws.depth > 24) throw BudgetError("dyadic event resolution exceeds 24 bits");
  const std::uint64_t total = std::uint64_t{1} << ws.depth;
  ws.bits.assign((total + 63) / 64, 0);
  const BigInt scale = BigInt(1) << ws.depth;
  for (const auto& [l, r] : e.parts) {
    const std::uint64_t lo =
        (numerator(l) * (scale / denominator(l))).convert_to<std::uint64_t>();
    const std::uint64_t hi =
        (numerator(r) * (scale / denominator(r))).convert_to<std::uint64_t>();
    for (std::uint64_t w = lo; w < hi; ++w) ws.set(w);
  }
  return ws;
}

// One constrained block: binary digits [offset+1, offset+depth] of the
// point must form a word in the set.
struct DigitBlock {
  std::int64_t offset = 0;
  const WordSet* words = nullptr;
  std::int64_t lo() const { return offset + 1; }
  std::int64_t hi() const { return offset + words->depth; }
};

// measure of the conjunction of digit blocks: independent across
// components of overlapping blocks; within a component, count satisfying
// digit assignments by DFS with completion tests.
Rat digit_blocks_measure(std::vector<DigitBlock> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](const DigitBlock& a, const DigitBlock& b) { return a.lo() < b.lo(); });
  Rat total(1);
  std::size_t i = 0;
  while (i < blocks.size()) {
    std::size_t j = i;
    std::int64_t span_hi = blocks[i].hi();
    while (j + 1 < blocks.size() && blocks[j + 1].lo() <= span_hi) {
      ++j;
      span_hi = std::max(span_hi, blocks[j].hi());
    }
    const std::int64_t span_lo = blocks[i].lo();
    const std::int64_t width = span_hi - span_lo + 1;
    const std::size_t nblocks = j - i + 1;

    if (nblocks == 1) {
      // disjoint block: factor is just the word-set density
      std::uint64_t count = 0;
      for (auto w : blocks[i].words->bits) count += static_cast<std::uint64_t>(std::popcount(w));
      total *= Rat(BigInt(count), BigInt(1) << blocks[i].words->depth);
      i = j + 1;
      continue;
    }
    if (width > config().doubling_component_bits_cap)
      throw BudgetError("overlapping digit blocks span " + std::to_string(width) +
                        " bits; cap is " + std::to_string(config().doubling_component_bits_cap));

    // DFS over positions span_lo..span_hi, building each block's word
    std::vector<std::uint64_t> partial(nblocks, 0);
    std::uint64_t count = 0;
    const auto dfs = [&](auto&& self, std::int64_t pos) -> void {
      if (pos > span_hi) {
        ++count;
        return;
      }
      for (int bit = 0; bit <= 1; ++bit) {
        bool ok = true;
        for (std::size_t b = 0; b < nblocks; ++b) {
          const DigitBlock& blk = blocks[i + b];
          if (pos < blk.lo() || pos > blk.hi()) continue;
          partial[b] = (partial[b] << 1) | static_cast<std::uint64_t>(bit);
          if (pos == blk.hi() && !blk.words->contains(partial[b])) ok = false;
        }
        if (ok) self(self, pos + 1);
        for (std::size_t b = 0; b < nblocks; ++b) {
          const DigitBlock& blk = blocks[i + b];
          if (pos >= blk.lo() && pos <= blk.hi()) partial[b] >>= 1;
        }
      }
    };
    dfs(dfs, span_lo);
    total *= Rat(BigInt(count), BigInt(1) << width);
    i = j + 1;
  }
  return total;
}

}  // namespace

EventSet preimage(const MpsSpec& sys, const EventSet& e, std::int64_t n) {
  validate_system(sys);
  validate_event(sys, e);
  if (n < 1) throw ParamError("preimage exponent must be >= 1");
  return std::visit(
      overloaded{
          [&](const CyclicRotation& s) -> EventSet {
            const auto& r = std::get<ResidueSet>(e);
            const std::int64_t shift = (s.step % s.modulus) * (n % s.modulus) % s.modulus;
            std::vector<std::int64_t> out;
            for (auto v : r.residues)
              out.push_back(((v - shift) % s.modulus + s.modulus) % s.modulus);
            std::sort(out.begin(), out.end());
            return ResidueSet{out};
          },
          [&](const TorusRotation& s) -> EventSet {
            const BigFloat t = frac_part(BigFloat(n) * s.alpha);
            return FloatIntervals{shift_parts_mod1(to_float_parts(e), t)};
          },
          [&](const DoublingMap& s) -> EventSet {
            const auto& iv = std::get<RatIntervals>(e);
            const std::int64_t bitshift = static_cast<std::int64_t>(s.expo) * n;
            if (bitshift > 62 ||
                static_cast<__int128>(iv.parts.size()) << bitshift >
                    static_cast<__int128>(config().preimage_piece_cap))
              throw BudgetError("doubling preimage needs more than " +
                                std::to_string(config().preimage_piece_cap) +
                                " interval pieces (resolution cap)");
            const BigInt denom = BigInt(1) << bitshift;
            std::vector<std::pair<Rat, Rat>> parts;
            for (BigInt j = 0; j < denom; ++j) {
              for (const auto& [l, r] : iv.parts)
                parts.emplace_back((l + Rat(j)) / Rat(denom), (r + Rat(j)) / Rat(denom));
            }
            std::sort(parts.begin(), parts.end());
            // merge touching pieces
            std::vector<std::pair<Rat, Rat>> merged;
            for (auto& p : parts) {
              if (!merged.empty() && p.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, p.second);
              else
                merged.push_back(p);
            }
            return RatIntervals{merged};
          },
          [&](const BernoulliShift& s) -> EventSet {
            auto c = std::get<CylinderSet>(e);
            c.offset += s.stride * n;
            return c;
          },
      },
      sys);
}

CorrelationReport correlation_sequence(const MpsSpec& sys, const std::vector<EventSet>& events,
                                       const std::vector<std::int64_t>& exponents,
                                       std::int64_t n_max, const Rat& epsilon) {
  validate_system(sys);
  if (events.size() < 2) throw ParamError("correlation needs at least A_0 and A_1");
  const int k = static_cast<int>(events.size()) - 1;
  if (k > config().correlation_order_cap)
    throw ParamError("correlation order " + std::to_string(k) + " exceeds cap " +
                     std::to_string(config().correlation_order_cap));
  if (static_cast<int>(exponents.size()) != k)
    throw ParamError("need exactly k = " + std::to_string(k) + " exponents");
  for (int i = 0; i < k; ++i) {
    if (exponents[static_cast<std::size_t>(i)] < 1 ||
        (i > 0 && exponents[static_cast<std::size_t>(i)] <=
                      exponents[static_cast<std::size_t>(i - 1)]))
      throw ParamError("exponents must be strictly increasing positive integers");
    if (exponents[static_cast<std::size_t>(i)] > config().max_window)
      throw ParamError("exponent exceeds the configured maximum window");
  }
  if (n_max < 1) throw ParamError("n_max must be >= 1");
  if (epsilon <= 0) throw ParamError("epsilon must be > 0");
  for (const auto& e : events) validate_event(sys, e);

  CorrelationReport rep;
  rep.system = sys;
  rep.events = events;
  rep.exponents = exponents;
  rep.n_max = n_max;
  rep.epsilon = epsilon;
  rep.mixing_set = WindowSet(n_max);

  MeasureValue target;
  target.r = Rat(1);
  target.f = BigFloat(1);
  Rat min_measure(1);
  for (const auto& e : events) {
    const MeasureValue m = measure(sys, e);
    target.exact = target.exact && m.exact;
    if (m.exact) {
      target.r *= m.r;
      min_measure = std::min(min_measure, m.r);
    }
    target.f *= m.f;
  }
  rep.product_target = target;

  const BigFloat eps_f = rat_to_bigfloat(epsilon);
  const BigFloat guard = guard_band();

  // per-variant correlation engines
  std::visit(
      overloaded{
          [&](const CyclicRotation& s) {
            // residue bitmaps
            std::vector<std::vector<char>> maps;
            for (const auto& e : events) {
              std::vector<char> m(static_cast<std::size_t>(s.modulus), 0);
              for (auto v : std::get<ResidueSet>(e).residues)
                m[static_cast<std::size_t>(v)] = 1;
              maps.push_back(std::move(m));
            }
            for (std::int64_t n = 1; n <= n_max; ++n) {
              std::int64_t cnt = 0;
              for (std::int64_t x = 0; x < s.modulus; ++x) {
                if (!maps[0][static_cast<std::size_t>(x)]) continue;
                bool in = true;
                for (int i = 1; i <= k && in; ++i) {
                  const std::int64_t sh =
                      (x + (s.step % s.modulus) * ((n * exponents[static_cast<std::size_t>(
                                                                      i - 1)]) %
                                                   s.modulus)) %
                      s.modulus;
                  in = maps[static_cast<std::size_t>(i)][static_cast<std::size_t>(sh)] != 0;
                }
                cnt += in ? 1 : 0;
              }
              CorrelationEntry en;
              en.n = n;
              en.exact = true;
              en.r = Rat(cnt, s.modulus);
              en.f = rat_to_bigfloat(en.r);
              rep.entries.push_back(en);
            }
          },
          [&](const TorusRotation& s) {
            std::vector<std::vector<std::pair<BigFloat, BigFloat>>> parts;
            for (const auto& e : events) parts.push_back(normalize_parts(to_float_parts(e)));
            for (std::int64_t n = 1; n <= n_max; ++n) {
              auto acc = parts[0];
              for (int i = 1; i <= k; ++i) {
                const BigFloat t =
                    frac_part(BigFloat(n * exponents[static_cast<std::size_t>(i - 1)]) * s.alpha);
                acc = intersect_parts(acc,
                                      shift_parts_mod1(parts[static_cast<std::size_t>(i)], t));
                if (acc.empty()) break;
              }
              BigFloat len(0);
              for (const auto& [l, r] : acc) len += r - l;
              CorrelationEntry en;
              en.n = n;
              en.exact = false;
              en.f = len;
              rep.entries.push_back(en);
            }
          },
          [&](const DoublingMap& s) {
            std::vector<WordSet> words;
            for (const auto& e : events) words.push_back(dyadic_to_words(std::get<RatIntervals>(e)));
            for (std::int64_t n = 1; n <= n_max; ++n) {
              std::vector<DigitBlock> blocks;
              blocks.push_back(DigitBlock{0, &words[0]});
              for (int i = 1; i <= k; ++i)
                blocks.push_back(
                    DigitBlock{static_cast<std::int64_t>(s.expo) * n *
                                   exponents[static_cast<std::size_t>(i - 1)],
                               &words[static_cast<std::size_t>(i)]});
              CorrelationEntry en;
              en.n = n;
              en.exact = true;
              en.r = digit_blocks_measure(std::move(blocks));
              en.f = rat_to_bigfloat(en.r);
              rep.entries.push_back(en);
            }
          },
          [&](const BernoulliShift& s) {
            struct Fixed {
              std::int64_t pos;
              int sym;
            };
            std::vector<std::vector<Fixed>> fixed;
            for (const auto& e : events) {
              const auto& c = std::get<CylinderSet>(e);
              std::vector<Fixed> fx;
              for (std::size_t t = 0; t < c.symbols.size(); ++t)
                fx.push_back(Fixed{c.offset + static_cast<std::int64_t>(t) + 1, c.symbols[t]});
              fixed.push_back(std::move(fx));
            }
            for (std::int64_t n = 1; n <= n_max; ++n) {
              std::map<std::int64_t, int> merged;
              bool conflict = false;
              for (int i = 0; i <= k && !conflict; ++i) {
                const std::int64_t sh =
                    i == 0 ? 0 : s.stride * n * exponents[static_cast<std::size_t>(i - 1)];
                for (const auto& fx : fixed[static_cast<std::size_t>(i)]) {
                  const auto [it, inserted] = merged.emplace(fx.pos + sh, fx.sym);
                  if (!inserted && it->second != fx.sym) {
                    conflict = true;
                    break;
                  }
                }
              }
              CorrelationEntry en;
              en.n = n;
              en.exact = true;
              if (conflict) {
                en.r = Rat(0);
              } else {
                Rat prob(1);
                for (const auto& [pos, sym] : merged) prob *= sym == 1 ? s.p : Rat(1) - s.p;
                en.r = prob;
              }
              en.f = rat_to_bigfloat(en.r);
              rep.entries.push_back(en);
            }
          },
      },
      sys);

  // bounds invariant and mixing membership
  for (auto& en : rep.entries) {
    if (en.exact) {
      if (en.r < 0 || (target.exact && en.r > min_measure))
        throw InternalError("correlation value out of [0, min measure] at n = " +
                            std::to_string(en.n));
      const Rat diff = en.r >= target.r ? en.r - target.r : target.r - en.r;
      en.in_mixing = diff < epsilon;
    } else {
      const BigFloat diff = abs(en.f - target.f);
      en.in_mixing = diff < eps_f;
      en.borderline = abs(diff - eps_f) <= guard;
    }
    if (en.in_mixing) rep.mixing_set.insert(en.n);
  }
  return rep;
}

namespace {
BoundaryStats boundary_stats(const WindowSet& m) {
  BoundaryStats st;
  st.count = m.count();
  const std::int64_t n = m.window();
  std::int64_t prev = 0, gap = 0;
  for (std::int64_t x = m.first(); x != 0; x = m.next(x)) {
    gap = std::max(gap, x - prev);
    prev = x;
  }
  gap = std::max(gap, n + 1 - prev);
  st.max_gap = gap;
  st.density = static_cast<double>(st.count) / static_cast<double>(n);
  return st;
}
}  // namespace

MixingClassification classify_mixing_set(const CorrelationReport& rep,
                                         const std::vector<FamilySpec>& families) {
  MixingClassification out;
  const WindowSet& m = rep.mixing_set;
  const std::int64_t n = m.window();
  if (m.contains(n)) {
    std::int64_t lo = n;
    while (lo > 1 && m.contains(lo - 1)) --lo;
    out.cofinite_from = lo;
  }
  out.mixing = boundary_stats(m);
  out.complement_stats = boundary_stats(complement(m));
  for (const auto& f : families) out.dual_verdicts.emplace_back(f, dual_check(m, f).belongs);
  return out;
}

PowerCheckReport power_system_check(const MpsSpec& sys, std::int64_t n, const EventSet& a,
                                    const EventSet& b, const Rat& epsilon, std::int64_t n_max,
                                    const std::vector<FamilySpec>& families) {
  PowerCheckReport rep;
  rep.power = n;
  const MpsSpec powered = power_system(sys, n, &rep.degenerate);
  rep.base = correlation_sequence(sys, {a, b}, {1}, n_max, epsilon);
  rep.powered = correlation_sequence(powered, {a, b}, {1}, n_max, epsilon);
  rep.base_cls = classify_mixing_set(rep.base, families);
  rep.powered_cls = classify_mixing_set(rep.powered, families);

  const std::int64_t common = n_max / n;
  if (common >= 1) {
    const WindowSet expected = quotient(rep.base.mixing_set, n);
    const WindowSet actual = rep.powered.mixing_set.restricted(common);
    rep.subset_holds = expected.subset_of(actual);
    rep.equality_holds = expected == actual;
  } else {
    rep.subset_holds = true;
    rep.equality_holds = true;
  }
  return rep;
}

}  // namespace ll
