#include "ll/window_set.hpp"

#include <bit>
#include <sstream>

#include "ll/config.hpp"
#include "ll/errors.hpp"

namespace ll {

Config& config() {
  static Config cfg;
  return cfg;
}

namespace {
std::size_t word_count(std::int64_t window) {
  return static_cast<std::size_t>((window + 63) >> 6);
}
}  // namespace

WindowSet::WindowSet(std::int64_t window) : window_(window) {
  if (window < 1) throw ParamError("window size must be >= 1, got " + std::to_string(window));
  if (window > config().max_window)
    throw ParamError("window " + std::to_string(window) + " exceeds configured maximum " +
                     std::to_string(config().max_window));
  words_.assign(word_count(window), 0);
}

WindowSet WindowSet::full(std::int64_t window) {
  WindowSet s(window);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.clear_tail();
  return s;
}

WindowSet WindowSet::from_members(std::int64_t window, const std::vector<std::int64_t>& ms) {
  WindowSet s(window);
  for (auto m : ms) s.insert(m);
  return s;
}

void WindowSet::clear_tail() {
  const int tail = static_cast<int>(window_ & 63);
  if (tail != 0) words_.back() &= (~std::uint64_t{0}) >> (64 - tail);
}

void WindowSet::insert(std::int64_t m) {
  if (m < 1 || m > window_)
    throw ParamError("member " + std::to_string(m) + " outside window [1, " +
                     std::to_string(window_) + "]");
  words_[static_cast<std::size_t>((m - 1) >> 6)] |= std::uint64_t{1} << ((m - 1) & 63);
}

void WindowSet::erase(std::int64_t m) {
  if (m < 1 || m > window_) return;
  words_[static_cast<std::size_t>((m - 1) >> 6)] &= ~(std::uint64_t{1} << ((m - 1) & 63));
}

std::int64_t WindowSet::count() const {
  std::int64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::vector<std::int64_t> WindowSet::members() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(count()));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      const int b = std::countr_zero(w);
      out.push_back(static_cast<std::int64_t>(i) * 64 + b + 1);
      w &= w - 1;
    }
  }
  return out;
}

std::int64_t WindowSet::first() const { return next(0); }

std::int64_t WindowSet::next(std::int64_t after) const {
  std::int64_t start = after < 0 ? 0 : after;  // first bit index to consider
  if (start >= window_) return 0;
  std::size_t i = static_cast<std::size_t>(start >> 6);
  std::uint64_t w = words_[i] & (~std::uint64_t{0} << (start & 63));
  while (true) {
    if (w) return static_cast<std::int64_t>(i) * 64 + std::countr_zero(w) + 1;
    if (++i >= words_.size()) return 0;
    w = words_[i];
  }
}

std::int64_t WindowSet::last() const {
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i]) return static_cast<std::int64_t>(i) * 64 + 63 - std::countl_zero(words_[i]) + 1;
  }
  return 0;
}

bool WindowSet::subset_of(const WindowSet& b) const {
  const std::size_t nb = b.words_.size();
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t other = i < nb ? b.words_[i] : 0;
    if (words_[i] & ~other) return false;
  }
  return true;
}

WindowSet WindowSet::restricted(std::int64_t upto) const {
  const std::int64_t w = std::min(upto, window_);
  WindowSet out(w);
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = words_[i];
  out.clear_tail();
  return out;
}

bool WindowSet::operator==(const WindowSet& b) const {
  return window_ == b.window_ && words_ == b.words_;
}

WindowSet shift_set(const WindowSet& a, std::int64_t x) {
  const std::int64_t n = a.window();
  if (x < 1) throw ParamError("shift must be >= 1, got " + std::to_string(x));
  if (x >= n)
    throw ParamError("shift " + std::to_string(x) + " leaves an empty window (window " +
                     std::to_string(n) + ")");
  WindowSet out(n - x);
  // Word-level right shift by x bits: bit (m-1) of `a` becomes bit (m-1-x).
  const std::size_t wshift = static_cast<std::size_t>(x >> 6);
  const int bshift = static_cast<int>(x & 63);
  auto src = [&](std::size_t i) -> std::uint64_t {
    return i < a.words().size() ? a.words()[i] : 0;
  };
  for (std::size_t i = 0; i < out.words_.size(); ++i) {
    const std::uint64_t lo = src(i + wshift);
    out.words_[i] = bshift == 0 ? lo : (lo >> bshift) | (src(i + wshift + 1) << (64 - bshift));
  }
  out.clear_tail();
  return out;
}

WindowSet dilate(const WindowSet& a, std::int64_t n) {
  if (n < 1) throw ParamError("dilation factor must be >= 1, got " + std::to_string(n));
  if (n == 1) return a;
  WindowSet out(a.window());
  for (std::int64_t m = a.first(); m != 0; m = a.next(m)) {
    if (m > a.window() / n) break;
    out.insert(n * m);
  }
  return out;
}

WindowSet quotient(const WindowSet& a, std::int64_t n) {
  if (n < 1) throw ParamError("quotient factor must be >= 1, got " + std::to_string(n));
  if (n == 1) return a;
  const std::int64_t w = a.window() / n;
  if (w < 1) throw ParamError("quotient factor " + std::to_string(n) + " empties window " +
                              std::to_string(a.window()));
  WindowSet out(w);
  for (std::int64_t k = 1; k <= w; ++k)
    if (a.contains(n * k)) out.insert(k);
  return out;
}

WindowSet complement(const WindowSet& a) {
  WindowSet out = WindowSet::full(a.window());
  return set_minus(out, a);
}

WindowSet intersect(const WindowSet& a, const WindowSet& b) {
  WindowSet out(std::min(a.window(), b.window()));
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = a.words_[i] & b.words_[i];
  out.clear_tail();
  return out;
}
WindowSet set_union(const WindowSet& a, const WindowSet& b) {
  WindowSet out(std::min(a.window(), b.window()));
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = a.words_[i] | b.words_[i];
  out.clear_tail();
  return out;
}
WindowSet set_minus(const WindowSet& a, const WindowSet& b) {
  WindowSet out(std::min(a.window(), b.window()));
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = a.words_[i] & ~b.words_[i];
  out.clear_tail();
  return out;
}

WindowSet parse_window_set(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_content_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return line;
    }
    throw ParseError("unexpected end of set file after line " + std::to_string(lineno));
  };

  std::istringstream header(next_content_line());
  std::string kw;
  std::int64_t window = 0;
  if (!(header >> kw >> window) || kw != "window")
    throw ParseError("line " + std::to_string(lineno) + ": expected `window N`");
  WindowSet out(window);

  std::istringstream body(next_content_line());
  if (!(body >> kw)) throw ParseError("line " + std::to_string(lineno) + ": empty body line");
  if (kw == "list") {
    std::int64_t prev = 0, m = 0;
    while (body >> m) {
      if (m <= prev)
        throw ParseError("line " + std::to_string(lineno) + ": list must be strictly ascending");
      if (m > window)
        throw ParseError("line " + std::to_string(lineno) + ": member " + std::to_string(m) +
                         " exceeds window " + std::to_string(window));
      out.insert(m);
      prev = m;
    }
    if (!body.eof()) throw ParseError("line " + std::to_string(lineno) + ": bad integer in list");
  } else if (kw == "runs") {
    std::string tok;
    std::int64_t prev_end = 0;
    while (body >> tok) {
      const auto dash = tok.find('-');
      if (dash == std::string::npos || dash == 0 || dash + 1 >= tok.size())
        throw ParseError("line " + std::to_string(lineno) + ": run must look like s-e, got `" +
                         tok + "`");
      std::int64_t s = 0, e = 0;
      try {
        s = std::stoll(tok.substr(0, dash));
        e = std::stoll(tok.substr(dash + 1));
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad run `" + tok + "`");
      }
      if (s <= prev_end || e < s || e > window)
        throw ParseError("line " + std::to_string(lineno) + ": run " + tok +
                         " out of order or out of window");
      for (std::int64_t m = s; m <= e; ++m) out.insert(m);
      prev_end = e;
    }
  } else {
    throw ParseError("line " + std::to_string(lineno) + ": expected `list` or `runs`, got `" +
                     kw + "`");
  }
  return out;
}

WindowSet parse_window_set_text(const std::string& text) {
  std::istringstream in(text);
  return parse_window_set(in);
}

std::string to_text(const WindowSet& a) {
  const auto ms = a.members();
  // Collect maximal runs; emit `runs` when that is the shorter encoding.
  std::vector<std::pair<std::int64_t, std::int64_t>> runs;
  for (std::size_t i = 0; i < ms.size();) {
    std::size_t j = i;
    while (j + 1 < ms.size() && ms[j + 1] == ms[j] + 1) ++j;
    runs.emplace_back(ms[i], ms[j]);
    i = j + 1;
  }
  std::ostringstream out;
  out << "window " << a.window() << "\n";
  if (!ms.empty() && runs.size() * 2 < ms.size()) {
    out << "runs";
    for (auto [s, e] : runs) out << ' ' << s << '-' << e;
  } else {
    out << "list";
    for (auto m : ms) out << ' ' << m;
  }
  out << "\n";
  return out.str();
}

}  // namespace ll
