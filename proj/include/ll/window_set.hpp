#ifndef LL_WINDOW_SET_HPP
#define LL_WINDOW_SET_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ll {

/// A subset of the integer window [1, N], stored as a dense bitset.
/// Window 1-indexed: member m satisfies 1 <= m <= window(). Values are
/// immutable in spirit: operations return new sets; insert/erase exist
/// for builders and tests. Copy is cheap enough to treat them as values.
class WindowSet {
public:
  explicit WindowSet(std::int64_t window);
  static WindowSet full(std::int64_t window);
  static WindowSet from_members(std::int64_t window, const std::vector<std::int64_t>& ms);

  std::int64_t window() const { return window_; }
  bool contains(std::int64_t m) const {
    if (m < 1 || m > window_) return false;
    return (words_[static_cast<std::size_t>((m - 1) >> 6)] >> ((m - 1) & 63)) & 1u;
  }
  void insert(std::int64_t m);
  void erase(std::int64_t m);

  std::int64_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::int64_t> members() const;
  /// Smallest member, or 0 when empty.
  std::int64_t first() const;
  /// Smallest member strictly greater than `after`, or 0 when none.
  std::int64_t next(std::int64_t after) const;
  /// Largest member, or 0 when empty.
  std::int64_t last() const;

  /// True iff every member of *this is a member of `b` (members beyond
  /// b's window count as violations). Truncate explicitly via
  /// restricted() when comparison on a common window is intended.
  bool subset_of(const WindowSet& b) const;
  /// Copy truncated to window min(upto, window()).
  WindowSet restricted(std::int64_t upto) const;

  bool operator==(const WindowSet& b) const;

  const std::vector<std::uint64_t>& words() const { return words_; }

private:
  std::int64_t window_;
  std::vector<std::uint64_t> words_;
  void clear_tail();
  friend WindowSet intersect(const WindowSet&, const WindowSet&);
  friend WindowSet set_union(const WindowSet&, const WindowSet&);
  friend WindowSet set_minus(const WindowSet&, const WindowSet&);
  friend WindowSet shift_set(const WindowSet&, std::int64_t);
};

/// {y in [1, N-x] : x+y in A} on window N-x. Throws ParamError when
/// x < 1 or x >= N (the result window would be empty).
WindowSet shift_set(const WindowSet& a, std::int64_t x);

/// {n*a : a in A, n*a <= N} on the same window.
WindowSet dilate(const WindowSet& a, std::int64_t n);

/// {k in [1, floor(N/n)] : n*k in A} on window floor(N/n).
WindowSet quotient(const WindowSet& a, std::int64_t n);

/// [1, N] \ A.
WindowSet complement(const WindowSet& a);

/// Set algebra on the common window min(a.window, b.window).
WindowSet intersect(const WindowSet& a, const WindowSet& b);
WindowSet set_union(const WindowSet& a, const WindowSet& b);
WindowSet set_minus(const WindowSet& a, const WindowSet& b);

/// Text format: first line `window N`, second line either
/// `list a b c ...` (ascending) or `runs s1-e1 s2-e2 ...` (inclusive).
WindowSet parse_window_set(std::istream& in);
WindowSet parse_window_set_text(const std::string& text);
std::string to_text(const WindowSet& a);

}  // namespace ll

#endif
