#include <doctest.h>

#include <random>

#include "ll/config.hpp"
#include "ll/errors.hpp"
#include "ll/window_set.hpp"

using namespace ll;

namespace {

WindowSet evens(std::int64_t n) {
  WindowSet s(n);
  for (std::int64_t m = 2; m <= n; m += 2) s.insert(m);
  return s;
}

// brute-force oracles, straight from the definitions
WindowSet brute_shift(const WindowSet& a, std::int64_t x) {
  WindowSet out(a.window() - x);
  for (std::int64_t y = 1; y <= a.window() - x; ++y)
    if (a.contains(x + y)) out.insert(y);
  return out;
}

WindowSet brute_dilate(const WindowSet& a, std::int64_t n) {
  WindowSet out(a.window());
  for (std::int64_t m = 1; m <= a.window(); ++m)
    if (a.contains(m) && n * m <= a.window()) out.insert(n * m);
  return out;
}

WindowSet brute_quotient(const WindowSet& a, std::int64_t n) {
  WindowSet out(a.window() / n);
  for (std::int64_t k = 1; k <= a.window() / n; ++k)
    if (a.contains(n * k)) out.insert(k);
  return out;
}

WindowSet random_set(std::mt19937_64& rng, std::int64_t n, double density) {
  WindowSet s(n);
  std::bernoulli_distribution coin(density);
  for (std::int64_t m = 1; m <= n; ++m)
    if (coin(rng)) s.insert(m);
  return s;
}

}  // namespace

TEST_CASE("shift_set definition cases") {
  // evens shift by 2 stay evens on the shrunk window
  CHECK(shift_set(evens(100), 2) == evens(98));

  WindowSet single(10);
  single.insert(5);
  WindowSet shifted = shift_set(single, 2);
  CHECK(shifted.window() == 8);
  CHECK(shifted.members() == std::vector<std::int64_t>{3});

  // FS(<1,2,4>) = {1..7} on [1,10]; shifting by 3 keeps {1,2,3,4}
  WindowSet fs(10);
  for (std::int64_t m = 1; m <= 7; ++m) fs.insert(m);
  const WindowSet expect = brute_shift(fs, 3);
  CHECK(expect.members() == std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(shift_set(fs, 3) == expect);

  CHECK_THROWS_AS(shift_set(evens(10), 10), ParamError);
  CHECK_THROWS_AS(shift_set(evens(10), 0), ParamError);
}

TEST_CASE("dilate definition cases") {
  WindowSet a = WindowSet::from_members(10, {1, 2, 3});
  CHECK(dilate(a, 3).members() == std::vector<std::int64_t>{3, 6, 9});
  CHECK(dilate(a, 1) == a);
  CHECK(dilate(evens(100), 2) == brute_dilate(evens(100), 2));
  // multiples of 4 up to 100
  for (std::int64_t m = 1; m <= 100; ++m)
    CHECK(dilate(evens(100), 2).contains(m) == (m % 4 == 0));
}

TEST_CASE("quotient definition cases") {
  WindowSet mult6(60);
  for (std::int64_t m = 6; m <= 60; m += 6) mult6.insert(m);
  const WindowSet q = quotient(mult6, 2);
  CHECK(q.window() == 30);
  for (std::int64_t k = 1; k <= 30; ++k) CHECK(q.contains(k) == (k % 3 == 0));

  CHECK(quotient(mult6, 1) == mult6);

  WindowSet b = WindowSet::from_members(10, {4, 8, 9});
  CHECK(quotient(b, 4) == brute_quotient(b, 4));
  CHECK(quotient(b, 4).members() == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("complement cases") {
  CHECK(complement(evens(10)).members() == std::vector<std::int64_t>{1, 3, 5, 7, 9});
  CHECK(complement(WindowSet::full(16)).empty());
  CHECK(complement(WindowSet::from_members(8, {1, 5, 7})).members() ==
        std::vector<std::int64_t>{2, 3, 4, 6, 8});
}

TEST_CASE("quotient of dilate recovers the undilated part") {
  std::mt19937_64 rng(7011);
  for (int rep = 0; rep < 30; ++rep) {
    const std::int64_t n = 64 + static_cast<std::int64_t>(rng() % 4033);
    const WindowSet a = random_set(rng, n, 0.3);
    for (std::int64_t f = 1; f <= 16; ++f) {
      const WindowSet lhs = quotient(dilate(a, f), f);
      WindowSet expect(n / f);
      for (std::int64_t m = a.first(); m != 0; m = a.next(m))
        if (f * m <= n && m <= n / f) expect.insert(m);
      CHECK(lhs == expect);
    }
  }
}

TEST_CASE("shift composes additively") {
  std::mt19937_64 rng(7012);
  for (int rep = 0; rep < 50; ++rep) {
    const std::int64_t n = 32 + static_cast<std::int64_t>(rng() % 2017);
    const WindowSet a = random_set(rng, n, 0.4);
    const std::int64_t x = 1 + static_cast<std::int64_t>(rng() % (n / 4));
    const std::int64_t y = 1 + static_cast<std::int64_t>(rng() % (n / 4));
    REQUIRE(x + y < n);
    CHECK(shift_set(shift_set(a, x), y) == shift_set(a, x + y));
  }
}

TEST_CASE("complement is an involution") {
  std::mt19937_64 rng(7013);
  for (int rep = 0; rep < 50; ++rep) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 3000);
    const WindowSet a = random_set(rng, n, 0.5);
    CHECK(complement(complement(a)) == a);
  }
}

TEST_CASE("dilate preserves cardinality when nothing truncates") {
  std::mt19937_64 rng(7014);
  for (int rep = 0; rep < 50; ++rep) {
    const std::int64_t n = 64 + static_cast<std::int64_t>(rng() % 1000);
    const std::int64_t f = 2 + static_cast<std::int64_t>(rng() % 6);
    WindowSet small = random_set(rng, std::max<std::int64_t>(1, n / f), 0.5);
    WindowSet embedded(n);
    for (std::int64_t m = small.first(); m != 0; m = small.next(m)) embedded.insert(m);
    CHECK(dilate(embedded, f).count() == embedded.count());
  }
}

TEST_CASE("operation agreement with oracles on random sets") {
  std::mt19937_64 rng(7015);
  for (int rep = 0; rep < 40; ++rep) {
    const std::int64_t n = 16 + static_cast<std::int64_t>(rng() % 500);
    const WindowSet a = random_set(rng, n, 0.35);
    const std::int64_t x = 1 + static_cast<std::int64_t>(rng() % (n - 1));
    const std::int64_t f = 1 + static_cast<std::int64_t>(rng() % 8);
    CHECK(shift_set(a, x) == brute_shift(a, x));
    CHECK(dilate(a, f) == brute_dilate(a, f));
    if (n / f >= 1) CHECK(quotient(a, f) == brute_quotient(a, f));
  }
}

TEST_CASE("set text format round trip") {
  const WindowSet a = evens(20);
  const WindowSet b = parse_window_set_text(to_text(a));
  CHECK(a == b);

  const WindowSet dense = WindowSet::from_members(12, {1, 2, 3, 4, 5, 9, 10, 11});
  CHECK(parse_window_set_text(to_text(dense)) == dense);

  CHECK(parse_window_set_text("window 5\nruns 1-5\n") == WindowSet::full(5));
  CHECK(parse_window_set_text("window 10\nlist 2 4 6 8 10\n") == evens(10));

  CHECK_THROWS_AS(parse_window_set_text("window 10\nlist 4 2\n"), ParseError);
  CHECK_THROWS_AS(parse_window_set_text("window 10\nlist 11\n"), ParseError);
  CHECK_THROWS_AS(parse_window_set_text("window 10\nruns 5-3\n"), ParseError);
  CHECK_THROWS_AS(parse_window_set_text("nonsense\n"), ParseError);
  CHECK_THROWS_AS(parse_window_set_text("window 10\n"), ParseError);
}

TEST_CASE("window bounds are enforced") {
  CHECK_THROWS_AS(WindowSet(0), ParamError);
  WindowSet a(4);
  CHECK_THROWS_AS(a.insert(5), ParamError);
  CHECK_THROWS_AS(a.insert(0), ParamError);
  CHECK(a.next(0) == 0);
  a.insert(3);
  CHECK(a.first() == 3);
  CHECK(a.last() == 3);
  CHECK(a.next(3) == 0);
}

TEST_CASE("the configured maximum window is enforced") {
  CHECK_THROWS_AS(WindowSet(config().max_window + 1), ParamError);
  CHECK_NOTHROW(WindowSet(config().max_window));
}
