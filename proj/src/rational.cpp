#include "ll/rational.hpp"

#include <cmath>
#include <sstream>

#include "ll/config.hpp"
#include "ll/errors.hpp"

namespace ll {

Rat parse_rational(const std::string& text) {
  const auto bad = [&]() -> ParseError {
    return ParseError("cannot parse rational `" + text + "` (want p, p/q or a decimal)");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt p(text.substr(0, slash));
      const BigInt q(text.substr(slash + 1));
      if (q == 0) throw ParseError("rational `" + text + "` has zero denominator");
      return Rat(p, q);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(BigInt(text));
    const std::string whole = dot == 0 ? "0" : text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty()) return Rat(BigInt(whole));
    for (char c : frac)
      if (c < '0' || c > '9') throw bad();
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const bool neg = !whole.empty() && whole[0] == '-';
    const BigInt w(whole);
    const BigInt f(frac);
    Rat r = Rat(abs(w) * den + f, den);
    return neg ? -r : r;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

std::string format_rational(const Rat& q) {
  std::ostringstream out;
  out << numerator(q);
  if (denominator(q) != 1) out << '/' << denominator(q);
  return out.str();
}

std::string format_bigfloat(const BigFloat& x) {
  // Enough decimal digits to reproduce the configured mantissa.
  const int digits = static_cast<int>(std::ceil(config().precision_bits * 0.30103)) + 2;
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

BigFloat rat_to_bigfloat(const Rat& q) {
  return BigFloat(numerator(q)) / BigFloat(denominator(q));
}

void apply_precision_config() {
  const int bits = config().precision_bits;
  if (bits < 24 || bits > 8192) throw ParamError("precision bits must lie in [24, 8192]");
  const unsigned digits10 = static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1;
  BigFloat::default_precision(digits10);
}

}  // namespace ll
