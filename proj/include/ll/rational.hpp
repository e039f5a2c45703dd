#ifndef LL_RATIONAL_HPP
#define LL_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace ll {

// Exact rational arithmetic (GMP-backed) is the currency for measures,
// densities and thresholds; BigFloat (MPFR-backed, precision set from
// Config::precision_bits at startup) is used only where exactness is
// impossible, i.e. irrational rotations.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using BigFloat = boost::multiprecision::mpfr_float;

// Parses "p/q", an integer, or a plain decimal like "0.25" (exactly, as
// 25/100). Throws ParseError on anything else or q == 0.
Rat parse_rational(const std::string& text);

// "p/q" (or just "p" when q == 1); the canonical serialized form.
std::string format_rational(const Rat& q);

// Round-to-nearest decimal string with enough digits for the configured
// precision; used for BigFloat values in reports so reruns are
// byte-identical.
std::string format_bigfloat(const BigFloat& x);

BigFloat rat_to_bigfloat(const Rat& q);

// Applies Config::precision_bits to the MPFR default. Called once by the
// CLI and by test mains before any BigFloat exists.
void apply_precision_config();

}  // namespace ll

#endif
