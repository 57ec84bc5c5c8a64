#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ctv {

using Rational = mpq_class;
using Point = std::vector<Rational>;

// Accepts "p/q" or "p" with optional sign; throws std::invalid_argument on
// anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical form: "p" for integers, otherwise "p/q" in lowest terms, q > 0.
std::string format_rational(const Rational& q);

}  // namespace ctv
