#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace qhfib {

// Exact rational scalar, always kept in lowest terms with positive denominator.
using Rational = mpq_class;

// Accepts "p", "p/q", "-p/q" and the parenthesised form "(p/q)".
Rational parse_rational(std::string_view text);

// Serialises as "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

// Completeness levels are rationals or +infinity (nullopt).
using Level = std::optional<Rational>;

Level parse_level(std::string_view text);
std::string level_to_string(const Level& level);
bool level_covers(const Level& level, const Rational& energy);

} // namespace qhfib
