#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace tightcycle {

using Rational = boost::rational<std::int64_t>;

/// Parses "3", "3/4", "-1/2" or a finite decimal such as "0.125" exactly.
/// Throws InvalidArgument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// q * count compared against an integer quantity without rounding:
/// returns true iff value >= q * count.
inline bool at_least(std::int64_t value, const Rational& q, std::int64_t count) {
  // value >= num/den * count  <=>  value * den >= num * count  (den > 0)
  return static_cast<__int128>(value) * q.denominator() >=
         static_cast<__int128>(q.numerator()) * count;
}

inline bool below(std::int64_t value, const Rational& q, std::int64_t count) {
  return !at_least(value, q, count);
}

/// floor(q * count) for q >= 0.
inline std::int64_t floor_times(const Rational& q, std::int64_t count) {
  return static_cast<std::int64_t>(static_cast<__int128>(q.numerator()) * count /
                                   q.denominator());
}

}  // namespace tightcycle
