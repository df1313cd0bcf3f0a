#include "tightcycle/rational.hpp"

#include <charconv>
#include <limits>

#include "tightcycle/errors.hpp"

namespace tightcycle {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = parse_digits(body.substr(0, slash), text);
    const auto den = parse_digits(body.substr(slash + 1), text);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    q = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto int_part = body.substr(0, dot);
    const auto frac_part = body.substr(dot + 1);
    if (frac_part.size() > 15) throw InvalidArgument("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const auto whole = int_part.empty() ? 0 : parse_digits(int_part, text);
    const auto frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
    if (int_part.empty() && frac_part.empty()) throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    if (whole > std::numeric_limits<std::int64_t>::max() / scale) {
      throw InvalidArgument("rational out of range: '" + std::string(text) + "'");
    }
    q = Rational(whole * scale + frac, scale);
  } else {
    q = Rational(parse_digits(body, text));
  }
  return negative ? -q : q;
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace tightcycle
