#include "qplace/rational.hpp"

#include "qplace/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

namespace qplace {
namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::int64_t checked_mul(std::int64_t a, std::int64_t b, std::string_view ctx) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ValidationError("number out of range: '" + std::string(ctx) + "'");
  }
  return out;
}

std::int64_t pow10(int exp, std::string_view ctx) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    out = checked_mul(out, 10, ctx);
  }
  return out;
}

std::int64_t parse_integer(std::string_view digits, std::string_view ctx) {
  if (digits.empty()) {
    throw ValidationError("malformed number: '" + std::string(ctx) + "'");
  }
  std::int64_t out = 0;
  for (const char c : digits) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
      throw ValidationError("malformed number: '" + std::string(ctx) + "'");
    }
    out = checked_mul(out, 10, ctx);
    if (out > kMax - (c - '0')) {
      throw ValidationError("number out of range: '" + std::string(ctx) + "'");
    }
    out += c - '0';
  }
  return out;
}

// Number of fractional decimal digits needed to print 1/den exactly, or -1.
int terminating_digits(std::int64_t den) {
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) {
    return -1;
  }
  return std::max(twos, fives);
}

std::string with_decimal_point(std::string digits, int frac, bool negative) {
  if (frac > 0) {
    if (static_cast<int>(digits.size()) <= frac) {
      digits.insert(0, static_cast<std::size_t>(frac) - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(frac), ".");
    while (digits.back() == '0') {
      digits.pop_back();
    }
    if (digits.back() == '.') {
      digits.pop_back();
    }
  }
  return negative ? "-" + digits : digits;
}

} // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view ctx = text;
  if (text.empty()) {
    throw ValidationError("empty number");
  }
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    bool negative = false;
    std::string_view num = text.substr(0, slash);
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    const auto p = parse_integer(num, ctx);
    const auto q = parse_integer(text.substr(slash + 1), ctx);
    if (q == 0) {
      throw ValidationError("zero denominator: '" + std::string(ctx) + "'");
    }
    return {negative ? -p : p, q};
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    const auto magnitude = parse_integer(exp_text, ctx);
    if (magnitude > 18) {
      throw ValidationError("exponent out of range: '" + std::string(ctx) + "'");
    }
    exponent = static_cast<int>(exp_negative ? -magnitude : magnitude);
    text = text.substr(0, e);
  }
  std::string digits;
  int frac_digits = 0;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    frac_digits = static_cast<int>(text.size() - dot - 1);
    if (digits.empty()) {
      throw ValidationError("malformed number: '" + std::string(ctx) + "'");
    }
  } else {
    digits = std::string(text);
  }
  // Strip leading zeros so long fractional inputs such as 0.0001 stay in range.
  const auto first_nonzero = digits.find_first_not_of('0');
  digits = first_nonzero == std::string::npos ? "0" : digits.substr(first_nonzero);
  std::int64_t mantissa = parse_integer(digits, ctx);
  const int scale = exponent - frac_digits;
  Rational out;
  if (scale >= 0) {
    out = Rational(checked_mul(mantissa, pow10(scale, ctx), ctx));
  } else {
    out = Rational(mantissa, pow10(-scale, ctx));
  }
  return negative ? -out : out;
}

std::string format_rational(const Rational& value) {
  if (value.denominator() == 1) {
    return std::to_string(value.numerator());
  }
  const int frac = terminating_digits(value.denominator());
  if (frac < 0 || frac > 18) {
    return std::to_string(value.numerator()) + "/" +
           std::to_string(value.denominator());
  }
  const std::int64_t scale = pow10(frac, "format");
  std::int64_t scaled = 0;
  if (__builtin_mul_overflow(value.numerator(), scale / value.denominator(),
                             &scaled)) {
    return std::to_string(value.numerator()) + "/" +
           std::to_string(value.denominator());
  }
  const bool negative = scaled < 0;
  return with_decimal_point(std::to_string(negative ? -scaled : scaled), frac,
                            negative);
}

std::string format_decimal(const Rational& value, int digits) {
  if (const int frac = terminating_digits(value.denominator());
      frac >= 0 && frac <= digits) {
    return format_rational(value);
  }
  const bool negative = value < 0;
  const std::int64_t num = negative ? -value.numerator() : value.numerator();
  const std::int64_t den = value.denominator();
  std::string out = std::to_string(num / den);
  std::int64_t rem = num % den;
  std::string frac;
  for (int i = 0; i < digits; ++i) {
    // rem < den, so rem * 10 only overflows for denominators near the limit.
    __int128 wide = static_cast<__int128>(rem) * 10;
    frac.push_back(static_cast<char>('0' + static_cast<int>(wide / den)));
    rem = static_cast<std::int64_t>(wide % den);
  }
  // Round half up on the next digit.
  if (static_cast<__int128>(rem) * 2 >= den) {
    int i = static_cast<int>(frac.size()) - 1;
    while (i >= 0 && frac[static_cast<std::size_t>(i)] == '9') {
      frac[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i >= 0) {
      ++frac[static_cast<std::size_t>(i)];
    } else {
      out = std::to_string(num / den + 1);
    }
  }
  while (!frac.empty() && frac.back() == '0') {
    frac.pop_back();
  }
  if (!frac.empty()) {
    out += "." + frac;
  }
  return negative ? "-" + out : out;
}

} // namespace qplace
