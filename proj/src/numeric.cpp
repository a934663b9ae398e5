#include "delayline/numeric.hpp"

#include "delayline/errors.hpp"

#include <cctype>
#include <limits>

namespace delayline {

namespace {

// Decimal exponents outside this range would expand to absurd integers long
// before any cable could be cut for them.
constexpr long kMaxDecimalExponent = 4096;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void parse_fail(std::string_view text, const char* why) {
  throw Error(ErrorCode::ParseError,
              "not a finite decimal '" + std::string(text) + "': " + why);
}

}  // namespace

BigInt pow10(unsigned exponent) {
  BigInt result = 1;
  BigInt base = 10;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }

  std::string digits;
  long scale = 0;  // number of digits after the decimal point
  bool seen_digit = false;
  while (pos < text.size() && is_digit(text[pos])) {
    digits.push_back(text[pos++]);
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && is_digit(text[pos])) {
      digits.push_back(text[pos++]);
      ++scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) parse_fail(text, "no digits");

  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !is_digit(text[pos])) parse_fail(text, "empty exponent");
    while (pos < text.size() && is_digit(text[pos])) {
      exponent = exponent * 10 + (text[pos++] - '0');
      if (exponent > kMaxDecimalExponent) {
        throw Error(ErrorCode::Overflow,
                    "decimal exponent out of range in '" + std::string(text) + "'");
      }
    }
    if (exp_negative) exponent = -exponent;
  }
  if (pos != text.size()) parse_fail(text, "trailing characters");

  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  const BigInt mantissa(first == std::string::npos ? std::string("0") : digits.substr(first));
  const long shift = exponent - scale;
  if (shift < -kMaxDecimalExponent || shift > kMaxDecimalExponent) {
    throw Error(ErrorCode::Overflow,
                "decimal exponent out of range in '" + std::string(text) + "'");
  }
  Rational value = shift >= 0
                       ? Rational(mantissa * pow10(static_cast<unsigned>(shift)))
                       : Rational(mantissa, pow10(static_cast<unsigned>(-shift)));
  return negative ? Rational(-value) : value;
}

std::string to_decimal_string(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);

  unsigned twos = 0;
  unsigned fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) {
    throw Error(ErrorCode::InvalidValue, "value has no terminating decimal expansion");
  }

  const unsigned places = std::max(twos, fives);
  // num / (2^twos 5^fives) == num * 2^(places-twos) 5^(places-fives) / 10^places
  BigInt scaled = num;
  for (unsigned i = twos; i < places; ++i) scaled *= 2;
  for (unsigned i = fives; i < places; ++i) scaled *= 5;

  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');

  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places != 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt floor(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt quotient = num / den;
  if (num % den != 0 && num < 0) quotient -= 1;
  return quotient;
}

std::optional<std::int64_t> to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace delayline
