#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace delayline {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Exact parse of a terminating decimal such as "0.001", "-12.5", "4" or
// "1.5e-3". Throws Error{ParseError} for anything else.
Rational parse_decimal(std::string_view text);

// Renders a rational with a terminating decimal expansion exactly
// ("0.0003", "-12.5", "4"). Throws Error{InvalidValue} if the denominator
// has a prime factor other than 2 or 5.
std::string to_decimal_string(const Rational& value);

// Nearest double. Used only for human/JSON output, never for decisions.
double to_double(const Rational& value);

BigInt pow10(unsigned exponent);

// Integer floor of a rational (rounds towards negative infinity).
BigInt floor(const Rational& value);

std::optional<std::int64_t> to_int64(const BigInt& value);

}  // namespace delayline
