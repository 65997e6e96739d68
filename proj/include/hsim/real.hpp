#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hsim {

/**
 * @brief Coefficient type: double precision mantissa with a 64-bit exponent.
 *
 * Gadget strengths grow doubly exponentially with the number of rounds, so
 * compiled Hamiltonians routinely carry magnitudes far outside the range of
 * an IEEE double. Arithmetic keeps 53 significant bits.
 */
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<53, boost::multiprecision::digit_base_2, void, std::int64_t,
                                         -(std::int64_t{1} << 61), (std::int64_t{1} << 61)>,
    boost::multiprecision::et_off>;

/// @brief Converts to double; returns +-inf when out of range.
double to_double(const Real& x);

/// @brief True when the value converts to a finite double.
bool fits_double(const Real& x);

/// @brief log10|x|, valid across the whole exponent range. Returns -inf for 0.
double log10_abs(const Real& x);

/// @brief Real cube root, exact in the exponent for any magnitude.
Real cbrt_real(const Real& x);

/// @brief Binary exponent e with |x| = m 2^e, m in [1, 2). Zero maps to 0.
std::int64_t binary_exponent(const Real& x);

/**
 * @brief Shortest text that parses back to the same value.
 *
 * Values inside the double range use the shortest round-trip decimal form;
 * values outside use a hexadecimal float such as 0x1.8p+5000.
 */
std::string format_real(const Real& x);

/// @brief Parses a decimal or hexadecimal float; returns nullopt on malformed input.
std::optional<Real> parse_real(std::string_view text);

}  // namespace hsim
