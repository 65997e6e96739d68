#include "hsim/real.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace hsim {

namespace bmp = boost::multiprecision;

double to_double(const Real& x) { return x.convert_to<double>(); }

bool fits_double(const Real& x) { return std::isfinite(to_double(x)); }

std::int64_t binary_exponent(const Real& x) {
  if (x == 0) return 0;
  return x.backend().exponent();
}

double log10_abs(const Real& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  const std::int64_t e = binary_exponent(x);
  const double m = bmp::abs(bmp::ldexp(x, -e)).convert_to<double>();
  return std::log10(m) + static_cast<double>(e) * std::log10(2.0);
}

Real cbrt_real(const Real& x) {
  if (x == 0) return 0;
  const std::int64_t e = binary_exponent(x);
  std::int64_t q = e / 3, r = e % 3;
  if (r < 0) r += 3, --q;
  const double m = bmp::ldexp(x, -e).convert_to<double>();
  Real y = bmp::ldexp(Real(std::cbrt(std::ldexp(m, static_cast<int>(r)))), q);
  // One Newton step recovers the last bits lost in the double cube root.
  y -= (y * y * y - x) / (3 * y * y);
  return y;
}

std::string format_real(const Real& x) {
  const double d = to_double(x);
  if (x == 0) return "0";
  if (std::isfinite(d) && std::fabs(d) >= std::numeric_limits<double>::min()) {
    return fmt::format("{}", d);
  }
  const std::int64_t e = binary_exponent(x);
  const double m = bmp::ldexp(x, -e).convert_to<double>();
  std::string hex = fmt::format("{:a}", m);
  hex.erase(hex.find('p'));
  return fmt::format("{}p{:+d}", hex, e);
}

namespace {

std::optional<Real> parse_hex(std::string_view text) {
  const auto p = text.find_first_of("pP");
  if (p == std::string_view::npos) return std::nullopt;
  std::int64_t e = 0;
  std::string_view exp = text.substr(p + 1);
  if (!exp.empty() && exp.front() == '+') exp.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), e);
  if (ec != std::errc() || ptr != exp.data() + exp.size() || exp.empty()) return std::nullopt;
  const std::string mant = std::string(text.substr(0, p)) + "p0";
  char* end = nullptr;
  const double m = std::strtod(mant.c_str(), &end);
  if (end != mant.c_str() + mant.size() || !std::isfinite(m)) return std::nullopt;
  return bmp::ldexp(Real(m), e);
}

}  // namespace

std::optional<Real> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') ++i;
  if (text.substr(i, 2) == "0x" || text.substr(i, 2) == "0X") {
    for (std::size_t k = i + 2; k < text.size() && text[k] != 'p' && text[k] != 'P'; ++k) {
      if (!std::isxdigit(static_cast<unsigned char>(text[k])) && text[k] != '.') return std::nullopt;
    }
    return parse_hex(text);
  }
  bool digits = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, digits = true;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, digits = true;
  }
  if (!digits) return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    bool exp_digits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, exp_digits = true;
    if (!exp_digits) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;
  try {
    return Real(std::string(text));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace hsim
