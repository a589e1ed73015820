#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "wab/errors.hpp"

namespace wab {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational re + im*i — the coefficient field of the whole library.
/// Values are immutable in spirit: every operation returns a fresh, reduced value.
struct Scalar {
  Rational re;
  Rational im;

  Scalar() = default;
  Scalar(int v) : re(v) {}                            // NOLINT(google-explicit-constructor)
  Scalar(long v) : re(v) {}                           // NOLINT(google-explicit-constructor)
  Scalar(Rational r) : re(std::move(r)) {}            // NOLINT(google-explicit-constructor)
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  Scalar(int, int) = delete;  // ambiguous: use Scalar(Rational(p, q)) or Scalar(re, im)

  static Scalar unit_i() { return Scalar(Rational(0), Rational(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  friend bool operator==(const Scalar&, const Scalar&) = default;

  Scalar& operator+=(const Scalar& o) {
    if (!o.re.is_zero()) re += o.re;
    if (!o.im.is_zero()) im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    if (!o.re.is_zero()) re -= o.re;
    if (!o.im.is_zero()) im -= o.im;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (im.is_zero() && o.im.is_zero()) {  // the common, purely real case
      re *= o.re;
      return *this;
    }
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re, -a.im); }
};

inline Scalar conj(const Scalar& x) { return Scalar(x.re, -x.im); }

/// |x|^2 = re^2 + im^2, exact and non-negative.
inline Rational norm_sq(const Scalar& x) { return x.re * x.re + x.im * x.im; }

inline Scalar inv(const Scalar& x) {
  if (x.is_zero()) throw division_by_zero();
  Rational n = norm_sq(x);
  return Scalar(x.re / n, -x.im / n);
}

inline Scalar operator/(const Scalar& a, const Scalar& b) { return a * inv(b); }

/// True for the rational integers inside Q(i) (im = 0, denominator 1).
inline bool is_integer(const Scalar& x) {
  return x.im.is_zero() && denominator(x.re) == 1;
}

inline BigInt floor_int(const Rational& r) {
  BigInt n = numerator(r), d = denominator(r);
  if (n >= 0) return BigInt(n / d);
  return BigInt((n - d + 1) / d);
}

// ---------------------------------------------------------------------------
// Textual form: "p/q" for rationals, "p/q+r/si" for Gaussian rationals.
// Printing is canonical; parsing accepts redundant forms like "1/1" or "0+1i".
// ---------------------------------------------------------------------------

inline std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline std::string to_string(const Scalar& x) {
  if (x.im.is_zero()) return to_string(x.re);
  std::string s;
  if (!x.re.is_zero()) {
    s = to_string(x.re);
    s += x.im > 0 ? "+" : "-";
    s += to_string(x.im > 0 ? x.im : Rational(-x.im));
  } else {
    s = to_string(x.im);
  }
  return s + "i";
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& x) {
  return os << to_string(x);
}

namespace detail {

inline Rational parse_rational_body(std::string_view s) {
  if (s.empty()) throw parse_error("empty rational");
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  std::size_t digits_begin = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits_begin) throw parse_error("expected digits in rational: '" + std::string(s) + "'");
  BigInt num(std::string(s.substr(digits_begin, pos - digits_begin)));
  BigInt den(1);
  if (pos < s.size()) {
    if (s[pos] != '/') throw parse_error("bad rational syntax: '" + std::string(s) + "'");
    ++pos;
    std::size_t den_begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == den_begin || pos != s.size())
      throw parse_error("bad rational syntax: '" + std::string(s) + "'");
    den = BigInt(std::string(s.substr(den_begin)));
    if (den.is_zero()) throw parse_error("zero denominator: '" + std::string(s) + "'");
  }
  if (neg) num = -num;
  return Rational(num, den);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline Rational parse_rational(std::string_view s) {
  return detail::parse_rational_body(detail::trim(s));
}

/// Parses "p/q", "p/q+r/si", "p/q-r/si", "r/si", "i", "-i".
inline Scalar parse_scalar(std::string_view input) {
  std::string_view s = detail::trim(input);
  if (s.empty()) throw parse_error("empty scalar");
  // Split at the first top-level sign after position 0.
  std::size_t split = std::string_view::npos;
  for (std::size_t p = 1; p < s.size(); ++p) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != '/') {
      split = p;
      break;
    }
  }
  auto parse_part = [](std::string_view part, bool& imaginary) -> Rational {
    part = detail::trim(part);
    if (part.empty()) throw parse_error("empty scalar component");
    imaginary = part.back() == 'i';
    if (imaginary) {
      part.remove_suffix(1);
      part = detail::trim(part);
      if (part.empty() || part == "+") return Rational(1);
      if (part == "-") return Rational(-1);
    }
    return detail::parse_rational_body(part);
  };
  bool first_im = false;
  Rational first = parse_part(s.substr(0, split), first_im);
  if (split == std::string_view::npos)
    return first_im ? Scalar(Rational(0), first) : Scalar(first);
  bool second_im = false;
  Rational second = parse_part(s.substr(split), second_im);
  if (first_im || !second_im)
    throw parse_error("bad scalar syntax: '" + std::string(input) + "'");
  return Scalar(first, second);
}

}  // namespace wab
