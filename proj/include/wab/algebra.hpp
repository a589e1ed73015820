#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wab/scalar.hpp"

namespace wab {

/// The two basis families of W(a,b): L spans a copy of the Witt algebra,
/// I spans the module of the intermediate series.
enum class Tag : std::uint8_t { L = 0, I = 1 };

inline char tag_char(Tag t) { return t == Tag::L ? 'L' : 'I'; }

/// Tagged basis symbol L_m or I_m. Ordered (tag, degree), L before I.
struct BasisVector {
  Tag tag;
  int degree;

  friend auto operator<=>(const BasisVector&, const BasisVector&) = default;
};

inline BasisVector L(int m) { return BasisVector{Tag::L, m}; }
inline BasisVector I(int m) { return BasisVector{Tag::I, m}; }

/// Structure parameters of W(a,b).
struct Params {
  Scalar a;
  Scalar b;

  friend bool operator==(const Params&, const Params&) = default;
};

namespace detail {
// Degrees stay tiny (|m| <= 64 in practice); guard index arithmetic anyway.
inline int checked_deg_add(int m, int n) {
  long long s = static_cast<long long>(m) + n;
  assert(s >= -(1LL << 30) && s <= (1LL << 30));
  return static_cast<int>(s);
}
}  // namespace detail

/// Finitely supported linear combination of basis vectors, canonical sparse
/// form: terms sorted by BasisVector, no zero coefficients ever stored.
class Element {
 public:
  using Term = std::pair<BasisVector, Scalar>;

  Element() = default;

  static Element basis(BasisVector v) {
    Element e;
    e.terms_.emplace_back(v, Scalar(1));
    return e;
  }
  static Element basis(Tag t, int degree) { return basis(BasisVector{t, degree}); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coeff(BasisVector v) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const Term& t, const BasisVector& k) { return t.first < k; });
    if (it != terms_.end() && it->first == v) return it->second;
    return Scalar(0);
  }

  /// Adds c * v, keeping canonical form.
  Element& add_term(BasisVector v, const Scalar& c) {
    if (c.is_zero()) return *this;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const Term& t, const BasisVector& k) { return t.first < k; });
    if (it != terms_.end() && it->first == v) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else {
      terms_.insert(it, Term{v, c});
    }
    return *this;
  }

  Element& operator+=(const Element& o) {
    for (const Term& t : o.terms_) add_term(t.first, t.second);
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (const Term& t : o.terms_) add_term(t.first, -t.second);
    return *this;
  }
  Element& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (Term& t : terms_) t.second *= c;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& c, Element e) { return e *= c; }
  friend Element operator-(Element e) {
    for (Term& t : e.terms_) t.second = -t.second;
    return e;
  }

  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Bracket. [L_m,L_n] = (m-n) L_{m+n}; [L_m,I_n] = -(n+a+bm) I_{m+n};
// [I_m,I_n] = 0; the I,L case is derived from antisymmetry.
// ---------------------------------------------------------------------------

inline Element bracket(const Params& p, BasisVector x, BasisVector y) {
  const int m = x.degree, n = y.degree;
  const int d = detail::checked_deg_add(m, n);
  Element out;
  if (x.tag == Tag::L && y.tag == Tag::L) {
    out.add_term(L(d), Scalar(m - n));
  } else if (x.tag == Tag::L && y.tag == Tag::I) {
    out.add_term(I(d), -(Scalar(n) + p.a + p.b * Scalar(m)));
  } else if (x.tag == Tag::I && y.tag == Tag::L) {
    out.add_term(I(d), Scalar(m) + p.a + p.b * Scalar(n));
  }
  return out;  // I,I pair: zero
}

inline Element bracket(const Params& p, const Element& x, const Element& y) {
  Element out;
  for (const auto& [xv, xc] : x.terms())
    for (const auto& [yv, yc] : y.terms()) {
      Element b = bracket(p, xv, yv);
      b *= xc * yc;
      out += b;
    }
  return out;
}

/// Jacobi residual [x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero for a Lie algebra.
inline Element check_jacobi(const Params& p, const Element& x, const Element& y,
                            const Element& z) {
  Element r = bracket(p, x, bracket(p, y, z));
  r += bracket(p, y, bracket(p, z, x));
  r += bracket(p, z, bracket(p, x, y));
  return r;
}

/// Degree-shift isomorphism sigma_k : W(a,b) -> W(a+k,b),
/// L_m -> L_m, I_m -> I_{m-k}, extended linearly.
inline Element shift_iso(int k, const Element& x) {
  Element out;
  for (const auto& [v, c] : x.terms()) {
    BasisVector w = v;
    if (v.tag == Tag::I) w.degree = detail::checked_deg_add(v.degree, -k);
    out.add_term(w, c);
  }
  return out;
}

/// Homomorphism residual sigma([x,y]_{a,b}) - [sigma x, sigma y]_{a+k,b}.
inline Element check_shift_homomorphism(const Params& p, int k, const Element& x,
                                        const Element& y) {
  Params shifted{p.a + Scalar(k), p.b};
  return shift_iso(k, bracket(p, x, y)) - bracket(shifted, shift_iso(k, x), shift_iso(k, y));
}

// ---------------------------------------------------------------------------
// Textual form, e.g. "3/2*L[-1] + (1i)*I[4]".
// ---------------------------------------------------------------------------

inline std::string to_string(BasisVector v) {
  return std::string(1, tag_char(v.tag)) + "[" + std::to_string(v.degree) + "]";
}

inline std::string to_string(const Element& e) {
  if (e.is_zero()) return "0";
  std::string s;
  for (const auto& [v, c] : e.terms()) {
    if (!s.empty()) s += " + ";
    s += c.is_real() ? to_string(c) : "(" + to_string(c) + ")";
    s += "*" + to_string(v);
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Element& e) {
  return os << to_string(e);
}

inline std::ostream& operator<<(std::ostream& os, BasisVector v) {
  return os << to_string(v);
}

inline BasisVector parse_basis_vector(std::string_view s) {
  s = detail::trim(s);
  if (s.size() < 4 || (s[0] != 'L' && s[0] != 'I') || s[1] != '[' || s.back() != ']')
    throw parse_error("bad basis vector: '" + std::string(s) + "'");
  Tag t = s[0] == 'L' ? Tag::L : Tag::I;
  Rational deg = detail::parse_rational_body(s.substr(2, s.size() - 3));
  if (denominator(deg) != 1) throw parse_error("non-integer degree: '" + std::string(s) + "'");
  return BasisVector{t, numerator(deg).convert_to<int>()};
}

inline Element parse_element(std::string_view s) {
  s = detail::trim(s);
  if (s == "0") return Element{};
  Element out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(" + ", pos);
    std::string_view term = s.substr(pos, next == std::string_view::npos ? next : next - pos);
    pos = next == std::string_view::npos ? s.size() : next + 3;
    term = detail::trim(term);
    std::size_t star = term.rfind('*');
    if (star == std::string_view::npos) throw parse_error("bad element term: '" + std::string(term) + "'");
    std::string_view coeff = detail::trim(term.substr(0, star));
    if (coeff.size() >= 2 && coeff.front() == '(' && coeff.back() == ')')
      coeff = coeff.substr(1, coeff.size() - 2);
    out.add_term(parse_basis_vector(term.substr(star + 1)), parse_scalar(coeff));
  }
  return out;
}

}  // namespace wab
