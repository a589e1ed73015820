#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

#include "wab/algebra.hpp"
#include "wab/nullspace.hpp"

namespace wab {

/// Linear map tabulated on basis vectors with |degree| <= radius. A map with
/// shift k sends degree m into degree m+k (the homogeneous case).
class WindowedLinearMap {
 public:
  explicit WindowedLinearMap(int radius, std::optional<int> shift = std::nullopt)
      : radius_(radius), shift_(shift) {
    if (radius < 1) throw validation_error("window radius must be positive");
  }

  int radius() const { return radius_; }
  std::optional<int> shift() const { return shift_; }
  bool in_window(BasisVector v) const { return std::abs(v.degree) <= radius_; }
  const std::map<BasisVector, Element>& values() const { return values_; }

  void set(BasisVector v, Element value) {
    if (!in_window(v)) throw window_error("key outside window: " + to_string(v));
    if (shift_) {
      for (const auto& [w, c] : value.terms())
        if (w.degree != v.degree + *shift_)
          throw validation_error("value breaks declared degree shift at " + to_string(v));
    }
    if (value.is_zero())
      values_.erase(v);
    else
      values_[v] = std::move(value);
  }

  Element apply(BasisVector v) const {
    if (!in_window(v)) throw window_error("evaluation outside window: " + to_string(v));
    auto it = values_.find(v);
    return it == values_.end() ? Element{} : it->second;
  }

  Element apply(const Element& x) const {
    Element out;
    for (const auto& [v, c] : x.terms()) {
      Element img = apply(v);
      img *= c;
      out += img;
    }
    return out;
  }

  /// Extensional equality: same window, same tabulation (shift annotation
  /// does not enter).
  friend bool operator==(const WindowedLinearMap& f, const WindowedLinearMap& g) {
    return f.radius_ == g.radius_ && f.values_ == g.values_;
  }

 private:
  int radius_;
  std::optional<int> shift_;
  std::map<BasisVector, Element> values_;
};

inline WindowedLinearMap crop(const WindowedLinearMap& f, int new_radius) {
  WindowedLinearMap out(new_radius, f.shift());
  for (const auto& [v, val] : f.values())
    if (std::abs(v.degree) <= new_radius) out.set(v, val);
  return out;
}

/// ad x tabulated on the window: y -> [x, y].
inline WindowedLinearMap inner_derivation(const Params& p, const Element& x, int radius) {
  std::optional<int> shift;
  if (!x.is_zero()) {
    int d = x.terms().front().first.degree;
    bool homogeneous = true;
    for (const auto& [v, c] : x.terms()) homogeneous = homogeneous && v.degree == d;
    if (homogeneous) shift = d;
  } else {
    shift = 0;
  }
  WindowedLinearMap out(radius, shift);
  for (int m = -radius; m <= radius; ++m)
    for (Tag t : {Tag::L, Tag::I}) {
      BasisVector v{t, m};
      out.set(v, bracket(p, x, Element::basis(v)));
    }
  return out;
}

/// The outer derivations entering the classification of Der(W(a,b)):
/// D1 is a derivation for every (a,b); D2_00 and D3 belong to (0,0),
/// D2_01 to (0,1) and D2_02 to (0,2).
enum class CanonicalDerivation { D1, D2_00, D2_01, D2_02, D3 };

inline WindowedLinearMap canonical_derivation(CanonicalDerivation which, int radius) {
  WindowedLinearMap out(radius, 0);
  for (int m = -radius; m <= radius; ++m) {
    Scalar sm(m);
    switch (which) {
      case CanonicalDerivation::D1:
        out.set(I(m), Element::basis(I(m)));
        break;
      case CanonicalDerivation::D2_00:
        out.set(L(m), (sm - Scalar(1)) * Element::basis(I(m)));
        break;
      case CanonicalDerivation::D2_01:
        out.set(L(m), (sm * sm - sm) * Element::basis(I(m)));
        break;
      case CanonicalDerivation::D2_02:
        out.set(L(m), sm * sm * sm * Element::basis(I(m)));
        break;
      case CanonicalDerivation::D3:
        out.set(L(m), sm * Element::basis(I(m)));
        break;
    }
  }
  return out;
}

struct DerivationViolation {
  BasisVector x;
  BasisVector y;
  Element residual;
};

/// Leibniz check D([x,y]) - [D(x),y] - [x,D(y)] on every unordered basis pair
/// whose required evaluations lie in the window (the residual is antisymmetric
/// in x,y, so each pair is reported once).
inline std::vector<DerivationViolation> is_derivation(const Params& p,
                                                      const WindowedLinearMap& D) {
  std::vector<DerivationViolation> out;
  const int R = D.radius();
  std::vector<BasisVector> window;
  for (Tag t : {Tag::L, Tag::I})
    for (int m = -R; m <= R; ++m) window.push_back(BasisVector{t, m});
  std::sort(window.begin(), window.end());
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      BasisVector x = window[i], y = window[j];
      Element bxy = bracket(p, x, y);
      if (!bxy.is_zero() && std::abs(x.degree + y.degree) > R) continue;
      Element residual = D.apply(bxy);
      residual -= bracket(p, D.apply(x), Element::basis(y));
      residual -= bracket(p, Element::basis(x), D.apply(y));
      if (!residual.is_zero()) out.push_back({x, y, std::move(residual)});
    }
  return out;
}

struct DerivationSolveReport {
  Params params;
  int degree_shift = 0;
  int radius = 0;
  int interior_radius = 0;
  int raw_dimension = 0;
  int certified_dimension = 0;
  std::vector<WindowedLinearMap> basis;
};

namespace detail {

inline int der_col(int R, Tag t_in, int m, Tag t_out) {
  return ((static_cast<int>(t_in) * (2 * R + 1)) + (m + R)) * 2 + static_cast<int>(t_out);
}

inline std::vector<Scalar> vectorize_linear(const WindowedLinearMap& f, int k) {
  const int R = f.radius();
  std::vector<Scalar> v(4 * (2 * R + 1), Scalar(0));
  for (const auto& [key, val] : f.values())
    for (const auto& [w, c] : val.terms()) {
      if (w.degree != key.degree + k)
        throw validation_error("map is not homogeneous of shift " + std::to_string(k));
      v[der_col(R, key.tag, key.degree, w.tag)] = c;
    }
  return v;
}

}  // namespace detail

/// Brute-force solve for the shift-k component of Der(W(a,b)) on the window
/// |m| <= R. Unknowns are the coefficients of D(L_m), D(I_m) on L_{m+k} and
/// I_{m+k}; one Leibniz constraint per admissible basis pair. The certified
/// dimension is the rank of the kernel restricted to |m| <= R - margin,
/// which strips boundary-supported truncation artifacts.
inline DerivationSolveReport solve_derivations(const Params& p, int k, int R,
                                               int interior_margin) {
  if (interior_margin < 0) throw validation_error("interior margin must be >= 0");
  if (R < interior_margin + 2)
    throw window_error("radius must be at least interior_margin + 2");
  const int ncols = 4 * (2 * R + 1);
  LinearSystem sys(ncols);
  const Scalar& a = p.a;
  const Scalar& b = p.b;

  std::vector<BasisVector> window;
  for (Tag t : {Tag::L, Tag::I})
    for (int m = -R; m <= R; ++m) window.push_back(BasisVector{t, m});
  std::sort(window.begin(), window.end());

  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      const BasisVector x = window[i], y = window[j];
      const int m = x.degree, n = y.degree;
      Element bxy = bracket(p, x, y);
      if (!bxy.is_zero() && std::abs(m + n) > R) continue;
      SparseRow row_L, row_I;
      // D([x,y])
      for (const auto& [w, c] : bxy.terms()) {
        row_L.terms.emplace_back(detail::der_col(R, w.tag, w.degree, Tag::L), c);
        row_I.terms.emplace_back(detail::der_col(R, w.tag, w.degree, Tag::I), c);
      }
      // -[D(x), y]
      if (y.tag == Tag::L) {
        row_L.terms.emplace_back(detail::der_col(R, x.tag, m, Tag::L), -Scalar(m + k - n));
        row_I.terms.emplace_back(detail::der_col(R, x.tag, m, Tag::I),
                                 -(Scalar(m + k) + a + b * Scalar(n)));
      } else {
        row_I.terms.emplace_back(detail::der_col(R, x.tag, m, Tag::L),
                                 Scalar(n) + a + b * Scalar(m + k));
      }
      // -[x, D(y)]
      if (x.tag == Tag::L) {
        row_L.terms.emplace_back(detail::der_col(R, y.tag, n, Tag::L), -Scalar(m - n - k));
        row_I.terms.emplace_back(detail::der_col(R, y.tag, n, Tag::I),
                                 Scalar(n + k) + a + b * Scalar(m));
      } else {
        row_I.terms.emplace_back(detail::der_col(R, y.tag, n, Tag::L),
                                 -(Scalar(m) + a + b * Scalar(n + k)));
      }
      sys.add_row(std::move(row_L));
      sys.add_row(std::move(row_I));
    }

  if (sys.row_count() == 0) throw window_error("window too small: no constraints generated");
  NullspaceBasis null = std::move(sys).solve();

  DerivationSolveReport report;
  report.params = p;
  report.degree_shift = k;
  report.radius = R;
  report.interior_radius = R - interior_margin;
  report.raw_dimension = null.raw_dimension();

  std::vector<int> interior_cols;
  for (Tag t_in : {Tag::L, Tag::I})
    for (int m = -report.interior_radius; m <= report.interior_radius; ++m)
      for (Tag t_out : {Tag::L, Tag::I})
        interior_cols.push_back(detail::der_col(R, t_in, m, t_out));
  SpanBasis interior(interior_cols.size());
  for (const auto& vec : null.vectors) {
    std::vector<Scalar> restricted;
    restricted.reserve(interior_cols.size());
    for (int c : interior_cols) restricted.push_back(vec[c]);
    interior.insert(std::move(restricted));
  }
  report.certified_dimension = interior.rank();

  for (const auto& vec : null.vectors) {
    WindowedLinearMap f(R, k);
    for (Tag t_in : {Tag::L, Tag::I})
      for (int m = -R; m <= R; ++m) {
        Element val;
        val.add_term(L(m + k), vec[detail::der_col(R, t_in, m, Tag::L)]);
        val.add_term(I(m + k), vec[detail::der_col(R, t_in, m, Tag::I)]);
        f.set(BasisVector{t_in, m}, std::move(val));
      }
    report.basis.push_back(std::move(f));
  }
  return report;
}

/// Exact membership of a homogeneous windowed map in the solved kernel.
inline bool in_solution_space(const DerivationSolveReport& report,
                              const WindowedLinearMap& f) {
  if (f.radius() < report.radius)
    throw validation_error("map window smaller than the solved window");
  WindowedLinearMap g = f.radius() == report.radius ? f : crop(f, report.radius);
  SpanBasis span(4 * (2 * report.radius + 1));
  for (const auto& member : report.basis)
    span.insert(detail::vectorize_linear(member, report.degree_shift));
  return span.contains(detail::vectorize_linear(g, report.degree_shift));
}

// ---------------------------------------------------------------------------
// Expected dimensions. The classification of Der(W(a,b)) assumes the
// normalization 0 <= a < 1 (any integer shift of a gives an isomorphic
// algebra), so expectations are only meaningful for normalized parameters.
// ---------------------------------------------------------------------------

/// Shifts re(a) into [0,1); the isomorphism class is unchanged.
inline Params normalize_params(const Params& p) {
  BigInt f = floor_int(p.a.re);
  return Params{Scalar(p.a.re - Rational(f), p.a.im), p.b};
}

inline bool is_special_derivation_point(const Params& p) {
  return p.a == Scalar(0) &&
         (p.b == Scalar(0) || p.b == Scalar(1) || p.b == Scalar(2));
}

/// Certified dimension of the shift-k derivation space implied by the
/// classification, for parameters with re(a) in [0,1).
inline int expected_derivation_dimension(const Params& normalized, int k) {
  if (k != 0) return 2;  // ad L_k and ad I_k
  return is_special_derivation_point(normalized) ? 4 : 3;
}

/// The outer derivations that must lie in the solved shift-0 space at the
/// given normalized parameters.
inline std::vector<CanonicalDerivation> applicable_canonical_derivations(
    const Params& normalized) {
  std::vector<CanonicalDerivation> out{CanonicalDerivation::D1};
  if (normalized.a == Scalar(0)) {
    if (normalized.b == Scalar(0)) {
      out.push_back(CanonicalDerivation::D2_00);
      out.push_back(CanonicalDerivation::D3);
    } else if (normalized.b == Scalar(1)) {
      out.push_back(CanonicalDerivation::D2_01);
    } else if (normalized.b == Scalar(2)) {
      out.push_back(CanonicalDerivation::D2_02);
    }
  }
  return out;
}

}  // namespace wab
