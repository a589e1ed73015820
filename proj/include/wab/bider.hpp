#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wab/algebra.hpp"

namespace wab {

using BasisPair = std::pair<BasisVector, BasisVector>;

/// Bilinear map tabulated on ordered basis pairs with both |degrees| <= radius.
/// A map with shift k sends (m,n) into degree m+n+k.
class WindowedBilinearMap {
 public:
  explicit WindowedBilinearMap(int radius, std::optional<int> shift = std::nullopt)
      : radius_(radius), shift_(shift) {
    if (radius < 1) throw validation_error("window radius must be positive");
  }

  int radius() const { return radius_; }
  std::optional<int> shift() const { return shift_; }
  bool in_window(BasisVector v) const { return std::abs(v.degree) <= radius_; }
  bool in_window(BasisVector x, BasisVector y) const { return in_window(x) && in_window(y); }
  const std::map<BasisPair, Element>& values() const { return values_; }

  void set(BasisVector x, BasisVector y, Element value) {
    if (!in_window(x, y))
      throw window_error("pair outside window: (" + to_string(x) + ", " + to_string(y) + ")");
    if (shift_) {
      for (const auto& [w, c] : value.terms())
        if (w.degree != x.degree + y.degree + *shift_)
          throw validation_error("value breaks declared degree shift");
    }
    if (value.is_zero())
      values_.erase({x, y});
    else
      values_[{x, y}] = std::move(value);
  }

  Element apply(BasisVector x, BasisVector y) const {
    if (!in_window(x, y))
      throw window_error("evaluation outside window: (" + to_string(x) + ", " + to_string(y) + ")");
    auto it = values_.find({x, y});
    return it == values_.end() ? Element{} : it->second;
  }

  Element apply(const Element& x, const Element& y) const {
    Element out;
    for (const auto& [xv, xc] : x.terms())
      for (const auto& [yv, yc] : y.terms()) {
        Element v = apply(xv, yv);
        v *= xc * yc;
        out += v;
      }
    return out;
  }

  /// Extensional equality: same window, same tabulation. The shift annotation
  /// is a derived property and does not enter.
  friend bool operator==(const WindowedBilinearMap& f, const WindowedBilinearMap& g) {
    return f.radius_ == g.radius_ && f.values_ == g.values_;
  }

 private:
  int radius_;
  std::optional<int> shift_;
  std::map<BasisPair, Element> values_;
};

inline WindowedBilinearMap operator*(const Scalar& c, const WindowedBilinearMap& f) {
  WindowedBilinearMap out(f.radius(), f.shift());
  for (const auto& [key, val] : f.values()) {
    Element v = val;
    v *= c;
    out.set(key.first, key.second, std::move(v));
  }
  return out;
}

inline WindowedBilinearMap operator+(const WindowedBilinearMap& f,
                                     const WindowedBilinearMap& g) {
  if (f.radius() != g.radius()) throw window_error("adding maps with different windows");
  std::optional<int> shift = f.shift() == g.shift() ? f.shift() : std::nullopt;
  WindowedBilinearMap out(f.radius(), shift);
  for (const auto& [key, val] : f.values()) out.set(key.first, key.second, val);
  for (const auto& [key, val] : g.values()) {
    Element v = val;
    auto it = f.values().find(key);
    if (it != f.values().end()) v += it->second;
    out.set(key.first, key.second, std::move(v));
  }
  return out;
}

inline WindowedBilinearMap crop(const WindowedBilinearMap& f, int new_radius) {
  WindowedBilinearMap out(new_radius, f.shift());
  for (const auto& [key, val] : f.values())
    if (std::abs(key.first.degree) <= new_radius && std::abs(key.second.degree) <= new_radius)
      out.set(key.first, key.second, val);
  return out;
}

// ---------------------------------------------------------------------------
// The closed-form biderivation families.
//   Inner:              (x,y) -> lambda [x,y]            any (a,b)
//   Psi_Omega:          (L_m,L_n) -> sum_k mu_k I_{m+n+k}            b = 0
//   Upsilon^a_Omega:    (L_m,L_n) -> sum_k (m+n+k+a) mu_k I_{m+n+k}  b = 1
//   Theta^a_mu:         (L_m,L_n) -> (m-n) mu I_{m+n-a}    b = -1, a integer
// All non-inner families annihilate every pair involving an I argument.
// ---------------------------------------------------------------------------

enum class FamilyKind { Inner, Psi, Upsilon, Theta };

inline const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Inner: return "Inner";
    case FamilyKind::Psi: return "Psi";
    case FamilyKind::Upsilon: return "Upsilon";
    case FamilyKind::Theta: return "Theta";
  }
  return "?";
}

struct FamilySpec {
  FamilyKind kind = FamilyKind::Inner;
  Scalar lambda;                 // Inner weight
  std::map<int, Scalar> omega;   // finitely supported mu_k (Psi, Upsilon)
  Scalar mu;                     // Theta weight

  static FamilySpec inner(Scalar lambda) {
    FamilySpec s;
    s.kind = FamilyKind::Inner;
    s.lambda = std::move(lambda);
    return s;
  }
  static FamilySpec psi(std::map<int, Scalar> omega) {
    FamilySpec s;
    s.kind = FamilyKind::Psi;
    s.omega = std::move(omega);
    return s;
  }
  static FamilySpec upsilon(std::map<int, Scalar> omega) {
    FamilySpec s;
    s.kind = FamilyKind::Upsilon;
    s.omega = std::move(omega);
    return s;
  }
  static FamilySpec theta(Scalar mu) {
    FamilySpec s;
    s.kind = FamilyKind::Theta;
    s.mu = std::move(mu);
    return s;
  }
};

inline void validate_family(const Params& p, const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Inner:
      return;
    case FamilyKind::Psi:
      if (p.b != Scalar(0)) throw family_mismatch("Psi requires b = 0");
      return;
    case FamilyKind::Upsilon:
      if (p.b != Scalar(1)) throw family_mismatch("Upsilon requires b = 1");
      return;
    case FamilyKind::Theta:
      if (p.b != Scalar(-1) || !is_integer(p.a))
        throw family_mismatch("Theta requires b = -1 and integer a");
      return;
  }
}

/// Tabulates the family on the window without checking it against (a,b);
/// exists so tests can force a family onto the wrong algebra.
inline WindowedBilinearMap family_map_unchecked(const Params& p, const FamilySpec& spec,
                                                int radius) {
  std::optional<int> shift;
  switch (spec.kind) {
    case FamilyKind::Inner:
      shift = 0;
      break;
    case FamilyKind::Psi:
    case FamilyKind::Upsilon:
      if (spec.omega.size() == 1) shift = spec.omega.begin()->first;
      break;
    case FamilyKind::Theta:
      shift = -floor_int(p.a.re).convert_to<int>();
      break;
  }
  WindowedBilinearMap out(radius, shift);
  for (int m = -radius; m <= radius; ++m)
    for (int n = -radius; n <= radius; ++n) {
      if (spec.kind == FamilyKind::Inner) {
        for (Tag s : {Tag::L, Tag::I})
          for (Tag t : {Tag::L, Tag::I}) {
            Element v = bracket(p, BasisVector{s, m}, BasisVector{t, n});
            v *= spec.lambda;
            out.set(BasisVector{s, m}, BasisVector{t, n}, std::move(v));
          }
        continue;
      }
      Element v;
      switch (spec.kind) {
        case FamilyKind::Psi:
          for (const auto& [k, mu_k] : spec.omega) v.add_term(I(m + n + k), mu_k);
          break;
        case FamilyKind::Upsilon:
          for (const auto& [k, mu_k] : spec.omega)
            v.add_term(I(m + n + k), (Scalar(m + n + k) + p.a) * mu_k);
          break;
        case FamilyKind::Theta: {
          int a = floor_int(p.a.re).convert_to<int>();
          v.add_term(I(m + n - a), Scalar(m - n) * spec.mu);
          break;
        }
        case FamilyKind::Inner:
          break;
      }
      out.set(L(m), L(n), std::move(v));
    }
  return out;
}

inline WindowedBilinearMap family_map(const Params& p, const FamilySpec& spec, int radius) {
  validate_family(p, spec);
  return family_map_unchecked(p, spec, radius);
}

// ---------------------------------------------------------------------------
// Biderivation check and elementary operations.
// ---------------------------------------------------------------------------

struct BiderViolation {
  enum class Side { first, second };
  BasisVector x, y, z;
  Side side;
  Element residual;
};

namespace detail {

/// All basis vectors with |degree| <= R in canonical order.
inline std::vector<BasisVector> window_basis(int R) {
  std::vector<BasisVector> out;
  out.reserve(2 * (2 * R + 1));
  for (Tag t : {Tag::L, Tag::I})
    for (int m = -R; m <= R; ++m) out.push_back(BasisVector{t, m});
  return out;
}

/// f applied to an element in the first slot and a basis vector in the second.
inline Element apply_left(const WindowedBilinearMap& f, const Element& x, BasisVector y) {
  Element out;
  for (const auto& [v, c] : x.terms()) {
    Element val = f.apply(v, y);
    val *= c;
    out += val;
  }
  return out;
}

inline Element apply_right(const WindowedBilinearMap& f, BasisVector x, const Element& y) {
  Element out;
  for (const auto& [v, c] : y.terms()) {
    Element val = f.apply(x, v);
    val *= c;
    out += val;
  }
  return out;
}

}  // namespace detail

/// Checks both defining identities on every basis triple whose required
/// evaluations stay inside the window:
///   first:  f([x,y],z) = [x,f(y,z)] + [f(x,z),y]
///   second: f(x,[y,z]) = [f(x,y),z] + [y,f(x,z)]
/// Each identity is antisymmetric in its bracketed pair, so x<y (resp. y<z)
/// enumerates every informative instance once.
inline std::vector<BiderViolation> is_biderivation(const Params& p,
                                                   const WindowedBilinearMap& f) {
  std::vector<BiderViolation> out;
  const int R = f.radius();
  const std::vector<BasisVector> basis = detail::window_basis(R);
  // (u,v) is the bracketed pair of either identity; w fills the other slot.
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const BasisVector u = basis[i], v = basis[j];
      Element buv = bracket(p, u, v);
      if (!buv.is_zero() && std::abs(u.degree + v.degree) > R) continue;
      for (const BasisVector w : basis) {
        {  // f([u,v],w) - [u,f(v,w)] - [f(u,w),v]
          Element r = detail::apply_left(f, buv, w);
          r -= bracket(p, Element::basis(u), f.apply(v, w));
          r -= bracket(p, f.apply(u, w), Element::basis(v));
          if (!r.is_zero()) out.push_back({u, v, w, BiderViolation::Side::first, std::move(r)});
        }
        {  // f(w,[u,v]) - [f(w,u),v] - [u,f(w,v)]
          Element r = detail::apply_right(f, w, buv);
          r -= bracket(p, f.apply(w, u), Element::basis(v));
          r -= bracket(p, Element::basis(u), f.apply(w, v));
          if (!r.is_zero()) out.push_back({w, u, v, BiderViolation::Side::second, std::move(r)});
        }
      }
    }
  return out;
}

/// f^op(x,y) = f(y,x).
inline WindowedBilinearMap op_map(const WindowedBilinearMap& f) {
  WindowedBilinearMap out(f.radius(), f.shift());
  for (const auto& [key, val] : f.values()) out.set(key.second, key.first, val);
  return out;
}

/// Splits f into its skew-symmetric and symmetric parts, f = f_minus + f_plus.
inline std::pair<WindowedBilinearMap, WindowedBilinearMap> decompose(
    const WindowedBilinearMap& f) {
  const Scalar half{Rational(1, 2)};
  WindowedBilinearMap minus(f.radius(), f.shift()), plus(f.radius(), f.shift());
  WindowedBilinearMap op = op_map(f);
  const std::vector<BasisVector> basis = detail::window_basis(f.radius());
  for (const BasisVector x : basis)
    for (const BasisVector y : basis) {
      Element fxy = f.apply(x, y), fyx = op.apply(x, y);
      minus.set(x, y, half * (fxy - fyx));
      plus.set(x, y, half * (fxy + fyx));
    }
  return {std::move(minus), std::move(plus)};
}

/// Pushes f along sigma_k : W(a,b) -> W(a+k,b). The result is tabulated where
/// both sigma-preimages lie in f's window, i.e. on the radius R - |k|.
inline WindowedBilinearMap transport(const Params& p, int k, const WindowedBilinearMap& f) {
  (void)p;  // the source parameters fix the domain; the tabulation is parameter-free
  const int new_radius = f.radius() - std::abs(k);
  if (new_radius < 1) throw window_error("transport shrinks the window to nothing");
  auto preimage = [k](BasisVector v) {
    if (v.tag == Tag::I) v.degree += k;
    return v;
  };
  // Detect a common degree shift of the transported values.
  std::optional<int> shift;
  bool homogeneous = true, any = false;
  WindowedBilinearMap out(new_radius);
  for (const BasisVector x : detail::window_basis(new_radius))
    for (const BasisVector y : detail::window_basis(new_radius)) {
      Element val = shift_iso(k, f.apply(preimage(x), preimage(y)));
      for (const auto& [w, c] : val.terms()) {
        int s = w.degree - x.degree - y.degree;
        if (!any) {
          shift = s;
          any = true;
        } else if (shift != std::optional<int>(s)) {
          homogeneous = false;
        }
      }
      out.set(x, y, std::move(val));
    }
  if (any && homogeneous) {
    WindowedBilinearMap tagged(new_radius, shift);
    for (const auto& [key, val] : out.values()) tagged.set(key.first, key.second, val);
    return tagged;
  }
  return out;
}

}  // namespace wab
