#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wab/bidersolve.hpp"

namespace wab {

/// A candidate commutative post-Lie product on W(a,b), given as a windowed
/// tabulation of x . y.
struct PostLieCandidate {
  Params params;
  WindowedBilinearMap product;
};

enum class PostLieAxiom { commutativity, leibniz_like, derivation_in_second };

inline const char* axiom_name(PostLieAxiom a) {
  switch (a) {
    case PostLieAxiom::commutativity: return "commutativity";
    case PostLieAxiom::leibniz_like: return "leibniz_like";
    case PostLieAxiom::derivation_in_second: return "derivation_in_second";
  }
  return "?";
}

struct PostLieWitness {
  PostLieAxiom axiom = PostLieAxiom::commutativity;
  std::vector<BasisVector> where;  // the violating pair or triple
  Element residual;
};

namespace detail {

/// Product of a basis vector with an element; nullopt when some required
/// pair falls outside the window.
inline std::optional<Element> guarded_right(const WindowedBilinearMap& f, BasisVector x,
                                            const Element& y) {
  Element out;
  for (const auto& [v, c] : y.terms()) {
    if (!f.in_window(x, v)) return std::nullopt;
    Element val = f.apply(x, v);
    val *= c;
    out += val;
  }
  return out;
}

inline std::optional<Element> guarded_left(const WindowedBilinearMap& f, const Element& x,
                                           BasisVector y) {
  Element out;
  for (const auto& [v, c] : x.terms()) {
    if (!f.in_window(v, y)) return std::nullopt;
    Element val = f.apply(v, y);
    val *= c;
    out += val;
  }
  return out;
}

}  // namespace detail

/// Checks the three commutative post-Lie axioms on every windowed basis pair
/// and triple whose evaluations all stay inside the window:
///   (i)   x.y = y.x
///   (ii)  [x,y].z = x.(y.z) - y.(x.z)
///   (iii) x.[y,z] = [x.y, z] + [y, x.z]
inline std::vector<PostLieWitness> check_postlie(const PostLieCandidate& c) {
  if (c.product.radius() < 3)
    throw validation_error("post-Lie candidate needs window radius >= 3");
  const Params& p = c.params;
  const WindowedBilinearMap& f = c.product;
  const int R = f.radius();
  const std::vector<BasisVector> basis = detail::window_basis(R);
  std::vector<PostLieWitness> out;

  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const BasisVector x = basis[i], y = basis[j];
      Element r = f.apply(x, y) - f.apply(y, x);
      if (!r.is_zero())
        out.push_back({PostLieAxiom::commutativity, {x, y}, std::move(r)});
    }

  // (ii): antisymmetric in (x,y).
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const BasisVector x = basis[i], y = basis[j];
      Element bxy = bracket(p, x, y);
      if (!bxy.is_zero() && std::abs(x.degree + y.degree) > R) continue;
      for (const BasisVector z : basis) {
        auto lhs = detail::guarded_left(f, bxy, z);
        auto xyz = detail::guarded_right(f, x, f.apply(y, z));
        auto yxz = detail::guarded_right(f, y, f.apply(x, z));
        if (!lhs || !xyz || !yxz) continue;
        Element r = *lhs - *xyz + *yxz;
        if (!r.is_zero())
          out.push_back({PostLieAxiom::leibniz_like, {x, y, z}, std::move(r)});
      }
    }

  // (iii): antisymmetric in (y,z).
  for (const BasisVector x : basis)
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        const BasisVector y = basis[i], z = basis[j];
        Element byz = bracket(p, y, z);
        if (!byz.is_zero() && std::abs(y.degree + z.degree) > R) continue;
        auto lhs = detail::guarded_right(f, x, byz);
        if (!lhs) continue;
        Element r = *lhs - bracket(p, f.apply(x, y), Element::basis(z)) -
                    bracket(p, Element::basis(y), f.apply(x, z));
        if (!r.is_zero())
          out.push_back({PostLieAxiom::derivation_in_second, {x, y, z}, std::move(r)});
      }
  return out;
}

// ---------------------------------------------------------------------------
// Triviality sweep: classification reduces any commutative post-Lie product
// to a family combination; each family direction is then killed by an explicit
// witness — commutativity for the skew directions (Inner, Theta), a
// leibniz_like triple for each symmetric direction (Psi/Upsilon mu_k).
// ---------------------------------------------------------------------------

struct DirectionExclusion {
  int k = 0;
  std::string label;
  bool skew = false;
  bool annihilates_i_arguments = false;  // checked, not assumed, for Psi/Upsilon
  bool excluded = false;
  PostLieWitness witness;
};

struct TrivialityVerdict {
  Params params;
  int radius = 0;
  int k_min = 0, k_max = 0;
  bool pass = false;
  ClassificationVerdict classification;
  std::vector<DirectionExclusion> rows;
};

namespace detail {

inline bool annihilates_i_args(const WindowedBilinearMap& f) {
  for (const auto& [key, val] : f.values())
    if ((key.first.tag == Tag::I || key.second.tag == Tag::I) && !val.is_zero()) return false;
  return true;
}

/// First commutativity violation in lex order over pairs from the cube
/// |degree| <= bound.
inline std::optional<PostLieWitness> commutativity_witness(const WindowedBilinearMap& f,
                                                           int bound) {
  const std::vector<BasisVector> cube = window_basis(bound);
  for (const BasisVector x : cube)
    for (const BasisVector y : cube) {
      Element r = f.apply(x, y) - f.apply(y, x);
      if (!r.is_zero()) return PostLieWitness{PostLieAxiom::commutativity, {x, y}, std::move(r)};
    }
  return std::nullopt;
}

/// First leibniz_like violation in lex order over triples from the cube.
inline std::optional<PostLieWitness> leibniz_witness(const Params& p,
                                                     const WindowedBilinearMap& f, int bound) {
  const std::vector<BasisVector> cube = window_basis(bound);
  for (const BasisVector x : cube)
    for (const BasisVector y : cube)
      for (const BasisVector z : cube) {
        Element lhs = apply_left(f, bracket(p, x, y), z);
        Element rhs = apply_right(f, x, f.apply(y, z)) - apply_right(f, y, f.apply(x, z));
        Element r = lhs - rhs;
        if (!r.is_zero())
          return PostLieWitness{PostLieAxiom::leibniz_like, {x, y, z}, std::move(r)};
      }
  return std::nullopt;
}

}  // namespace detail

inline TrivialityVerdict triviality_sweep(const Params& p, int k_min, int k_max, int R,
                                          int interior_margin = 2) {
  TrivialityVerdict verdict;
  verdict.params = p;
  verdict.radius = R;
  verdict.k_min = k_min;
  verdict.k_max = k_max;
  verdict.classification = classify(p, k_min, k_max, R, interior_margin);
  verdict.pass = verdict.classification.pass;

  const int bound = 3;
  for (int k = k_min; k <= k_max; ++k)
    for (const auto& [label, spec] : predicted_family_directions(p, k)) {
      DirectionExclusion row;
      row.k = k;
      row.label = label;
      row.skew = spec.kind == FamilyKind::Inner || spec.kind == FamilyKind::Theta;
      // Window large enough that every lookup in the witness cube resolves.
      const int witness_radius = 2 * bound + std::abs(k) + 2;
      WindowedBilinearMap product = family_map(p, spec, witness_radius);
      row.annihilates_i_arguments = detail::annihilates_i_args(product);
      std::optional<PostLieWitness> w;
      if (row.skew) {
        w = detail::commutativity_witness(product, bound);
      } else {
        w = detail::leibniz_witness(p, product, bound);
      }
      row.excluded = w.has_value();
      if (w) row.witness = std::move(*w);
      verdict.pass = verdict.pass && row.excluded;
      verdict.rows.push_back(std::move(row));
    }
  return verdict;
}

}  // namespace wab
