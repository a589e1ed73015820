#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wab/bider.hpp"
#include "wab/nullspace.hpp"

namespace wab {

namespace detail {

/// Column of the unknown coefficient of f(e^{t1}_m, e^{t2}_n) on the t_out
/// basis vector of degree m+n+k. Lexicographic in (t1, m, t2, n, t_out).
inline int bider_col(int R, Tag t1, int m, Tag t2, int n, Tag t_out) {
  const int W = 2 * R + 1;
  return ((((static_cast<int>(t1) * W + (m + R)) * 2 + static_cast<int>(t2)) * W + (n + R)) * 2) +
         static_cast<int>(t_out);
}

inline std::vector<Scalar> vectorize_bilinear(const WindowedBilinearMap& f, int k) {
  const int R = f.radius();
  const int W = 2 * R + 1;
  std::vector<Scalar> out(8 * W * W, Scalar(0));
  for (const auto& [key, val] : f.values())
    for (const auto& [w, c] : val.terms()) {
      if (w.degree != key.first.degree + key.second.degree + k)
        throw validation_error("bilinear map is not homogeneous of shift " + std::to_string(k));
      out[bider_col(R, key.first.tag, key.first.degree, key.second.tag, key.second.degree,
                    w.tag)] = c;
    }
  return out;
}

}  // namespace detail

/// The family directions the closed-form classification predicts for the
/// shift-k component of Bid(W(a,b)): Inner at k = 0; one Psi (b=0) or
/// Upsilon (b=1) direction at every k; Theta at k = -a when b=-1, a integer.
inline std::vector<std::pair<std::string, FamilySpec>> predicted_family_directions(
    const Params& p, int k) {
  std::vector<std::pair<std::string, FamilySpec>> out;
  if (k == 0) out.emplace_back("Inner", FamilySpec::inner(Scalar(1)));
  if (p.b == Scalar(0))
    out.emplace_back("Psi[" + std::to_string(k) + "]", FamilySpec::psi({{k, Scalar(1)}}));
  if (p.b == Scalar(1))
    out.emplace_back("Upsilon[" + std::to_string(k) + "]", FamilySpec::upsilon({{k, Scalar(1)}}));
  if (p.b == Scalar(-1) && is_integer(p.a) && Scalar(k) == -p.a)
    out.emplace_back("Theta", FamilySpec::theta(Scalar(1)));
  return out;
}

inline int predicted_bider_dimension(const Params& p, int k) {
  return static_cast<int>(predicted_family_directions(p, k).size());
}

struct BiderSolveReport {
  Params params;
  int degree_shift = 0;
  int radius = 0;
  int interior_radius = 0;
  int raw_dimension = 0;
  int certified_dimension = 0;
  std::vector<WindowedBilinearMap> basis;   // raw kernel basis
  std::vector<std::string> family_labels;   // predicted directions at this shift
  Rational family_residual;                 // 0 iff certified span == family span on interior
};

/// Brute-force solve for the shift-k component of Bid(W(a,b)) on the window
/// |m|,|n| <= R. Unknowns are the two output coefficients of f at every
/// ordered basis pair; equations are all windowed instances of both defining
/// identities. A triple only contributes when every f-argument pair it needs
/// lies inside the window.
inline BiderSolveReport solve_biderivations(const Params& p, int k, int R,
                                            int interior_margin) {
  if (interior_margin < 0) throw validation_error("interior margin must be >= 0");
  if (R < interior_margin + 2)
    throw window_error("radius must be at least interior_margin + 2");
  const int W = 2 * R + 1;
  const Scalar& a = p.a;
  const Scalar& b = p.b;
  LinearSystem sys(8 * W * W);
  const std::vector<BasisVector> basis = detail::window_basis(R);

  // -[x, value(s)] contributions, value = alpha L_s + beta I_s at F[pair].
  auto minus_left_bracket = [&](SparseRow& row_L, SparseRow& row_I, BasisVector x, int s,
                                int col_L, int col_I) {
    if (x.tag == Tag::L) {
      row_L.terms.emplace_back(col_L, -Scalar(x.degree - s));
      row_I.terms.emplace_back(col_I, Scalar(s) + a + b * Scalar(x.degree));
    } else {
      row_I.terms.emplace_back(col_L, -(Scalar(x.degree) + a + b * Scalar(s)));
    }
  };
  // -[value(s), y] contributions.
  auto minus_right_bracket = [&](SparseRow& row_L, SparseRow& row_I, BasisVector y, int s,
                                 int col_L, int col_I) {
    if (y.tag == Tag::L) {
      row_L.terms.emplace_back(col_L, -Scalar(s - y.degree));
      row_I.terms.emplace_back(col_I, -(Scalar(s) + a + b * Scalar(y.degree)));
    } else {
      row_I.terms.emplace_back(col_L, Scalar(y.degree) + a + b * Scalar(s));
    }
  };
  auto pair_cols = [&](BasisVector x, BasisVector y) {
    return std::pair<int, int>{
        detail::bider_col(R, x.tag, x.degree, y.tag, y.degree, Tag::L),
        detail::bider_col(R, x.tag, x.degree, y.tag, y.degree, Tag::I)};
  };

  // (u,v) ranges over the bracketed pair of either identity, u < v; w over the
  // remaining slot. Both identities are antisymmetric in (u,v).
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const BasisVector u = basis[i], v = basis[j];
      const Element buv = bracket(p, u, v);
      if (!buv.is_zero() && std::abs(u.degree + v.degree) > R) continue;
      for (const BasisVector w : basis) {
        {  // first identity: f([u,v],w) = [u,f(v,w)] + [f(u,w),v]
          SparseRow row_L, row_I;
          for (const auto& [bv, c] : buv.terms()) {
            auto [cL, cI] = pair_cols(bv, w);
            row_L.terms.emplace_back(cL, c);
            row_I.terms.emplace_back(cI, c);
          }
          auto [vwL, vwI] = pair_cols(v, w);
          minus_left_bracket(row_L, row_I, u, v.degree + w.degree + k, vwL, vwI);
          auto [uwL, uwI] = pair_cols(u, w);
          minus_right_bracket(row_L, row_I, v, u.degree + w.degree + k, uwL, uwI);
          sys.add_row(std::move(row_L));
          sys.add_row(std::move(row_I));
        }
        {  // second identity: f(w,[u,v]) = [f(w,u),v] + [u,f(w,v)]
          SparseRow row_L, row_I;
          for (const auto& [bv, c] : buv.terms()) {
            auto [cL, cI] = pair_cols(w, bv);
            row_L.terms.emplace_back(cL, c);
            row_I.terms.emplace_back(cI, c);
          }
          auto [wuL, wuI] = pair_cols(w, u);
          minus_right_bracket(row_L, row_I, v, w.degree + u.degree + k, wuL, wuI);
          auto [wvL, wvI] = pair_cols(w, v);
          minus_left_bracket(row_L, row_I, u, w.degree + v.degree + k, wvL, wvI);
          sys.add_row(std::move(row_L));
          sys.add_row(std::move(row_I));
        }
      }
    }

  if (sys.row_count() == 0) throw window_error("window too small: no constraints generated");
  NullspaceBasis null = std::move(sys).solve();

  BiderSolveReport report;
  report.params = p;
  report.degree_shift = k;
  report.radius = R;
  report.interior_radius = R - interior_margin;
  report.raw_dimension = null.raw_dimension();

  // Interior restriction: both argument degrees within R - margin.
  const int Ri = report.interior_radius;
  std::vector<int> interior_cols;
  for (Tag t1 : {Tag::L, Tag::I})
    for (int m = -Ri; m <= Ri; ++m)
      for (Tag t2 : {Tag::L, Tag::I})
        for (int n = -Ri; n <= Ri; ++n)
          for (Tag t_out : {Tag::L, Tag::I})
            interior_cols.push_back(detail::bider_col(R, t1, m, t2, n, t_out));
  auto restrict_to_interior = [&](const std::vector<Scalar>& vec) {
    std::vector<Scalar> out;
    out.reserve(interior_cols.size());
    for (int c : interior_cols) out.push_back(vec[c]);
    return out;
  };

  SpanBasis solved(interior_cols.size());
  for (const auto& vec : null.vectors) solved.insert(restrict_to_interior(vec));
  report.certified_dimension = solved.rank();

  SpanBasis family(interior_cols.size());
  std::vector<std::vector<Scalar>> family_vecs;
  for (const auto& [label, spec] : predicted_family_directions(p, k)) {
    report.family_labels.push_back(label);
    family_vecs.push_back(detail::vectorize_bilinear(family_map(p, spec, R), k));
  }
  report.family_residual = Rational(0);
  for (const auto& fv : family_vecs) {
    std::vector<Scalar> r = restrict_to_interior(fv);
    report.family_residual += solved.remainder_norm_sq(r);
    family.insert(std::move(r));
  }
  for (const auto& vec : null.vectors)
    report.family_residual += family.remainder_norm_sq(restrict_to_interior(vec));

  for (const auto& vec : null.vectors) {
    WindowedBilinearMap f(R, k);
    for (const BasisVector x : basis)
      for (const BasisVector y : basis) {
        Element val;
        val.add_term(L(x.degree + y.degree + k),
                     vec[detail::bider_col(R, x.tag, x.degree, y.tag, y.degree, Tag::L)]);
        val.add_term(I(x.degree + y.degree + k),
                     vec[detail::bider_col(R, x.tag, x.degree, y.tag, y.degree, Tag::I)]);
        f.set(x, y, std::move(val));
      }
    report.basis.push_back(std::move(f));
  }
  return report;
}

/// Exact membership of a homogeneous windowed bilinear map in the solved kernel.
inline bool in_solution_space(const BiderSolveReport& report, const WindowedBilinearMap& f) {
  if (f.radius() < report.radius)
    throw validation_error("map window smaller than the solved window");
  WindowedBilinearMap g = f.radius() == report.radius ? f : crop(f, report.radius);
  const int W = 2 * report.radius + 1;
  SpanBasis span(8 * W * W);
  for (const auto& member : report.basis)
    span.insert(detail::vectorize_bilinear(member, report.degree_shift));
  return span.contains(detail::vectorize_bilinear(g, report.degree_shift));
}

// ---------------------------------------------------------------------------
// Classification verdict: solve every shift in a range and compare against
// the predicted family table, both in dimension and in span.
// ---------------------------------------------------------------------------

struct ClassificationRow {
  int k = 0;
  int raw_dimension = 0;
  int certified_dimension = 0;
  int expected_dimension = 0;
  std::vector<std::string> family_labels;
  Rational family_residual;
  bool pass = false;
};

struct ClassificationVerdict {
  Params params;
  int radius = 0;
  int interior_margin = 0;
  int k_min = 0, k_max = 0;
  bool pass = false;
  std::vector<ClassificationRow> rows;
};

inline ClassificationVerdict classify(const Params& p, int k_min, int k_max, int R,
                                      int interior_margin) {
  if (k_min > k_max) throw validation_error("empty shift range");
  ClassificationVerdict verdict;
  verdict.params = p;
  verdict.radius = R;
  verdict.interior_margin = interior_margin;
  verdict.k_min = k_min;
  verdict.k_max = k_max;
  verdict.pass = true;
  for (int k = k_min; k <= k_max; ++k) {
    BiderSolveReport rep = solve_biderivations(p, k, R, interior_margin);
    ClassificationRow row;
    row.k = k;
    row.raw_dimension = rep.raw_dimension;
    row.certified_dimension = rep.certified_dimension;
    row.expected_dimension = predicted_bider_dimension(p, k);
    row.family_labels = rep.family_labels;
    row.family_residual = rep.family_residual;
    row.pass = row.certified_dimension == row.expected_dimension &&
               row.family_residual.is_zero();
    verdict.pass = verdict.pass && row.pass;
    verdict.rows.push_back(std::move(row));
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// The delta system: (i-m) k_i^{(n)} = (2n-m-i) h_{m-n+i}^{(m)} for all indices
// in range. Its certified kernel must be one-dimensional, generated by
// k_i^{(m)} = h_i^{(m)} = delta_{m,i}.
// ---------------------------------------------------------------------------

struct DeltaSystemReport {
  int radius = 0;
  int interior_radius = 0;
  int raw_dimension = 0;
  int certified_dimension = 0;
  std::vector<std::vector<Scalar>> basis;  // raw kernel, columns by delta_col
  Rational generator_residual;             // 0 iff certified span == span{delta}
  bool generator_certified = false;
};

namespace detail {

/// which = 0 for k_i^{(n)}, 1 for h_i^{(n)}; column order (which, i, n).
inline int delta_col(int R, int which, int i, int n) {
  const int W = 2 * R + 1;
  return (which * W + (i + R)) * W + (n + R);
}

}  // namespace detail

inline DeltaSystemReport delta_system_solve(int R, int interior_margin) {
  if (interior_margin < 0) throw validation_error("interior margin must be >= 0");
  if (R < interior_margin + 2)
    throw window_error("radius must be at least interior_margin + 2");
  const int W = 2 * R + 1;
  LinearSystem sys(2 * W * W);
  for (int m = -R; m <= R; ++m)
    for (int n = -R; n <= R; ++n)
      for (int i = -R; i <= R; ++i) {
        if (std::abs(m - n + i) > R) continue;
        SparseRow row;
        if (i != m) row.terms.emplace_back(detail::delta_col(R, 0, i, n), Scalar(i - m));
        if (2 * n - m - i != 0)
          row.terms.emplace_back(detail::delta_col(R, 1, m - n + i, m), -Scalar(2 * n - m - i));
        sys.add_row(std::move(row));
      }
  if (sys.row_count() == 0) throw window_error("window too small: no constraints generated");
  NullspaceBasis null = std::move(sys).solve();

  DeltaSystemReport report;
  report.radius = R;
  report.interior_radius = R - interior_margin;
  report.raw_dimension = null.raw_dimension();

  const int Ri = report.interior_radius;
  std::vector<int> interior_cols;
  for (int which : {0, 1})
    for (int i = -Ri; i <= Ri; ++i)
      for (int n = -Ri; n <= Ri; ++n) interior_cols.push_back(detail::delta_col(R, which, i, n));
  auto restrict_to_interior = [&](const std::vector<Scalar>& vec) {
    std::vector<Scalar> out;
    out.reserve(interior_cols.size());
    for (int c : interior_cols) out.push_back(vec[c]);
    return out;
  };

  SpanBasis solved(interior_cols.size());
  for (const auto& vec : null.vectors) solved.insert(restrict_to_interior(vec));
  report.certified_dimension = solved.rank();

  std::vector<Scalar> generator(2 * W * W, Scalar(0));
  for (int d = -R; d <= R; ++d) {
    generator[detail::delta_col(R, 0, d, d)] = Scalar(1);
    generator[detail::delta_col(R, 1, d, d)] = Scalar(1);
  }
  std::vector<Scalar> gen_interior = restrict_to_interior(generator);
  report.generator_residual = solved.remainder_norm_sq(gen_interior);
  report.generator_certified =
      report.certified_dimension == 1 && report.generator_residual.is_zero();
  report.basis = std::move(null.vectors);
  return report;
}

}  // namespace wab
