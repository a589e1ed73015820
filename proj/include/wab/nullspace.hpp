#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <vector>

#include "wab/errors.hpp"
#include "wab/scalar.hpp"

namespace wab {

/// One sparse constraint row over Q(i): (column, coefficient) sorted by column.
struct SparseRow {
  std::vector<std::pair<std::int32_t, Scalar>> terms;
};

namespace detail {

inline void canonicalize_row(SparseRow& r) {
  auto& t = r.terms;
  std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    std::int32_t col = t[i].first;
    Scalar sum = t[i].second;
    for (++i; i < t.size() && t[i].first == col; ++i) sum += t[i].second;
    if (!sum.is_zero()) t[out++] = {col, sum};
  }
  t.resize(out);
}

/// Nearest integer to n/d (d != 0), ties toward +infinity.
inline BigInt round_div(const BigInt& n, const BigInt& d) {
  BigInt nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  BigInt num = 2 * nn + dd, den = 2 * dd;
  if (num >= 0) return BigInt(num / den);
  return BigInt((num - den + 1) / den);
}

struct GaussInt {
  BigInt re, im;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

/// Euclid over Z[i] with nearest-rounding division; the result is a gcd up
/// to a unit, which is all content removal needs.
inline GaussInt gauss_gcd(GaussInt x, GaussInt y) {
  while (!y.is_zero()) {
    BigInt n = y.re * y.re + y.im * y.im;
    BigInt qr = round_div(x.re * y.re + x.im * y.im, n);
    BigInt qi = round_div(x.im * y.re - x.re * y.im, n);
    GaussInt r{x.re - (qr * y.re - qi * y.im), x.im - (qr * y.im + qi * y.re)};
    x = y;
    y = r;
  }
  return x;
}

/// Scales the row by a nonzero scalar so that every entry becomes a Gaussian
/// integer with Z[i]-content a unit. Keeps entry growth bounded during
/// elimination (fraction-free flavour); rows with entries of nontrivial
/// Gaussian content would otherwise blow up multiplicatively.
inline void normalize_content(SparseRow& r) {
  using boost::multiprecision::gcd;
  using boost::multiprecision::lcm;
  if (r.terms.empty()) return;
  BigInt den(1);
  bool all_real = true;
  for (const auto& [c, v] : r.terms) {
    den = lcm(den, denominator(v.re));
    all_real = all_real && v.im.is_zero();
    if (!all_real) den = lcm(den, denominator(v.im));
  }
  if (all_real) {
    BigInt g(0);
    for (const auto& [c, v] : r.terms) {
      g = gcd(g, numerator(v.re) * (den / denominator(v.re)));
      if (g == 1 && den == 1) return;
    }
    Scalar f{Rational(den, g)};
    for (auto& [c, v] : r.terms) v *= f;
    return;
  }
  GaussInt g{BigInt(0), BigInt(0)};
  for (const auto& [c, v] : r.terms) {
    GaussInt entry{numerator(v.re) * (den / denominator(v.re)),
                   numerator(v.im) * (den / denominator(v.im))};
    g = gauss_gcd(g, entry);
  }
  Scalar f = Scalar(Rational(den)) * inv(Scalar(Rational(g.re), Rational(g.im)));
  for (auto& [c, v] : r.terms) v *= f;
}

/// r <- lead(p)*r - lead(r)*p where both leading columns agree; the leading
/// column cancels exactly and is dropped. Result is content-normalized.
inline SparseRow eliminate_leading(const SparseRow& r, const SparseRow& p) {
  const Scalar& rl = r.terms.front().second;
  const Scalar& pl = p.terms.front().second;
  SparseRow out;
  out.terms.reserve(r.terms.size() + p.terms.size() - 2);
  std::size_t i = 1, j = 1;
  while (i < r.terms.size() || j < p.terms.size()) {
    if (j == p.terms.size() ||
        (i < r.terms.size() && r.terms[i].first < p.terms[j].first)) {
      out.terms.emplace_back(r.terms[i].first, pl * r.terms[i].second);
      ++i;
    } else if (i == r.terms.size() || p.terms[j].first < r.terms[i].first) {
      out.terms.emplace_back(p.terms[j].first, -(rl * p.terms[j].second));
      ++j;
    } else {
      Scalar v = pl * r.terms[i].second - rl * p.terms[j].second;
      if (!v.is_zero()) out.terms.emplace_back(r.terms[i].first, v);
      ++i, ++j;
    }
  }
  normalize_content(out);
  return out;
}

}  // namespace detail

/// Canonical kernel basis of an exact sparse linear system. Vectors are the
/// reduced-row-echelon free-column parametrization: one vector per non-pivot
/// column in ascending column order, so the basis is deterministic.
struct NullspaceBasis {
  int ncols = 0;
  int rank = 0;
  std::vector<std::vector<Scalar>> vectors;

  int raw_dimension() const { return static_cast<int>(vectors.size()); }
};

class LinearSystem {
 public:
  explicit LinearSystem(int ncols) : ncols_(ncols) {}

  int ncols() const { return ncols_; }
  std::size_t row_count() const { return rows_.size(); }

  void add_row(SparseRow row) {
    detail::canonicalize_row(row);
    if (row.terms.empty()) return;
    detail::normalize_content(row);
    rows_.push_back(std::move(row));
  }

  /// Destructive exact solve. Pivot columns are chosen left to right (so the
  /// pivot set matches RREF); the pivot row per column is the sparsest
  /// candidate. Singleton rows are propagated first — they zero a column
  /// outright and can only shrink other rows.
  NullspaceBasis solve() && {
    const int n = ncols_;
    std::vector<char> zeroed(n, 0), is_pivot(n, 0);
    std::vector<char> alive(rows_.size(), 1);

    // Singleton cascade.
    {
      std::vector<std::vector<std::int32_t>> col_rows(n);
      for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r].terms) col_rows[c].push_back(static_cast<std::int32_t>(r));
      std::deque<std::int32_t> queue;
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (rows_[r].terms.size() == 1) queue.push_back(static_cast<std::int32_t>(r));
      while (!queue.empty()) {
        std::int32_t r = queue.front();
        queue.pop_front();
        if (!alive[r] || rows_[r].terms.size() != 1) continue;
        std::int32_t c = rows_[r].terms.front().first;
        alive[r] = 0;
        if (zeroed[c]) continue;
        zeroed[c] = is_pivot[c] = 1;
        for (std::int32_t j : col_rows[c]) {
          if (!alive[j]) continue;
          auto& t = rows_[j].terms;
          auto it = std::lower_bound(t.begin(), t.end(), c,
                                     [](const auto& a, std::int32_t k) { return a.first < k; });
          if (it == t.end() || it->first != c) continue;
          t.erase(it);
          if (t.empty())
            alive[j] = 0;
          else if (t.size() == 1)
            queue.push_back(j);
        }
      }
    }

    // Leading-column bucket elimination.
    std::vector<std::vector<std::int32_t>> bucket(n);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (alive[r]) bucket[rows_[r].terms.front().first].push_back(static_cast<std::int32_t>(r));

    std::vector<std::int32_t> echelon;  // row ids in ascending pivot-column order
    echelon.reserve(n);
    for (int c = 0; c < n; ++c) {
      auto& cand = bucket[c];
      if (cand.empty()) continue;
      std::int32_t pivot = cand.front();
      for (std::int32_t r : cand)
        if (rows_[r].terms.size() < rows_[pivot].terms.size() ||
            (rows_[r].terms.size() == rows_[pivot].terms.size() && r < pivot))
          pivot = r;
      for (std::int32_t r : cand) {
        if (r == pivot) continue;
        rows_[r] = detail::eliminate_leading(rows_[r], rows_[pivot]);
        if (rows_[r].terms.empty())
          alive[r] = 0;
        else
          bucket[rows_[r].terms.front().first].push_back(r);
      }
      cand.clear();
      is_pivot[c] = 1;
      echelon.push_back(pivot);
    }

    // Back-substitute one kernel vector per free column.
    NullspaceBasis out;
    out.ncols = n;
    for (int c = 0; c < n; ++c) out.rank += is_pivot[c];
    for (int f = 0; f < n; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Scalar> x(n, Scalar(0));
      x[f] = Scalar(1);
      for (auto it = echelon.rbegin(); it != echelon.rend(); ++it) {
        const auto& t = rows_[*it].terms;
        Scalar s(0);
        for (std::size_t i = 1; i < t.size(); ++i) {
          if (!x[t[i].first].is_zero()) s += t[i].second * x[t[i].first];
        }
        if (!s.is_zero()) x[t.front().first] = -s / t.front().second;
      }
      out.vectors.push_back(std::move(x));
    }
    return out;
  }

 private:
  int ncols_;
  std::vector<SparseRow> rows_;
};

/// Row space kept in reduced row-echelon form; used for interior-certified
/// ranks, span membership, and exact span comparison.
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t ncols) : ncols_(ncols) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }

  /// Reduces v in place modulo the span.
  void reduce(std::vector<Scalar>& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar c = v[pivots_[i]];
      if (c.is_zero()) continue;
      const auto& row = rows_[i];
      for (std::size_t j = pivots_[i]; j < ncols_; ++j)
        if (!row[j].is_zero()) v[j] -= c * row[j];
    }
  }

  /// Inserts v if independent; returns whether the rank grew.
  bool insert(std::vector<Scalar> v) {
    reduce(v);
    std::size_t lead = ncols_;
    for (std::size_t j = 0; j < ncols_; ++j)
      if (!v[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead == ncols_) return false;
    Scalar piv_inv = inv(v[lead]);
    for (std::size_t j = lead; j < ncols_; ++j)
      if (!v[j].is_zero()) v[j] *= piv_inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar c = rows_[i][lead];
      if (c.is_zero()) continue;
      for (std::size_t j = lead; j < ncols_; ++j)
        if (!v[j].is_zero()) rows_[i][j] -= c * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, lead);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
    return true;
  }

  /// Exact squared norm of the remainder of v modulo the span; zero iff v
  /// lies in the span.
  Rational remainder_norm_sq(std::vector<Scalar> v) const {
    reduce(v);
    Rational out(0);
    for (const Scalar& c : v) out += norm_sq(c);
    return out;
  }

  bool contains(std::vector<Scalar> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const Scalar& c) { return c.is_zero(); });
  }

 private:
  std::size_t ncols_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace wab
