#pragma once

#include <random>

#include "wab/algebra.hpp"

namespace wabtest {
using namespace wab;

/// Deterministic generator for property-style tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 0x5eed) : rng_(seed) {}

  int int_in(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int max_abs = 9, int max_den = 9) {
    return Rational(int_in(-max_abs, max_abs), int_in(1, max_den));
  }

  Scalar scalar(int max_abs = 9, int max_den = 9) {
    return Scalar(rational(max_abs, max_den), rational(max_abs, max_den));
  }

  Scalar nonzero_scalar() {
    for (;;) {
      Scalar s = scalar();
      if (!s.is_zero()) return s;
    }
  }

  Element element(int max_terms = 4, int max_degree = 8) {
    Element e;
    int n = int_in(0, max_terms);
    for (int i = 0; i < n; ++i) {
      Tag t = int_in(0, 1) == 0 ? Tag::L : Tag::I;
      e.add_term(BasisVector{t, int_in(-max_degree, max_degree)}, scalar());
    }
    return e;
  }

  BasisVector basis_vector(int max_degree = 8) {
    return BasisVector{int_in(0, 1) == 0 ? Tag::L : Tag::I, int_in(-max_degree, max_degree)};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace wabtest
