#pragma once

// Test-only oracles and generators. Nothing here calls into the code path it
// is used to check: the quadrature oracle evaluates filters and polynomials
// from their raw coefficients, and the dense eliminator is independent of
// the sparse nullspace solver.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "cantorwave/cantor.hpp"
#include "cantorwave/laurent.hpp"
#include "cantorwave/transfer.hpp"

namespace cantorwave::testing {

inline std::complex<double> naive_eval(const LaurentPoly& p, std::complex<double> z) {
  std::complex<double> s{0, 0};
  for (const auto& [k, c] : p.coeffs()) {
    s += std::complex<double>(c.re.get_d(), c.im.get_d()) * std::pow(z, static_cast<int>(k));
  }
  return s;
}

/// (R f)_k by quadrature: average (1/N) sum_{w^N = z} |m0(w)|^2 f(w) z^{-k}
/// over `grid` equispaced points z. Exact for trigonometric polynomials of
/// degree below the grid size.
inline std::complex<double> quadrature_transfer_coeff(const Filter& filter, const LaurentPoly& f,
                                                      std::int64_t k, int grid = 256) {
  const double scale = std::pow(2.0, -filter.half_scale());
  const auto n = filter.branch_count();
  std::complex<double> acc{0, 0};
  for (int t = 0; t < grid; ++t) {
    const double phi = 2.0 * std::numbers::pi * t / grid;
    const std::complex<double> z = std::polar(1.0, phi);
    std::complex<double> rf{0, 0};
    for (std::int64_t j = 0; j < n; ++j) {
      const std::complex<double> w = std::polar(1.0, (phi + 2.0 * std::numbers::pi * j) / n);
      rf += std::norm(naive_eval(filter.numerator(), w)) * scale * naive_eval(f, w);
    }
    rf /= static_cast<double>(n);
    acc += rf * std::pow(z, -static_cast<int>(k));
  }
  return acc / static_cast<double>(grid);
}

/// k-th Fourier coefficient of |m0|^2 by DFT.
inline std::complex<double> dft_weight_coeff(const Filter& filter, std::int64_t k, int grid = 256) {
  const double scale = std::pow(2.0, -filter.half_scale());
  std::complex<double> acc{0, 0};
  for (int t = 0; t < grid; ++t) {
    const std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi * t / grid);
    acc += std::norm(naive_eval(filter.numerator(), z)) * scale * std::pow(z, -static_cast<int>(k));
  }
  return acc / static_cast<double>(grid);
}

/// Rank of a dense rational matrix by textbook Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
    }
    ++rank;
  }
  return rank;
}

inline Rational small_rational(std::mt19937_64& rng, int span = 4, int max_den = 4) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline LaurentPoly random_poly(std::mt19937_64& rng, int max_terms = 5, int degree = 6, bool complex = true) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> idx(-degree, degree);
  LaurentPoly p;
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    p.accumulate(idx(rng), RatC(small_rational(rng), complex ? small_rational(rng) : Rational(0)));
  }
  return p;
}

inline CellFunction random_cell_function(std::mt19937_64& rng, int max_level = 4, int max_cells = 6,
                                         int offset_units = 3) {
  std::uniform_int_distribution<int> lev(0, max_level);
  const int level = lev(rng);
  const std::int64_t span = offset_units * checked_pow(3, level);
  std::uniform_int_distribution<std::int64_t> off(-span, span);
  std::uniform_int_distribution<int> cells(1, max_cells);
  CellFunction::Map m;
  const int count = cells(rng);
  for (int i = 0; i < count; ++i) m[off(rng)] += small_rational(rng);
  return CellFunction(level, std::move(m));
}

}  // namespace cantorwave::testing
