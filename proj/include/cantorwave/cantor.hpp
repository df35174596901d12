#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cantorwave/laurent.hpp"

namespace cantorwave {

/// Triadic cell C_{n,k} = (C + k) / 3^n, C the middle-third Cantor set.
/// Its Hausdorff measure (dimension log_3 2) is 2^{-n}.
struct Cell {
  int level = 0;
  std::int64_t offset = 0;

  Rational measure() const { return pow2(-level); }
  /// C_{n,k} = C_{n+1,3k} u C_{n+1,3k+2}.
  std::pair<Cell, Cell> children() const;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Simple function 2^{-half_scale/2} * sum_k c_k chi_{C_{level,k}} on the
/// fractal set R. Negative levels are refined away on construction and
/// half_scale is reduced to {0, 1} by folding powers of two into the
/// coefficients. Zero coefficients are never stored.
class CellFunction {
 public:
  using Offset = std::int64_t;
  using Map = std::map<Offset, Rational>;

  static constexpr int kMaxLevel = 36;

  CellFunction() = default;
  CellFunction(int level, Map coeffs, int half_scale = 0);

  static CellFunction cell(const Cell& c, Rational coefficient = Rational(1));
  /// chi_C, the scaling function.
  static CellFunction scaling_function() { return cell({0, 0}); }

  int level() const { return level_; }
  int half_scale() const { return half_scale_; }
  const Map& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// ||f||^2, exact.
  Rational squared_norm() const;

  /// Same function written at the coarsest level that represents it exactly.
  CellFunction coarsened() const;

  CellFunction scaled(const Rational& c) const;

  friend bool operator==(const CellFunction& a, const CellFunction& b);

 private:
  int level_ = 0;
  Map coeffs_;
  int half_scale_ = 0;
};

/// Rewrites f at target_level >= f.level(). Throws std::invalid_argument otherwise.
CellFunction refine(const CellFunction& f, int target_level);

/// Sum and difference; the half_scale parities must agree (else the result
/// has no representation in this model and std::domain_error is thrown).
CellFunction operator+(const CellFunction& f, const CellFunction& g);
CellFunction operator-(const CellFunction& f, const CellFunction& g);

/// U f(x) = f(x/3)/sqrt(2).
CellFunction dilate(const CellFunction& f);
/// U^{-1} f(x) = sqrt(2) f(3x).
CellFunction dilate_inverse(const CellFunction& f);
/// T^m f(x) = f(x - m).
CellFunction translate(const CellFunction& f, std::int64_t m);
/// pi(p) f = sum_k p_k T^k f. p must have real coefficients.
CellFunction pi_apply(const LaurentPoly& p, const CellFunction& f);

/// Cascade operator M = U^{-1} pi(m0) for m0 = (1+z^2)/sqrt(2):
/// (M f)(x) = f(3x) + f(3x - 2).
CellFunction cascade(const CellFunction& f);
/// The same operator composed literally from pi_apply and dilate_inverse.
CellFunction cascade_via_operators(const CellFunction& f);

/// <f, g> in L^2(R, H^s). Throws std::domain_error when the combined sqrt(2)
/// scale is odd, since the value is then irrational.
Rational inner(const CellFunction& f, const CellFunction& g);

/// Correlation polynomial p with p_m = <T^{-m} f, g>.
LaurentPoly correlation(const CellFunction& f, const CellFunction& g);

/// Steps the spatial cascade may take; M^n doubles the cell count per step.
inline constexpr int kMaxSpatialCascadeSteps = 20;

/// ||M^{n+1} f - M^n f||^2 for n = 0..n_max, computed on cells.
std::vector<std::pair<int, Rational>> cascade_divergence(const CellFunction& f, int n_max);

/// The same series computed as int R^n h0 dmu with h0 = correlation(Mf - f, Mf - f).
std::vector<std::pair<int, Rational>> cascade_divergence_transfer(const CellFunction& f, int n_max);

/// h0 = correlation(Mf - f, Mf - f).
LaurentPoly cascade_defect_correlation(const CellFunction& f);

inline constexpr int kDefaultWindowLo = -2;
inline constexpr int kDefaultWindowHi = 3;

/// Basis of the exact solutions of M f = f among cell functions at `level`
/// supported in [window_lo, window_hi), i.e. offsets in
/// [window_lo * 3^level, window_hi * 3^level).
std::vector<CellFunction> refinement_nullspace(int level, std::int64_t window_lo,
                                               std::int64_t window_hi);

/// Orthogonal projection onto V_n = closed span of U^{-n} T^k chi_C.
/// For n below f's level this averages f over the level-n cells.
CellFunction mra_project(const CellFunction& f, int n);

struct DetailGenerator {
  CellFunction function;
  Rational squared_norm;
};

/// Orthogonal generators of W_0 = V_1 - V_0 on the integer translates
/// [0, 3^{level_window - 1}), two per translate.
std::vector<DetailGenerator> detail_basis(int level_window);

}  // namespace cantorwave
