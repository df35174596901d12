#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cantorwave/laurent.hpp"
#include "cantorwave/transfer.hpp"

namespace cantorwave {

/// Coefficient sequence (a_k), |k| <= truncation, with rational entries.
/// build_sequence produces the antisymmetric, even-supported l^2 fixed point
/// of the Cantor transfer operator; other sequences may be assembled by hand
/// for probing.
class CantorFixedSequence {
 public:
  using Index = std::int64_t;

  explicit CantorFixedSequence(Index truncation);

  Index truncation() const { return truncation_; }
  const std::map<Index, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(Index k) const;
  /// Throws std::out_of_range for |k| > truncation.
  void set(Index k, Rational v);

  LaurentPoly to_laurent() const;
  /// Restriction to |k| <= bound.
  CantorFixedSequence truncated(Index bound) const;

  bool is_antisymmetric() const;
  bool has_even_support() const;

 private:
  Index truncation_;
  std::map<Index, Rational> coeffs_;
};

/// a_n = 2^{-k} for even n in [3^k + 1, 3^{k+1} - 1], odd extension to n < 0,
/// zero elsewhere; truncated to |n| <= K. Throws for K < 2.
CantorFixedSequence build_sequence(std::int64_t K);

/// r_k = a_k - (a_{3k-2}/2 + a_{3k} + a_{3k+2}/2).
Rational residual_at(const CantorFixedSequence& seq, std::int64_t k);

struct ResidualReport {
  Rational max_abs_residual;
  std::int64_t checked_range = -1;           // |k| <= checked_range
  std::optional<std::int64_t> worst_index;  // argmax, smallest |k| first; empty when all zero
};

/// Residual scan over the truncation-safe range |k| <= floor((K-2)/3).
ResidualReport fixed_point_residual(const CantorFixedSequence& seq);

/// Largest n with 2*3^n <= K/3, or -1 if none.
int max_growth_steps(std::int64_t K);

/// S_n = 2^{-n} sum_k (b^(n)_k)^2 with b^(0) = a and
/// b^(n+1)_k = b^(n)_k + b^(n)_{k - 2*3^n}, for n = 0..n_max.
/// Throws std::invalid_argument when 2*3^{n_max} > K/3.
std::vector<std::pair<int, Rational>> energy_growth(const CantorFixedSequence& seq, int n_max);

/// b^(n)_k >= b^(n)_{k+2} >= 0 for even k in [3^n, K - 2*3^n].
bool monotone_tail_check(const CantorFixedSequence& seq, int n);

/// sum_{|k| <= bound} |a_k| and sum_{|k| <= bound} a_k^2.
Rational partial_l1(const CantorFixedSequence& seq, std::int64_t bound);
Rational partial_l2(const CantorFixedSequence& seq, std::int64_t bound);

struct L1ProbeReport {
  ConvergenceReport convergence;
  bool is_fixed = false;        // R p == p exactly
  bool is_nonconstant = false;  // p has a nonzero coefficient off index 0
  std::vector<std::int64_t> violated;  // k with (R p)_k != p_k, ordered by |k| then k
  /// A finitely supported nonconstant exact fixed point would contradict the
  /// uniqueness of continuous fixed points. Never expected to be true.
  bool contradiction() const { return is_fixed && is_nonconstant; }
};

/// Runs the Cantor transfer iteration on a finitely supported p and records
/// whether p is an exact, nonconstant fixed point.
L1ProbeReport l1_exclusion_probe(const LaurentPoly& p, int iterations = kDefaultMaxIter);

}  // namespace cantorwave
