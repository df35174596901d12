#pragma once

#include <optional>
#include <vector>

#include "cantorwave/laurent.hpp"

namespace cantorwave {

/// Low-pass filter m0 = numerator / sqrt(2)^half_scale for the map z -> z^N.
/// The sqrt(2) factors live in half_scale so the numerator stays rational.
class Filter {
 public:
  /// Throws std::invalid_argument for a zero numerator, negative
  /// half_scale or branch_count < 2.
  Filter(LaurentPoly numerator, int half_scale, std::int64_t branch_count);

  /// m0(z) = (1 + z^2)/sqrt(2), N = 3.
  static Filter cantor();
  /// m0 = 1.
  static Filter constant_one(std::int64_t branch_count);
  /// m0(z) = (1 + z)/sqrt(2), N = 2.
  static Filter haar();

  const LaurentPoly& numerator() const { return numerator_; }
  int half_scale() const { return half_scale_; }
  std::int64_t branch_count() const { return branch_count_; }
  bool qmf_valid() const { return qmf_valid_; }
  bool is_constant_one() const;

  /// |m0|^2 as an exact polynomial.
  const LaurentPoly& weight() const { return weight_; }

 private:
  LaurentPoly numerator_;
  int half_scale_;
  std::int64_t branch_count_;
  LaurentPoly weight_;
  bool qmf_valid_;
};

LaurentPoly weight_poly(const Filter& filter);

/// True iff c = |m0|^2 has c_{Nk} = delta_{k0}, i.e. R 1 = 1.
bool qmf_check(const Filter& filter);

/// Transfer operator on Fourier coefficients: (R f)_k = sum_j c_j f_{Nk-j}.
LaurentPoly apply(const Filter& filter, const LaurentPoly& f);

/// R^n f.
LaurentPoly apply_power(const Filter& filter, LaurentPoly f, int n);

struct IterateSummary {
  int n;
  RatC constant_part;
  Rational nonconstant_l1_mass;
};

struct ConvergenceReport {
  std::vector<IterateSummary> iterates;  // entry n describes R^n f, starting at n = 0
  std::optional<RatC> limit;             // set only when converged
  int iterations_used = 0;
  LaurentPoly final_iterate;

  bool converged() const { return limit.has_value(); }
  /// Error bound on the limit: the mass of the last iterate.
  const Rational& error_bound() const { return iterates.back().nonconstant_l1_mass; }
};

inline constexpr int kDefaultMaxIter = 200;
inline const Rational kDefaultTolerance{1, 1000000000};

/// Iterates R until the nonconstant l1 mass of R^n f is <= tol or max_iter
/// applications have been made. |constant_part(n) - nu(f)| <= mass(n) for
/// every n. Requires a QMF filter.
ConvergenceReport iterate_to_invariant(const Filter& filter, const LaurentPoly& f,
                                       int max_iter = kDefaultMaxIter,
                                       const Rational& tol = kDefaultTolerance);

/// m0^(n)(z) = prod_{j<n} m0(z^{N^j}); a filter for z -> z^{N^n}.
/// n = 0 yields m0 = 1 with the original branch count.
Filter composite_filter(const Filter& filter, int n);

/// int |m0^(n)|^2 |h|^2 dmu = 2^{-n s} sum_k |b_k|^2, b = numerator(m0^(n)) * h.
Rational weighted_energy(const Filter& filter, const LaurentPoly& h, int n);

}  // namespace cantorwave
