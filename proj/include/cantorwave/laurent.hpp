#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>

#include "cantorwave/rational.hpp"

namespace cantorwave {

/// Finitely supported Laurent polynomial sum_k c_k z^k with exact rational
/// complex coefficients. Zero coefficients are never stored, so two
/// polynomials are equal iff their coefficient maps are equal.
class LaurentPoly {
 public:
  using Index = std::int64_t;
  using Map = std::map<Index, RatC>;

  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<const Index, RatC>> terms);
  explicit LaurentPoly(Map terms);

  static LaurentPoly constant(RatC c);
  static LaurentPoly monomial(Index k, RatC c = RatC(1));

  const Map& coeffs() const { return coeffs_; }
  RatC coeff(Index k) const;
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  bool has_real_coefficients() const;
  std::size_t support_size() const { return coeffs_.size(); }
  Index min_degree() const;
  Index max_degree() const;

  /// Adds c to the coefficient of z^k, dropping it if it becomes zero.
  void accumulate(Index k, const RatC& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);

  /// conj(p)(z) = sum conj(p_k) z^{-k}; the pointwise conjugate on the circle.
  LaurentPoly conj() const;
  LaurentPoly scaled(const RatC& c) const;
  /// p(z^m), for m >= 1.
  LaurentPoly substitute_power(Index m) const;

  /// sum_{k != 0} (|Re p_k| + |Im p_k|); dominates sup_z |p(z) - p_0|.
  Rational nonconstant_l1_mass() const;

  std::string to_string() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  Map coeffs_;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly sub(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);

/// p * conj(p): Hermitian, nonnegative on the circle.
LaurentPoly autocorrelation(const LaurentPoly& p);

/// Integral against normalized Haar measure on the circle: the constant term.
RatC haar_integral(const LaurentPoly& p);

/// <p, q> = sum_k p_k conj(q_k).
RatC inner_product(const LaurentPoly& p, const LaurentPoly& q);

/// sum_k p_k exp(2 pi i k theta). The phase k*theta is reduced mod 1 exactly
/// before the exponential, so each term carries only O(eps) rounding.
std::complex<double> evaluate(const LaurentPoly& p, const Rational& theta);

inline LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
inline LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return mul(a, b); }

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

/// Parses expressions like "1 + 1/2*z^2 - z^-3 + (1/3)i*z". Terms are
/// optionally signed products of a rational or imaginary coefficient and a
/// power of z. Throws std::invalid_argument on malformed input.
LaurentPoly parse_laurent(const std::string& text);

}  // namespace cantorwave
