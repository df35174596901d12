#include "cantorwave/transfer.hpp"

#include <stdexcept>

namespace cantorwave {

namespace {

bool compute_qmf(const LaurentPoly& weight, std::int64_t n) {
  if (!(weight.coeff(0) == RatC(1))) return false;
  for (const auto& [k, c] : weight.coeffs()) {
    if (k != 0 && k % n == 0) return false;
  }
  return true;
}

}  // namespace

Filter::Filter(LaurentPoly numerator, int half_scale, std::int64_t branch_count)
    : numerator_(std::move(numerator)), half_scale_(half_scale), branch_count_(branch_count) {
  if (numerator_.is_zero()) throw std::invalid_argument("Filter: numerator must be nonzero");
  if (half_scale_ < 0) throw std::invalid_argument("Filter: half_scale must be >= 0");
  if (branch_count_ < 2) throw std::invalid_argument("Filter: branch_count must be >= 2");
  weight_ = autocorrelation(numerator_).scaled(RatC(pow2(-half_scale_)));
  qmf_valid_ = compute_qmf(weight_, branch_count_);
}

Filter Filter::cantor() { return Filter(LaurentPoly{{0, 1}, {2, 1}}, 1, 3); }

Filter Filter::constant_one(std::int64_t branch_count) {
  return Filter(LaurentPoly::constant(1), 0, branch_count);
}

Filter Filter::haar() { return Filter(LaurentPoly{{0, 1}, {1, 1}}, 1, 2); }

bool Filter::is_constant_one() const {
  return half_scale_ == 0 && numerator_ == LaurentPoly::constant(1);
}

LaurentPoly weight_poly(const Filter& filter) { return filter.weight(); }

bool qmf_check(const Filter& filter) { return filter.qmf_valid(); }

LaurentPoly apply(const Filter& filter, const LaurentPoly& f) {
  const auto n = filter.branch_count();
  LaurentPoly out;
  for (const auto& [i, fi] : f.coeffs()) {
    for (const auto& [j, cj] : filter.weight().coeffs()) {
      const auto m = i + j;
      if (m % n != 0) continue;
      out.accumulate(m / n, cj * fi);
    }
  }
  return out;
}

LaurentPoly apply_power(const Filter& filter, LaurentPoly f, int n) {
  for (int i = 0; i < n; ++i) f = apply(filter, f);
  return f;
}

ConvergenceReport iterate_to_invariant(const Filter& filter, const LaurentPoly& f, int max_iter,
                                       const Rational& tol) {
  if (!filter.qmf_valid()) throw std::invalid_argument("iterate_to_invariant: filter is not a QMF");
  if (max_iter < 0) throw std::invalid_argument("iterate_to_invariant: max_iter must be >= 0");
  ConvergenceReport report;
  LaurentPoly cur = f;
  for (int n = 0;; ++n) {
    report.iterates.push_back({n, cur.coeff(0), cur.nonconstant_l1_mass()});
    if (report.iterates.back().nonconstant_l1_mass <= tol) {
      report.limit = cur.coeff(0);
      break;
    }
    if (n == max_iter) break;
    cur = apply(filter, cur);
    report.iterations_used = n + 1;
  }
  report.final_iterate = std::move(cur);
  return report;
}

Filter composite_filter(const Filter& filter, int n) {
  if (n < 0) throw std::invalid_argument("composite_filter: n must be >= 0");
  if (n == 0) return Filter::constant_one(filter.branch_count());
  LaurentPoly num = LaurentPoly::constant(1);
  std::int64_t power = 1;
  for (int j = 0; j < n; ++j) {
    num = mul(num, filter.numerator().substitute_power(power));
    if (j + 1 < n && __builtin_mul_overflow(power, filter.branch_count(), &power)) {
      throw std::overflow_error("composite_filter: N^n overflows");
    }
  }
  return Filter(std::move(num), n * filter.half_scale(), checked_pow(filter.branch_count(), n));
}

Rational weighted_energy(const Filter& filter, const LaurentPoly& h, int n) {
  if (n < 0) throw std::invalid_argument("weighted_energy: n must be >= 0");
  // Multiply factor by factor: each m0(z^{N^j}) has the (small) support of m0.
  LaurentPoly b = h;
  std::int64_t power = 1;
  for (int j = 0; j < n && !b.is_zero(); ++j) {
    b = mul(b, filter.numerator().substitute_power(power));
    if (j + 1 < n && __builtin_mul_overflow(power, filter.branch_count(), &power)) {
      throw std::overflow_error("weighted_energy: N^n overflows");
    }
  }
  Rational sum(0);
  for (const auto& [k, c] : b.coeffs()) sum += c.norm2();
  return Rational(sum * pow2(-static_cast<long>(n) * filter.half_scale()));
}

}  // namespace cantorwave
