#include "cantorwave/fixedpoint.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace cantorwave {

namespace {

using Index = CantorFixedSequence::Index;

// Dense integer image of a sequence: values[k + offset] = a_k * denominator.
struct ScaledSequence {
  Integer denominator{1};
  Index offset = 0;
  std::vector<Integer> values;

  const Integer& at(Index k) const { return values[static_cast<std::size_t>(k + offset)]; }
};

ScaledSequence scaled_image(const CantorFixedSequence& seq, Index right_pad) {
  ScaledSequence s;
  for (const auto& [k, v] : seq.coeffs()) mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(), v.get_den_mpz_t());
  const Index K = seq.truncation();
  s.offset = K;
  s.values.assign(static_cast<std::size_t>(2 * K + 1 + right_pad), Integer(0));
  for (const auto& [k, v] : seq.coeffs()) {
    s.values[static_cast<std::size_t>(k + K)] = v.get_num() * (s.denominator / v.get_den());
  }
  return s;
}

// One step of b_k += b_{k - shift}; descending so the right side still holds b^(n).
void growth_step(std::vector<Integer>& b, std::size_t shift) {
  for (std::size_t i = b.size(); i-- > shift;) {
    if (sgn(b[i - shift]) != 0) b[i] += b[i - shift];
  }
}

void check_guard(Index K, int n) {
  if (n < 0) throw std::invalid_argument("energy_growth: n must be >= 0");
  if (n > max_growth_steps(K)) {
    throw std::invalid_argument("truncation guard: 2*3^" + std::to_string(n) + " exceeds K/3 for K = " +
                                std::to_string(K));
  }
}

}  // namespace

CantorFixedSequence::CantorFixedSequence(Index truncation) : truncation_(truncation) {
  if (truncation_ < 0) throw std::invalid_argument("CantorFixedSequence: negative truncation");
}

Rational CantorFixedSequence::coeff(Index k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void CantorFixedSequence::set(Index k, Rational v) {
  if (k > truncation_ || k < -truncation_) throw std::out_of_range("CantorFixedSequence::set: index beyond truncation");
  v.canonicalize();
  if (sgn(v) == 0) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = std::move(v);
  }
}

LaurentPoly CantorFixedSequence::to_laurent() const {
  LaurentPoly::Map m;
  for (const auto& [k, v] : coeffs_) m.emplace(k, RatC(v));
  return LaurentPoly(std::move(m));
}

CantorFixedSequence CantorFixedSequence::truncated(Index bound) const {
  CantorFixedSequence out(std::min(bound, truncation_));
  for (auto it = coeffs_.lower_bound(-out.truncation_); it != coeffs_.end() && it->first <= out.truncation_; ++it) {
    out.coeffs_.emplace(*it);
  }
  return out;
}

bool CantorFixedSequence::is_antisymmetric() const {
  if (sgn(coeff(0)) != 0) return false;
  for (const auto& [k, v] : coeffs_) {
    if (coeff(-k) != -v) return false;
  }
  return true;
}

bool CantorFixedSequence::has_even_support() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.first % 2 == 0; });
}

CantorFixedSequence build_sequence(std::int64_t K) {
  if (K < 2) throw std::invalid_argument("build_sequence: K must be >= 2");
  CantorFixedSequence seq(K);
  for (int k = 0;; ++k) {
    const Index three_k = checked_pow(3, k);
    const Index lo = three_k + 1;
    if (lo > K) break;
    const Index hi = std::min<Index>(3 * three_k - 1, K);
    const Rational v = pow2(-k);
    for (Index n = lo; n <= hi; n += 2) {
      seq.set(n, v);
      seq.set(-n, -v);
    }
  }
  return seq;
}

Rational residual_at(const CantorFixedSequence& seq, std::int64_t k) {
  const Rational half(1, 2);
  return Rational(seq.coeff(k) - (half * seq.coeff(3 * k - 2) + seq.coeff(3 * k) + half * seq.coeff(3 * k + 2)));
}

ResidualReport fixed_point_residual(const CantorFixedSequence& seq) {
  ResidualReport r;
  r.max_abs_residual = 0;
  const Index K = seq.truncation();
  r.checked_range = K >= 2 ? (K - 2) / 3 : -1;
  // Walk |k| = 0, 1, 2, ... so ties resolve to the smallest |k|.
  for (Index m = 0; m <= r.checked_range; ++m) {
    for (Index k : {m, -m}) {
      const Rational res = abs(residual_at(seq, k));
      if (res > r.max_abs_residual) {
        r.max_abs_residual = res;
        r.worst_index = k;
      }
      if (m == 0) break;
    }
  }
  return r;
}

int max_growth_steps(std::int64_t K) {
  int n = -1;
  // 2*3^n <= K/3  <=>  6*3^n <= K
  for (Index p = 1; 6 * p <= K; p *= 3) ++n;
  return n;
}

std::vector<std::pair<int, Rational>> energy_growth(const CantorFixedSequence& seq, int n_max) {
  check_guard(seq.truncation(), n_max);
  // b^(n) is supported in [-K, K + 3^n - 1].
  ScaledSequence s = scaled_image(seq, checked_pow(3, n_max));
  const Rational den2 = Rational(Integer(1), s.denominator * s.denominator);
  std::vector<std::pair<int, Rational>> out;
  for (int n = 0; n <= n_max; ++n) {
    Integer sum = 0;
    for (const auto& v : s.values) {
      if (sgn(v) != 0) sum += v * v;
    }
    out.emplace_back(n, Rational(Rational(sum) * den2 * pow2(-n)));
    if (n < n_max) growth_step(s.values, static_cast<std::size_t>(2 * checked_pow(3, n)));
  }
  return out;
}

bool monotone_tail_check(const CantorFixedSequence& seq, int n) {
  check_guard(seq.truncation(), n);
  ScaledSequence s = scaled_image(seq, checked_pow(3, n));
  for (int j = 0; j < n; ++j) growth_step(s.values, static_cast<std::size_t>(2 * checked_pow(3, j)));
  const Index start = checked_pow(3, n) + 1;  // 3^n is odd; first even k >= 3^n
  const Index stop = seq.truncation() - 2 * checked_pow(3, n);
  for (Index k = start; k <= stop; k += 2) {
    if (sgn(s.at(k + 2)) < 0 || s.at(k) < s.at(k + 2)) return false;
  }
  return true;
}

Rational partial_l1(const CantorFixedSequence& seq, std::int64_t bound) {
  Rational s(0);
  for (auto it = seq.coeffs().lower_bound(-bound); it != seq.coeffs().end() && it->first <= bound; ++it) {
    s += abs(it->second);
  }
  return s;
}

Rational partial_l2(const CantorFixedSequence& seq, std::int64_t bound) {
  Rational s(0);
  for (auto it = seq.coeffs().lower_bound(-bound); it != seq.coeffs().end() && it->first <= bound; ++it) {
    s += it->second * it->second;
  }
  return s;
}

L1ProbeReport l1_exclusion_probe(const LaurentPoly& p, int iterations) {
  const Filter m0 = Filter::cantor();
  L1ProbeReport r;
  const LaurentPoly rp = apply(m0, p);
  r.is_fixed = rp == p;
  r.is_nonconstant = !p.is_constant();
  LaurentPoly diff = rp - p;
  for (const auto& [k, c] : diff.coeffs()) r.violated.push_back(k);
  std::sort(r.violated.begin(), r.violated.end(), [](Index a, Index b) {
    return std::llabs(a) != std::llabs(b) ? std::llabs(a) < std::llabs(b) : a < b;
  });
  r.convergence = iterate_to_invariant(m0, p, iterations);
  return r;
}

}  // namespace cantorwave
