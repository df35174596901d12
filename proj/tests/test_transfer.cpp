#include <doctest.h>

#include <random>

#include "cantorwave/fixedpoint.hpp"
#include "cantorwave/transfer.hpp"
#include "support.hpp"

using namespace cantorwave;
using namespace cantorwave::testing;

namespace {

const Rational half(1, 2);
LaurentPoly z(std::int64_t k) { return LaurentPoly::monomial(k); }

}  // namespace

TEST_CASE("Filter construction rejects invalid filters") {
  CHECK_THROWS_AS(Filter(LaurentPoly(), 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(Filter(z(0), -1, 3), std::invalid_argument);
  CHECK_THROWS_AS(Filter(z(0), 0, 1), std::invalid_argument);
}

TEST_CASE("weight_poly") {
  CHECK(weight_poly(Filter::cantor()) == LaurentPoly{{0, 1}, {2, half}, {-2, half}});
  CHECK(weight_poly(Filter::constant_one(3)) == LaurentPoly::constant(1));
  CHECK(weight_poly(Filter::haar()) == LaurentPoly{{0, 1}, {1, half}, {-1, half}});

  // DFT oracle.
  for (const Filter& f : {Filter::cantor(), Filter::haar(), Filter(LaurentPoly{{0, 1}, {3, 2}, {-1, RatC(0, 1)}}, 3, 2)}) {
    for (std::int64_t k = -6; k <= 6; ++k) {
      const RatC c = weight_poly(f).coeff(k);
      CHECK(std::abs(dft_weight_coeff(f, k) - std::complex<double>(c.re.get_d(), c.im.get_d())) < 1e-12);
    }
  }
}

TEST_CASE("qmf_check") {
  CHECK(qmf_check(Filter::cantor()));
  for (int n = 2; n <= 5; ++n) CHECK(qmf_check(Filter::constant_one(n)));
  CHECK(qmf_check(Filter::haar()));
  const Filter bad(LaurentPoly{{0, 1}, {3, 1}}, 1, 3);
  CHECK_FALSE(qmf_check(bad));
  CHECK(weight_poly(bad).coeff(3) == RatC(half));
}

TEST_CASE("apply: Cantor coefficients against quadrature") {
  const Filter m0 = Filter::cantor();
  CHECK(apply(m0, LaurentPoly::constant(1)) == LaurentPoly::constant(1));
  CHECK(apply(m0, z(1)) == LaurentPoly{{1, half}});
  CHECK(apply(m0, z(2)) == LaurentPoly::constant(half));
  CHECK(apply(m0, z(6)) == z(2));
  for (std::int64_t m : {1, 2, 6}) {
    const LaurentPoly rf = apply(m0, z(m));
    for (std::int64_t k = -4; k <= 4; ++k) {
      const RatC c = rf.coeff(k);
      CHECK(std::abs(quadrature_transfer_coeff(m0, z(m), k) - std::complex<double>(c.re.get_d(), c.im.get_d())) <
            1e-8);
    }
  }
}

TEST_CASE("apply reproduces the three-term Cantor recursion literally") {
  std::mt19937_64 rng(5);
  const Filter m0 = Filter::cantor();
  for (int t = 0; t < 50; ++t) {
    const LaurentPoly f = random_poly(rng, 8, 12);
    const LaurentPoly rf = apply(m0, f);
    for (std::int64_t k = -6; k <= 6; ++k) {
      const RatC expected = RatC(half) * f.coeff(3 * k - 2) + f.coeff(3 * k) + RatC(half) * f.coeff(3 * k + 2);
      CHECK(rf.coeff(k) == expected);
    }
  }
}

TEST_CASE("apply with m0 = 1 decimates") {
  const Filter one = Filter::constant_one(3);
  CHECK(apply(one, z(9)) == z(3));
  CHECK(apply(one, z(4)).is_zero());
  CHECK(apply(one, LaurentPoly{{-6, 2}, {1, 5}}) == LaurentPoly{{-2, 2}});
}

TEST_CASE("transfer operator properties on random inputs") {
  std::mt19937_64 rng(11);
  const std::vector<Filter> filters{Filter::cantor(), Filter::haar(), Filter::constant_one(4)};
  for (const auto& m0 : filters) {
    CHECK(apply(m0, LaurentPoly::constant(1)) == LaurentPoly::constant(1));
    for (int t = 0; t < 40; ++t) {
      const auto f = random_poly(rng, 6, 10);
      const auto g = random_poly(rng, 6, 10);
      const RatC alpha(small_rational(rng), small_rational(rng));
      const RatC beta(small_rational(rng), small_rational(rng));
      // Linearity.
      CHECK(apply(m0, f.scaled(alpha) + g.scaled(beta)) == apply(m0, f).scaled(alpha) + apply(m0, g).scaled(beta));
      // Strong invariance: int R f = int |m0|^2 f.
      CHECK(haar_integral(apply(m0, f)) == haar_integral(mul(m0.weight(), f)));
      // Support contraction.
      if (!f.is_zero()) {
        const auto rf = apply(m0, f);
        if (!rf.is_zero()) {
          const auto n = m0.branch_count();
          const auto lo = f.min_degree() + m0.weight().min_degree();
          const auto hi = f.max_degree() + m0.weight().max_degree();
          CHECK(rf.min_degree() * n >= lo);
          CHECK(rf.max_degree() * n <= hi);
        }
      }
      // Quadrature oracle, a few coefficients.
      for (std::int64_t k = -2; k <= 2; ++k) {
        const RatC c = apply(m0, f).coeff(k);
        CHECK(std::abs(quadrature_transfer_coeff(m0, f, k) - std::complex<double>(c.re.get_d(), c.im.get_d())) <
              1e-9);
      }
    }
  }
}

TEST_CASE("iterate_to_invariant") {
  const Filter m0 = Filter::cantor();
  SUBCASE("z^2 reaches 1/2 in one step") {
    const auto r = iterate_to_invariant(m0, z(2));
    REQUIRE(r.converged());
    CHECK(r.iterations_used == 1);
    CHECK(*r.limit == RatC(half));
    CHECK(r.iterates.back().nonconstant_l1_mass == 0);
  }
  SUBCASE("z^6 reaches 1/2 in two steps") {
    const auto r = iterate_to_invariant(m0, z(6));
    REQUIRE(r.converged());
    CHECK(r.iterations_used == 2);
    CHECK(*r.limit == RatC(half));
  }
  SUBCASE("z decays geometrically") {
    const auto r = iterate_to_invariant(m0, z(1));
    REQUIRE(r.converged());
    CHECK(*r.limit == RatC(0));
    for (const auto& it : r.iterates) CHECK(it.nonconstant_l1_mass == pow2(-it.n));
    CHECK(r.iterations_used == 30);  // 2^-30 < 1e-9 < 2^-29
  }
  SUBCASE("non-convergence is reported") {
    const auto r = iterate_to_invariant(m0, z(1), 5);
    CHECK_FALSE(r.converged());
    CHECK(r.iterations_used == 5);
    CHECK(r.iterates.size() == 6);
  }
  SUBCASE("non-QMF filters are rejected") {
    CHECK_THROWS_AS(iterate_to_invariant(Filter(LaurentPoly{{0, 1}, {3, 1}}, 1, 3), z(1)), std::invalid_argument);
  }
  SUBCASE("every monomial up to degree 81 flows to a constant") {
    for (std::int64_t k = -81; k <= 81; ++k) {
      if (k == 0) continue;
      const auto r = iterate_to_invariant(m0, z(k));
      CHECK(r.converged());
      for (const auto& it : r.iterates) CHECK(sgn(it.nonconstant_l1_mass) >= 0);
    }
  }
}

TEST_CASE("no nondecaying oscillation on random inputs") {
  std::mt19937_64 rng(31);
  const Filter m0 = Filter::cantor();
  for (int t = 0; t < 20; ++t) {
    const auto r = iterate_to_invariant(m0, random_poly(rng, 6, 20));
    CHECK(r.converged());
  }
}

TEST_CASE("composite_filter") {
  const Filter m0 = Filter::cantor();
  const Filter c0 = composite_filter(m0, 0);
  CHECK(c0.numerator() == LaurentPoly::constant(1));
  CHECK(c0.half_scale() == 0);
  const Filter c1 = composite_filter(m0, 1);
  CHECK(c1.numerator() == m0.numerator());
  CHECK(c1.half_scale() == 1);
  const Filter c2 = composite_filter(m0, 2);
  CHECK(c2.numerator() == mul(LaurentPoly{{0, 1}, {2, 1}}, LaurentPoly{{0, 1}, {6, 1}}));
  CHECK(c2.half_scale() == 2);
  CHECK(c2.branch_count() == 9);
  // m0^(n) is a QMF for z -> z^{N^n}.
  for (int n = 1; n <= 4; ++n) CHECK(composite_filter(m0, n).qmf_valid());
}

TEST_CASE("weighted_energy") {
  const Filter m0 = Filter::cantor();
  CHECK(weighted_energy(m0, LaurentPoly(), 3) == 0);
  for (int n = 0; n <= 8; ++n) CHECK(weighted_energy(m0, LaurentPoly::constant(1), n) == 1);

  // int |m0^(n)|^2 |h|^2 = int R^n |h|^2, exact.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto h = random_poly(rng, 5, 8);
    for (int n = 0; n <= 4; ++n) {
      CHECK(RatC(weighted_energy(m0, h, n)) == haar_integral(apply_power(m0, autocorrelation(h), n)));
    }
  }

  // Truncated l^2 fixed point: increasing and above 3 (3/2)^n.
  const LaurentPoly h = build_sequence(6561).to_laurent();
  Rational prev(-1);
  for (int n = 1; n <= 6; ++n) {
    const Rational e = weighted_energy(m0, h, n);
    CHECK(e > prev);
    CHECK(e >= Rational(3) * Rational(ipow(3, n), ipow(2, n)));
    prev = e;
  }
}
