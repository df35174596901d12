#include <doctest.h>

#include <random>

#include "cantorwave/laurent.hpp"
#include "support.hpp"

using namespace cantorwave;
using cantorwave::testing::naive_eval;
using cantorwave::testing::random_poly;

namespace {

const Rational half(1, 2);

LaurentPoly z(std::int64_t k) { return LaurentPoly::monomial(k); }

}  // namespace

TEST_CASE("RatC arithmetic is exact") {
  RatC a(Rational(1, 3), Rational(-2, 7));
  RatC b(Rational(5, 11), Rational(1, 2));
  CHECK((a + b) - b == a);
  CHECK(a * b == b * a);
  CHECK(a.conj().conj() == a);
  CHECK(RatC(Rational(3), Rational(4)).norm2() == 25);
}

TEST_CASE("add") {
  CHECK(add(z(1) + z(-1), LaurentPoly::monomial(-1, -1)) == z(1));
  const LaurentPoly p{{0, 1}, {3, Rational(2, 5)}};
  CHECK(add(p, LaurentPoly()) == p);
  const LaurentPoly lhs{{0, 1}, {2, half}};
  const LaurentPoly expected{{0, 1}, {2, half}, {-2, half}};
  CHECK(add(lhs, LaurentPoly{{-2, half}}) == expected);
  // Cancellation leaves nothing stored.
  CHECK((z(3) - z(3)).support_size() == 0);
}

TEST_CASE("mul") {
  CHECK(mul(z(2), z(-2)) == LaurentPoly::constant(1));
  const LaurentPoly a{{0, 1}, {2, 1}};
  const LaurentPoly b{{0, 1}, {-2, 1}};
  CHECK(mul(a, b) == LaurentPoly{{0, 2}, {2, 1}, {-2, 1}});
  CHECK(mul(a, LaurentPoly::constant(1)) == a);

  // Floating-point oracle: product of values equals value of the product.
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_poly(rng);
    const auto q = random_poly(rng);
    const std::complex<double> w = std::polar(1.0, 0.37 + t);
    CHECK(std::abs(naive_eval(mul(p, q), w) - naive_eval(p, w) * naive_eval(q, w)) < 1e-9);
  }
}

TEST_CASE("autocorrelation") {
  const LaurentPoly cantor_num{{0, 1}, {2, 1}};
  CHECK(autocorrelation(cantor_num) == LaurentPoly{{0, 2}, {2, 1}, {-2, 1}});
  CHECK(autocorrelation(z(7)) == LaurentPoly::constant(1));
  CHECK(autocorrelation(LaurentPoly{{0, 1}, {1, 1}}) == LaurentPoly{{0, 2}, {1, 1}, {-1, 1}});
}

TEST_CASE("haar_integral") {
  CHECK(haar_integral(LaurentPoly{{0, 1}, {2, half}, {-2, half}}) == RatC(1));
  CHECK(haar_integral(z(5)) == RatC(0));
  CHECK(haar_integral(LaurentPoly()) == RatC(0));
}

TEST_CASE("inner_product") {
  CHECK(inner_product(z(1), z(1)) == RatC(1));
  CHECK(inner_product(z(1), z(2)) == RatC(0));
  const LaurentPoly p{{0, 1}, {2, half}};
  CHECK(inner_product(p, p) == RatC(Rational(5, 4)));
  const LaurentPoly q{{1, RatC(0, 1)}};
  CHECK(inner_product(q, LaurentPoly{{1, 1}}) == RatC(0, 1));
  CHECK(inner_product(LaurentPoly{{1, 1}}, q) == RatC(0, -1));
}

TEST_CASE("evaluate") {
  const LaurentPoly p{{0, 1}, {2, 1}};
  CHECK(std::abs(evaluate(p, Rational(0)) - std::complex<double>(2, 0)) < 1e-15);
  const auto v = evaluate(p, Rational(1, 3));
  CHECK(std::abs(std::norm(v) - 1.0) < 1e-14);
  CHECK(std::abs(v - (1.0 + std::polar(1.0, 4.0 * std::numbers::pi / 3.0))) < 1e-14);
  CHECK(std::abs(evaluate(z(1), Rational(1, 4)) - std::complex<double>(0, 1)) < 1e-15);
  // Large exponents are reduced exactly: z^(3^30) at theta = 1/3 is 1.
  CHECK(std::abs(evaluate(z(205891132094649LL), Rational(1, 3)) - 1.0) < 1e-15);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_poly(rng);
    const auto q = random_poly(rng);
    const auto r = random_poly(rng);
    CHECK(mul(mul(p, q), r) == mul(p, mul(q, r)));
    CHECK(mul(p, add(q, r)) == add(mul(p, q), mul(p, r)));
    CHECK(mul(p, q) == mul(q, p));
    CHECK(add(p, q) == add(q, p));
  }
}

TEST_CASE("conjugation, Hermitian autocorrelation and Parseval") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_poly(rng);
    CHECK(p.conj().conj() == p);
    const auto a = autocorrelation(p);
    for (const auto& [k, c] : a.coeffs()) CHECK(a.coeff(-k) == c.conj());
    Rational parseval(0);
    for (const auto& [k, c] : p.coeffs()) parseval += c.norm2();
    CHECK(haar_integral(a) == RatC(parseval));
    const RatC ip = inner_product(p, p);
    CHECK(ip.is_real());
    CHECK(sgn(ip.re) >= 0);
    CHECK((sgn(ip.re) == 0) == p.is_zero());
  }
}

TEST_CASE("parse_laurent") {
  CHECK(parse_laurent("z^6") == z(6));
  CHECK(parse_laurent("1 + z^2") == LaurentPoly{{0, 1}, {2, 1}});
  CHECK(parse_laurent("1 + 1/2*z^2 + 1/2 z^-2") == LaurentPoly{{0, 1}, {2, half}, {-2, half}});
  CHECK(parse_laurent("-z - 3") == LaurentPoly{{1, -1}, {0, -3}});
  CHECK(parse_laurent("(1/3)i*z^(-4)") == LaurentPoly{{-4, RatC(0, Rational(1, 3))}});
  CHECK(parse_laurent("i") == LaurentPoly{{0, RatC(0, 1)}});
  CHECK_THROWS_AS(parse_laurent(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("z^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("2 z z"), std::invalid_argument);
}
