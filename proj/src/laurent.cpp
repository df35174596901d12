#include "cantorwave/laurent.hpp"

#include <cctype>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cantorwave {

std::int64_t checked_pow(std::int64_t base, int e) {
  if (e < 0) throw std::invalid_argument("checked_pow: negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("checked_pow: overflow");
  }
  return r;
}

LaurentPoly::LaurentPoly(std::initializer_list<std::pair<const Index, RatC>> terms) {
  for (const auto& [k, c] : terms) accumulate(k, c);
}

LaurentPoly::LaurentPoly(Map terms) {
  for (auto& [k, c] : terms) {
    if (!c.is_zero()) coeffs_.emplace(k, std::move(c));
  }
}

LaurentPoly LaurentPoly::constant(RatC c) { return monomial(0, std::move(c)); }

LaurentPoly LaurentPoly::monomial(Index k, RatC c) {
  LaurentPoly p;
  p.accumulate(k, c);
  return p;
}

RatC LaurentPoly::coeff(Index k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? RatC() : it->second;
}

bool LaurentPoly::is_constant() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

bool LaurentPoly::has_real_coefficients() const {
  for (const auto& [k, c] : coeffs_) {
    if (!c.is_real()) return false;
  }
  return true;
}

LaurentPoly::Index LaurentPoly::min_degree() const {
  if (coeffs_.empty()) throw std::domain_error("min_degree of zero polynomial");
  return coeffs_.begin()->first;
}

LaurentPoly::Index LaurentPoly::max_degree() const {
  if (coeffs_.empty()) throw std::domain_error("max_degree of zero polynomial");
  return coeffs_.rbegin()->first;
}

void LaurentPoly::accumulate(Index k, const RatC& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.coeffs_) accumulate(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.coeffs_) accumulate(k, -c);
  return *this;
}

LaurentPoly LaurentPoly::conj() const {
  LaurentPoly r;
  for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(-k, c.conj());
  return r;
}

LaurentPoly LaurentPoly::scaled(const RatC& s) const {
  LaurentPoly r;
  if (s.is_zero()) return r;
  for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, c * s);
  return r;
}

LaurentPoly LaurentPoly::substitute_power(Index m) const {
  if (m < 1) throw std::invalid_argument("substitute_power: exponent must be >= 1");
  LaurentPoly r;
  for (const auto& [k, c] : coeffs_) {
    Index km;
    if (__builtin_mul_overflow(k, m, &km)) throw std::overflow_error("substitute_power: index overflow");
    r.coeffs_.emplace(km, c);
  }
  return r;
}

Rational LaurentPoly::nonconstant_l1_mass() const {
  Rational m(0);
  for (const auto& [k, c] : coeffs_) {
    if (k != 0) m += c.abs_bound();
  }
  return m;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    if (c.is_real()) {
      os << c.re;
    } else {
      os << "(" << c << ")";
    }
    if (k != 0) os << "*z^" << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
LaurentPoly sub(const LaurentPoly& p, const LaurentPoly& q) { return p - q; }

LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r;
  for (const auto& [i, a] : p.coeffs()) {
    for (const auto& [j, b] : q.coeffs()) {
      LaurentPoly::Index k;
      if (__builtin_add_overflow(i, j, &k)) throw std::overflow_error("mul: index overflow");
      r.accumulate(k, a * b);
    }
  }
  return r;
}

LaurentPoly autocorrelation(const LaurentPoly& p) { return mul(p, p.conj()); }

RatC haar_integral(const LaurentPoly& p) { return p.coeff(0); }

RatC inner_product(const LaurentPoly& p, const LaurentPoly& q) {
  RatC s;
  // Walk the smaller support.
  const bool p_small = p.support_size() <= q.support_size();
  const auto& small = p_small ? p : q;
  const auto& large = p_small ? q : p;
  for (const auto& [k, c] : small.coeffs()) {
    auto it = large.coeffs().find(k);
    if (it == large.coeffs().end()) continue;
    s += p_small ? c * it->second.conj() : it->second * c.conj();
  }
  return s;
}

std::complex<double> evaluate(const LaurentPoly& p, const Rational& theta) {
  const Integer& num = theta.get_num();
  const Integer& den = theta.get_den();
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [k, c] : p.coeffs()) {
    Integer phase = Integer(static_cast<long>(k)) * num;
    mpz_fdiv_r(phase.get_mpz_t(), phase.get_mpz_t(), den.get_mpz_t());
    const double frac = Rational(phase, den).get_d();
    const double ang = 2.0 * std::numbers::pi * frac;
    sum += std::complex<double>(c.re.get_d(), c.im.get_d()) *
           std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return sum;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  LaurentPoly parse() {
    LaurentPoly p;
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [k, c] = term();
      p.accumulate(k, sign > 0 ? c : -c);
      skip();
    }
    return p;
  }

 private:
  std::pair<LaurentPoly::Index, RatC> term() {
    RatC coef(1);
    bool have_coef = false;
    if (peek() == '(') {
      ++pos_;
      skip();
      Rational q = rational();
      skip();
      expect(')');
      coef = RatC(q);
      have_coef = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef = RatC(rational());
      have_coef = true;
    }
    skip();
    if (peek() == 'i') {
      ++pos_;
      coef = RatC(Rational(0), coef.re);
      have_coef = true;
      skip();
    }
    if (have_coef && peek() == '*') {
      ++pos_;
      skip();
      if (peek() != 'z') fail("expected 'z' after '*'");
    }
    LaurentPoly::Index k = 0;
    if (peek() == 'z') {
      ++pos_;
      k = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        k = integer_exponent();
      }
    } else if (!have_coef) {
      fail("expected a term");
    }
    return {k, coef};
  }

  Rational rational() {
    Integer n = digits();
    skip();
    if (peek() == '/') {
      ++pos_;
      skip();
      Integer d = digits();
      if (d == 0) fail("zero denominator");
      Rational q(n, d);
      q.canonicalize();
      return q;
    }
    return Rational(n);
  }

  LaurentPoly::Index integer_exponent() {
    bool paren = false;
    if (peek() == '(') {
      paren = true;
      ++pos_;
      skip();
    }
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    Integer d = digits();
    if (!d.fits_slong_p()) fail("exponent out of range");
    if (paren) {
      skip();
      expect(')');
    }
    return sign * static_cast<LaurentPoly::Index>(d.get_si());
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(s_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_laurent: " + what + " at position " + std::to_string(pos_) +
                                " in \"" + s_ + "\"");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(const std::string& text) { return PolyParser(text).parse(); }

}  // namespace cantorwave
