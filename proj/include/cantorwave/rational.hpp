#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

namespace cantorwave {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact rational complex number re + i*im.
struct RatC {
  Rational re{0};
  Rational im{0};

  RatC() = default;
  RatC(Rational r) : re(std::move(r)) { re.canonicalize(); }
  RatC(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  RatC(long v) : re(v) {}
  RatC(int v) : re(v) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  RatC conj() const { return {re, -im}; }
  /// |z|^2, exact.
  Rational norm2() const { return Rational(re * re + im * im); }
  /// |re| + |im|, an exact upper bound for |z|.
  Rational abs_bound() const { return Rational(abs(re) + abs(im)); }

  RatC& operator+=(const RatC& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RatC& operator-=(const RatC& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  RatC& operator*=(const RatC& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend RatC operator+(RatC a, const RatC& b) { return a += b; }
  friend RatC operator-(RatC a, const RatC& b) { return a -= b; }
  friend RatC operator*(RatC a, const RatC& b) { return a *= b; }
  friend RatC operator-(const RatC& a) { return {-a.re, -a.im}; }
  friend bool operator==(const RatC& a, const RatC& b) { return a.re == b.re && a.im == b.im; }

  friend std::ostream& operator<<(std::ostream& os, const RatC& z) {
    os << z.re;
    if (!z.is_real()) os << (sgn(z.im) < 0 ? "-" : "+") << abs(z.im) << "i";
    return os;
  }
};

/// 2^e as an exact rational; e may be negative.
inline Rational pow2(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

inline Integer ipow(long base, unsigned long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base), e);
  if (base < 0 && (e % 2) == 1) p = -p;
  return p;
}

/// base^e in int64, throwing std::overflow_error past the range.
std::int64_t checked_pow(std::int64_t base, int e);

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace cantorwave
