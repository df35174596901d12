// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cantorwave/cantorwave.hpp"
#include "support.hpp"

using namespace cantorwave;
using namespace cantorwave::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_ms;
  std::function<Outcome()> run;
};

LaurentPoly z(std::int64_t k) { return LaurentPoly::monomial(k); }

CellFunction chi(int level, std::int64_t offset) { return CellFunction::cell({level, offset}); }

bool proportional(const CellFunction& f, const CellFunction& g) {
  if (f.is_zero() || g.is_zero()) return false;
  const int level = std::max(f.level(), g.level());
  const auto fr = refine(f, level);
  const auto gr = refine(g, level);
  if (fr.coeffs().size() != gr.coeffs().size() || fr.half_scale() != gr.half_scale()) return false;
  const Rational ratio = fr.coeffs().begin()->second / gr.coeffs().begin()->second;
  for (const auto& [k, c] : fr.coeffs()) {
    const auto it = gr.coeffs().find(k);
    if (it == gr.coeffs().end() || c != ratio * it->second) return false;
  }
  return true;
}

Outcome qmf_validation() {
  Outcome o;
  o.require(qmf_check(Filter::cantor()), "Cantor filter fails the QMF check");
  o.require(qmf_check(Filter::constant_one(3)), "m0 = 1 fails the QMF check");
  o.require(!qmf_check(Filter(LaurentPoly{{0, 1}, {3, 1}}, 1, 3)), "(1+z^3)/sqrt2 passes the QMF check");
  return o;
}

Outcome transfer_coefficients() {
  Outcome o;
  const Filter m0 = Filter::cantor();
  const Rational half(1, 2);
  o.require(apply(m0, z(1)) == LaurentPoly{{1, half}}, "R z != z/2");
  o.require(apply(m0, z(2)) == LaurentPoly::constant(half), "R z^2 != 1/2");
  o.require(apply(m0, z(6)) == z(2), "R z^6 != z^2");
  double worst = 0;
  for (std::int64_t m : {1, 2, 6}) {
    const auto rf = apply(m0, z(m));
    for (std::int64_t k = -4; k <= 4; ++k) {
      const RatC c = rf.coeff(k);
      const auto q = quadrature_transfer_coeff(m0, z(m), k);
      worst = std::max(worst, std::abs(q - std::complex<double>(c.re.get_d(), c.im.get_d())));
    }
  }
  o.require(worst < 1e-8, "quadrature disagreement " + std::to_string(worst));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200 && o.pass; ++t) {
    const auto f = random_poly(rng, 8, 15);
    const auto rf = apply(m0, f);
    for (std::int64_t k = -7; k <= 7; ++k) {
      const RatC expected = RatC(half) * f.coeff(3 * k - 2) + f.coeff(3 * k) + RatC(half) * f.coeff(3 * k + 2);
      o.require(rf.coeff(k) == expected, "three-term recursion mismatch at k = " + std::to_string(k));
    }
  }
  if (o.pass) {
    std::ostringstream s;
    s << "max quadrature error " << worst;
    o.detail = s.str();
  }
  return o;
}

Outcome fixed_point_exactness() {
  Outcome o;
  const std::int64_t K = 6561;
  const auto r = fixed_point_residual(build_sequence(K));
  o.require(r.checked_range == (K - 2) / 3, "checked range " + std::to_string(r.checked_range));
  o.require(r.max_abs_residual == 0, "residual " + r.max_abs_residual.get_str());
  if (o.pass) o.detail = "max |r_k| = 0 over |k| <= " + std::to_string(r.checked_range);
  return o;
}

Outcome growth_bound() {
  Outcome o;
  const auto seq = build_sequence(531441);
  const auto s = energy_growth(seq, 10);
  o.require(s.size() == 11, "missing S_n values");
  double min_ratio = 1e300;
  for (std::size_t n = 1; n < s.size() && o.pass; ++n) {
    const Rational bound = Rational(3) * Rational(ipow(3, static_cast<long>(n)), ipow(2, static_cast<long>(n)));
    o.require(s[n].second > s[n - 1].second, "S_n not increasing at n = " + std::to_string(n));
    o.require(s[n].second >= bound, "S_n < 3 (3/2)^n at n = " + std::to_string(n));
    min_ratio = std::min(min_ratio, s[n].second.get_d() / std::pow(1.5, static_cast<double>(n)));
  }
  // Independent route for the early terms.
  for (int n = 0; n <= 2 && o.pass; ++n) {
    o.require(s[static_cast<std::size_t>(n)].second == weighted_energy(Filter::cantor(), seq.to_laurent(), n),
              "S_n differs from the weighted energy at n = " + std::to_string(n));
  }
  if (o.pass) {
    std::ostringstream d;
    d << "min S_n/(3/2)^n = " << min_ratio << ", S_10 = " << s[10].second.get_d();
    o.detail = d.str();
  }
  return o;
}

Outcome scaling_uniqueness() {
  Outcome o;
  for (int level = 1; level <= 5 && o.pass; ++level) {
    const auto basis = refinement_nullspace(level, kDefaultWindowLo, kDefaultWindowHi);
    o.require(basis.size() == 1, "dimension " + std::to_string(basis.size()) + " at level " + std::to_string(level));
    if (basis.size() == 1) {
      o.require(proportional(basis[0], CellFunction::scaling_function()),
                "kernel not spanned by chi_C at level " + std::to_string(level));
    }
  }
  if (o.pass) o.detail = "dim = 1 for levels 1..5";
  return o;
}

Outcome cascade_nonconvergence() {
  Outcome o;
  const Rational half(1, 2);
  const auto spatial = cascade_divergence(chi(1, 0), 10);
  const auto transfer = cascade_divergence_transfer(chi(1, 0), 10);
  for (std::size_t n = 0; n < spatial.size(); ++n) {
    o.require(spatial[n].second == half, "half-cell series != 1/2 at n = " + std::to_string(n));
    o.require(transfer[n].second == spatial[n].second, "routes differ at n = " + std::to_string(n));
  }

  const CellFunction xi = translate(CellFunction::scaling_function(), 1);
  const auto report = iterate_to_invariant(Filter::cantor(), cascade_defect_correlation(xi), 40);
  const auto& last = report.iterates.back();
  o.require(last.nonconstant_l1_mass <= Rational(1, 1000000), "mass bound " + last.nonconstant_l1_mass.get_str());
  const Rational bound = last.nonconstant_l1_mass;
  const Rational nu = last.constant_part.re;
  const auto sp = cascade_divergence(xi, 12);
  const auto tr = cascade_divergence_transfer(xi, 40);
  for (std::size_t n = 0; n < sp.size(); ++n) {
    o.require(sp[n].second == tr[n].second, "routes differ for T chi_C at n = " + std::to_string(n));
  }
  Rational gap = abs(tr.back().second - nu);
  o.require(gap <= bound, "transfer limit outside the mass bound");
  o.require(sgn(nu) > 0, "limit not positive");
  if (o.pass) o.detail = "nu(h0) = " + nu.get_str() + " for T chi_C, mass bound " + bound.get_str();
  return o;
}

Outcome intertwining() {
  Outcome o;
  const Filter m0 = Filter::cantor();
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100 && o.pass; ++t) {
    const auto f = random_cell_function(rng, 4);
    const auto g = random_cell_function(rng, 4);
    o.require(correlation(cascade(f), cascade(g)) == apply(m0, correlation(f, g)),
              "pair " + std::to_string(t) + " violates the intertwining identity");
  }
  if (o.pass) o.detail = "100 random pairs exact";
  return o;
}

Outcome unitarity() {
  Outcome o;
  const CellFunction chi_c = CellFunction::scaling_function();
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200 && o.pass; ++t) {
    const auto f = random_cell_function(rng);
    const auto g = random_cell_function(rng);
    o.require(inner(dilate(f), dilate(g)) == inner(f, g), "<Uf, Ug> != <f, g>");
    o.require(dilate(translate(dilate_inverse(f), 1)) == translate(f, 3), "U T U^-1 != T^3");
    std::uniform_int_distribution<int> kd(-20, 20);
    const int k = kd(rng);
    o.require(inner(translate(chi_c, k), chi_c) == (k == 0 ? 1 : 0), "<T^k chi_C, chi_C> != delta");
  }
  const CellFunction u = dilate(chi_c);
  const CellFunction sqrt2_u(u.level(), u.coeffs(), u.half_scale() - 1);
  o.require(sqrt2_u == chi_c + translate(chi_c, 2), "sqrt2 U chi_C != chi_C + T^2 chi_C");
  return o;
}

Outcome solenoid_consistency() {
  Outcome o;
  const CircleSystem sys(Filter::cantor());
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> den(2, 400);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const int q = den(rng);
    const Point x{0, Rational(std::uniform_int_distribution<int>(0, q - 1)(rng), q)};
    const auto h = random_poly(rng, 6, 12);
    for (int n = 0; n <= 5; ++n) {
      const auto tree = tree_expectation(sys, x, h, n);
      worst = std::max(worst, std::abs(tree - evaluate(apply_power(Filter::cantor(), h, n), x.angle)));
    }
  }
  o.require(worst <= 1e-10, "tree vs transfer " + std::to_string(worst));

  const auto tw = transition_weights(sys, Point{0, Rational(0)});
  const double expect[3] = {2.0 / 3, 1.0 / 6, 1.0 / 6};
  for (int j = 0; j < 3; ++j) o.require(std::abs(tw.entries[static_cast<std::size_t>(j)].second - expect[j]) <= 1e-12, "weights at 0");

  const LaurentPoly f{{0, Rational(1, 4)}, {1, 1}, {-1, 1}, {2, Rational(-1, 2)}, {-2, Rational(-1, 2)}};
  const CylinderFunction F = [&f](std::span<const Point> xs) { return evaluate(f, xs[0].angle).real(); };
  const auto mc = mu_infinity_integral(sys, F, 0, 100000, 42, 4);
  const double target = haar_integral(f).re.get_d();
  o.require(std::abs(mc.estimate - target) <= 3 * mc.std_error, "MC estimate outside 3 sigma");
  if (o.pass) {
    std::ostringstream d;
    d << "tree err " << worst << ", MC " << mc.estimate << " +/- " << mc.std_error << " vs " << target;
    o.detail = d.str();
  }
  return o;
}

Outcome ergodic_dichotomy() {
  Outcome o;
  const CircleSystem unit(Filter::constant_one(3));
  std::vector<LaurentPoly> monomials;
  for (std::int64_t k = -81; k <= 81; ++k) {
    if (k != 0) monomials.push_back(z(k));
  }
  int worst_steps = 0;
  for (const auto& r : ergodicity_diagnostic(unit, monomials, 5)) {
    o.require(r.verdict == ErgodicVerdict::kConsistentWithErgodic, "a monomial did not flow to a constant");
    o.require(r.final_iterate[0].is_zero(), "a monomial did not reach 0");
    worst_steps = std::max(worst_steps, r.steps);
  }

  const TwoCircleSystem two(3);
  const auto w = ergodicity_diagnostic(two, std::vector<ComponentPoly>{indicator_poly(two, 1)}, 5);
  o.require(w[0].verdict == ErgodicVerdict::kNonErgodicWitness, "indicator is not a fixed point");
  std::mt19937_64 rng(10);
  for (int c = 0; c < 2; ++c) {
    const Point x{c, Rational(static_cast<long>(rng() % 1000), 1000)};
    const auto rep = cocycle_limit(two, component_indicator(1), x, 30, 1000, 10 + static_cast<std::uint64_t>(c), 0);
    o.require(rep.paths.size() == 1000 && rep.max_oscillation == 0.0, "indicator oscillates along a path");
    o.require(std::abs(rep.paths[0].limit - std::complex<double>(c == 1 ? 1.0 : 0.0)) == 0.0, "wrong cocycle limit");
  }
  if (o.pass) o.detail = "all z^k reach 0 in <= " + std::to_string(worst_steps) + " steps; two-circle witness found";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "QMF validation", 1, qmf_validation},
      {2, "transfer coefficients", 1000, transfer_coefficients},
      {3, "fixed point residual, K = 3^8", 10000, fixed_point_exactness},
      {4, "energy growth, K = 3^12, n <= 10", 60000, growth_bound},
      {5, "refinement kernel, levels <= 5", 30000, scaling_uniqueness},
      {6, "cascade non-convergence", 30000, cascade_nonconvergence},
      {7, "intertwining", 10000, intertwining},
      {8, "unitarity and covariance", 5000, unitarity},
      {9, "solenoid consistency", 60000, solenoid_consistency},
      {10, "ergodic dichotomy", 30000, ergodic_dichotomy},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && ms > c.budget_ms) {
      o.pass = false;
      o.detail = "over time budget of " + std::to_string(static_cast<int>(c.budget_ms)) + " ms";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  %-36s %10.2f ms  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name.c_str(), ms,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
