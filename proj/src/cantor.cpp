#include "cantorwave/cantor.hpp"

#include <stdexcept>
#include <unordered_map>

#include "cantorwave/sparse_nullspace.hpp"
#include "cantorwave/transfer.hpp"

namespace cantorwave {

namespace {

using Offset = CellFunction::Offset;

Offset floor_div(Offset a, Offset b) {
  Offset q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Offset mul_checked(Offset a, Offset b) {
  Offset r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cell offset overflow");
  return r;
}

Offset add_checked(Offset a, Offset b) {
  Offset r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cell offset overflow");
  return r;
}

void accumulate(CellFunction::Map& m, Offset k, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) m.erase(it);
  }
}

CellFunction::Map refine_once(const CellFunction::Map& m) {
  CellFunction::Map out;
  for (const auto& [k, c] : m) {
    const Offset base = mul_checked(k, 3);
    out.emplace(base, c);
    out.emplace(add_checked(base, 2), c);
  }
  return out;
}

// 2^{-(hf+hg)/2} for canonical scales, or throw when irrational.
Rational pair_scale(const CellFunction& f, const CellFunction& g) {
  const int total = f.half_scale() + g.half_scale();
  if (total % 2 != 0) {
    throw std::domain_error("inner: combined sqrt(2) scale is odd, result is irrational");
  }
  return pow2(-total / 2);
}

CellFunction combine(const CellFunction& f, const CellFunction& g, int sign) {
  if (f.is_zero()) return g.scaled(Rational(sign));
  if (g.is_zero()) return f;
  if (f.half_scale() != g.half_scale()) {
    throw std::domain_error("CellFunction sum: sqrt(2) scales differ in parity");
  }
  const int level = std::max(f.level(), g.level());
  CellFunction::Map m = refine(f, level).coeffs();
  const CellFunction gr = refine(g, level);
  for (const auto& [k, c] : gr.coeffs()) accumulate(m, k, sign > 0 ? c : Rational(-c));
  return CellFunction(level, std::move(m), f.half_scale());
}

bool cantor_digits(Offset r) {
  while (r > 0) {
    if (r % 3 == 1) return false;
    r /= 3;
  }
  return true;
}

}  // namespace

std::pair<Cell, Cell> Cell::children() const {
  const Offset base = mul_checked(offset, 3);
  return {Cell{level + 1, base}, Cell{level + 1, add_checked(base, 2)}};
}

CellFunction::CellFunction(int level, Map coeffs, int half_scale) : level_(level), half_scale_(half_scale) {
  if (level_ > kMaxLevel) throw std::overflow_error("CellFunction: level exceeds kMaxLevel");
  for (auto& [k, c] : coeffs) {
    c.canonicalize();
    if (sgn(c) != 0) coeffs_.emplace(k, std::move(c));
  }
  while (level_ < 0) {
    coeffs_ = refine_once(coeffs_);
    ++level_;
  }
  // Fold 2^{-floor(h/2)} into the coefficients.
  const int fold = half_scale_ >= 0 ? half_scale_ / 2 : -((-half_scale_ + 1) / 2);
  half_scale_ -= 2 * fold;
  if (fold != 0) {
    const Rational s = pow2(-fold);
    for (auto& [k, c] : coeffs_) c *= s;
  }
  if (coeffs_.empty()) half_scale_ = 0;
}

CellFunction CellFunction::cell(const Cell& c, Rational coefficient) {
  return CellFunction(c.level, Map{{c.offset, std::move(coefficient)}});
}

Rational CellFunction::squared_norm() const {
  Rational s(0);
  for (const auto& [k, c] : coeffs_) s += c * c;
  return Rational(s * pow2(-level_ - half_scale_));
}

CellFunction CellFunction::coarsened() const {
  CellFunction cur = *this;
  while (cur.level_ > 0 && !cur.coeffs_.empty()) {
    Map parent;
    bool ok = true;
    for (const auto& [k, c] : cur.coeffs_) {
      const Offset p = floor_div(k, 3);
      const Offset r = k - 3 * p;
      if (r == 1) {
        ok = false;
        break;
      }
      auto sibling = cur.coeffs_.find(r == 0 ? k + 2 : k - 2);
      if (sibling == cur.coeffs_.end() || sibling->second != c) {
        ok = false;
        break;
      }
      parent.emplace(p, c);
    }
    if (!ok) break;
    cur.coeffs_ = std::move(parent);
    --cur.level_;
  }
  return cur;
}

CellFunction CellFunction::scaled(const Rational& s) const {
  Map m;
  if (sgn(s) != 0) {
    for (const auto& [k, c] : coeffs_) m.emplace(k, c * s);
  }
  return CellFunction(level_, std::move(m), half_scale_);
}

bool operator==(const CellFunction& a, const CellFunction& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.half_scale_ != b.half_scale_) return false;
  const int level = std::max(a.level_, b.level_);
  return refine(a, level).coeffs_ == refine(b, level).coeffs_;
}

CellFunction refine(const CellFunction& f, int target_level) {
  if (target_level < f.level()) {
    throw std::invalid_argument("refine: target level below the function's level");
  }
  if (target_level > CellFunction::kMaxLevel) throw std::overflow_error("refine: level exceeds kMaxLevel");
  CellFunction::Map m = f.coeffs();
  for (int l = f.level(); l < target_level; ++l) m = refine_once(m);
  return CellFunction(target_level, std::move(m), f.half_scale());
}

CellFunction operator+(const CellFunction& f, const CellFunction& g) { return combine(f, g, 1); }
CellFunction operator-(const CellFunction& f, const CellFunction& g) { return combine(f, g, -1); }

CellFunction dilate(const CellFunction& f) {
  return CellFunction(f.level() - 1, f.coeffs(), f.half_scale() + 1);
}

CellFunction dilate_inverse(const CellFunction& f) {
  return CellFunction(f.level() + 1, f.coeffs(), f.half_scale() - 1);
}

CellFunction translate(const CellFunction& f, std::int64_t m) {
  const Offset shift = mul_checked(m, checked_pow(3, f.level()));
  CellFunction::Map out;
  for (const auto& [k, c] : f.coeffs()) out.emplace(add_checked(k, shift), c);
  return CellFunction(f.level(), std::move(out), f.half_scale());
}

CellFunction pi_apply(const LaurentPoly& p, const CellFunction& f) {
  if (!p.has_real_coefficients()) {
    throw std::invalid_argument("pi_apply: complex coefficients have no action on real cell functions");
  }
  const Offset step = checked_pow(3, f.level());
  CellFunction::Map out;
  for (const auto& [m, pm] : p.coeffs()) {
    const Offset shift = mul_checked(m, step);
    for (const auto& [k, c] : f.coeffs()) accumulate(out, add_checked(k, shift), pm.re * c);
  }
  return CellFunction(f.level(), std::move(out), f.half_scale());
}

CellFunction cascade(const CellFunction& f) {
  const Offset shift = mul_checked(2, checked_pow(3, f.level()));
  CellFunction::Map out;
  for (const auto& [k, c] : f.coeffs()) {
    accumulate(out, k, c);
    accumulate(out, add_checked(k, shift), c);
  }
  return CellFunction(f.level() + 1, std::move(out), f.half_scale());
}

CellFunction cascade_via_operators(const CellFunction& f) {
  const Filter m0 = Filter::cantor();
  const CellFunction g = pi_apply(m0.numerator(), f);
  // pi(m0) = pi(numerator) / sqrt(2)^s.
  return dilate_inverse(CellFunction(g.level(), g.coeffs(), g.half_scale() + m0.half_scale()));
}

Rational inner(const CellFunction& f, const CellFunction& g) {
  if (f.is_zero() || g.is_zero()) return Rational(0);
  const Rational scale = pair_scale(f, g);
  const int level = std::max(f.level(), g.level());
  const CellFunction fr = refine(f, level);
  const CellFunction gr = refine(g, level);
  const auto& small = fr.coeffs().size() <= gr.coeffs().size() ? fr.coeffs() : gr.coeffs();
  const auto& large = &small == &fr.coeffs() ? gr.coeffs() : fr.coeffs();
  Rational s(0);
  for (const auto& [k, c] : small) {
    auto it = large.find(k);
    if (it != large.end()) s += c * it->second;
  }
  return Rational(s * scale * pow2(-level));
}

LaurentPoly correlation(const CellFunction& f, const CellFunction& g) {
  LaurentPoly p;
  if (f.is_zero() || g.is_zero()) return p;
  const Rational scale = Rational(pair_scale(f, g) * pow2(-std::max(f.level(), g.level())));
  const int level = std::max(f.level(), g.level());
  const CellFunction fr = refine(f, level);
  const CellFunction gr = refine(g, level);
  const Offset period = checked_pow(3, level);

  std::unordered_map<Offset, std::vector<std::pair<Offset, const Rational*>>> by_residue;
  for (const auto& [j, c] : gr.coeffs()) {
    by_residue[j - period * floor_div(j, period)].emplace_back(j, &c);
  }
  for (const auto& [k, c] : fr.coeffs()) {
    auto it = by_residue.find(k - period * floor_div(k, period));
    if (it == by_residue.end()) continue;
    for (const auto& [j, gc] : it->second) {
      p.accumulate((k - j) / period, RatC(Rational(c * *gc * scale)));
    }
  }
  return p;
}

std::vector<std::pair<int, Rational>> cascade_divergence(const CellFunction& f, int n_max) {
  if (n_max < 0) throw std::invalid_argument("cascade_divergence: n_max must be >= 0");
  if (n_max > kMaxSpatialCascadeSteps) {
    throw std::invalid_argument("cascade_divergence: n_max exceeds the spatial step limit; use "
                                "cascade_divergence_transfer");
  }
  std::vector<std::pair<int, Rational>> out;
  CellFunction d = cascade(f) - f;
  for (int n = 0; n <= n_max; ++n) {
    out.emplace_back(n, d.squared_norm());
    if (n < n_max) d = cascade(d);
  }
  return out;
}

LaurentPoly cascade_defect_correlation(const CellFunction& f) {
  const CellFunction d = cascade(f) - f;
  return correlation(d, d);
}

std::vector<std::pair<int, Rational>> cascade_divergence_transfer(const CellFunction& f, int n_max) {
  if (n_max < 0) throw std::invalid_argument("cascade_divergence_transfer: n_max must be >= 0");
  const Filter m0 = Filter::cantor();
  LaurentPoly h = cascade_defect_correlation(f);
  std::vector<std::pair<int, Rational>> out;
  for (int n = 0; n <= n_max; ++n) {
    out.emplace_back(n, haar_integral(h).re);
    if (n < n_max) h = apply(m0, h);
  }
  return out;
}

std::vector<CellFunction> refinement_nullspace(int level, std::int64_t window_lo, std::int64_t window_hi) {
  if (level < 1) throw std::invalid_argument("refinement_nullspace: level must be >= 1");
  if (window_hi <= window_lo) return {};
  const Offset cells_per_unit = checked_pow(3, level);
  const Offset first = mul_checked(window_lo, cells_per_unit);
  const Offset last = mul_checked(window_hi, cells_per_unit);  // exclusive
  const auto num_cols = static_cast<std::size_t>(last - first);
  const Offset shift = 2 * cells_per_unit;

  // Row per level+1 offset: (M f)_j - (refine f)_j = 0.
  std::map<Offset, SparseRow> rows;
  auto add_entry = [&rows](Offset row, std::size_t col, int v) {
    auto& r = rows[row];
    auto [it, inserted] = r.try_emplace(col, v);
    if (!inserted) {
      it->second += v;
      if (sgn(it->second) == 0) r.erase(it);
    }
  };
  for (Offset k = first; k < last; ++k) {
    const auto col = static_cast<std::size_t>(k - first);
    add_entry(k, col, 1);
    add_entry(k + shift, col, 1);
    add_entry(3 * k, col, -1);
    add_entry(3 * k + 2, col, -1);
  }
  std::vector<SparseRow> system;
  system.reserve(rows.size());
  for (auto& [j, r] : rows) {
    if (!r.empty()) system.push_back(std::move(r));
  }

  std::vector<CellFunction> basis;
  for (const auto& v : sparse_nullspace(system, num_cols)) {
    CellFunction::Map m;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) != 0) m.emplace(first + static_cast<Offset>(i), v[i]);
    }
    basis.emplace_back(level, std::move(m));
  }
  return basis;
}

CellFunction mra_project(const CellFunction& f, int n) {
  if (n >= f.level() || f.is_zero()) return f;
  const int depth = f.level() - n;
  const Offset block = checked_pow(3, depth);
  CellFunction::Map sums;
  for (const auto& [j, c] : f.coeffs()) {
    const Offset k = floor_div(j, block);
    if (cantor_digits(j - k * block)) accumulate(sums, k, c);
  }
  // Coefficient on chi_{C_{n,k}} is 2^n <f, chi_{C_{n,k}}> = 2^{-depth} * (sum of f over descendants).
  const Rational avg = pow2(-depth);
  for (auto& [k, c] : sums) c *= avg;
  return CellFunction(n, std::move(sums), f.half_scale());
}

std::vector<DetailGenerator> detail_basis(int level_window) {
  if (level_window < 1) throw std::invalid_argument("detail_basis: level_window must be >= 1");
  const Offset translates = checked_pow(3, level_window - 1);
  std::vector<DetailGenerator> out;
  for (Offset t = 0; t < translates; ++t) {
    std::vector<DetailGenerator> local;
    for (Offset r = 0; r < 3; ++r) {
      const CellFunction e = CellFunction::cell({1, 3 * t + r});
      CellFunction v = e - mra_project(e, 0);
      // Cells of different translates are disjoint, so local Gram-Schmidt suffices.
      for (const auto& g : local) {
        v = v - g.function.scaled(Rational(inner(v, g.function) / g.squared_norm));
      }
      if (v.is_zero()) continue;
      local.push_back({v, v.squared_norm()});
    }
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

}  // namespace cantorwave
