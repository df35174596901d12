#include "cantorwave/solenoid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cantorwave {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Rational frac(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(q - fl);
}

void tree_walk(const SolenoidSystem& sys, const Point& x, const Observable& h, int depth, double weight,
               std::complex<double>& acc) {
  if (depth == 0) {
    acc += weight * h(x);
    return;
  }
  for (const auto& [y, w] : transition_weights(sys, x).entries) {
    if (w == 0.0) continue;
    tree_walk(sys, y, h, depth - 1, weight * w, acc);
  }
}

}  // namespace

Point SolenoidSystem::forward(const Point& x) const {
  return {x.component, frac(Rational(x.angle * branch_count()))};
}

std::vector<Point> SolenoidSystem::preimages(const Point& x) const {
  const auto n = branch_count();
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    out.push_back({x.component, Rational((x.angle + j) / n)});
  }
  return out;
}

std::complex<double> SolenoidSystem::filter_value(const Point& x) const {
  const Filter& f = filter(x.component);
  return evaluate(f.numerator(), x.angle) * std::pow(2.0, -0.5 * f.half_scale());
}

Point SolenoidSystem::sample_base(std::mt19937_64& rng) const {
  const int c = static_cast<int>(rng() % static_cast<std::uint64_t>(num_components()));
  const auto grid = static_cast<unsigned long>(rng() >> 32);
  return {c, Rational(Integer(grid), Integer(1) << 32)};
}

bool SolenoidSystem::is_unit_filter() const {
  for (int c = 0; c < num_components(); ++c) {
    if (!filter(c).is_constant_one()) return false;
  }
  return true;
}

CircleSystem::CircleSystem(Filter filter) : filter_(std::move(filter)) {
  if (!filter_.qmf_valid()) throw std::invalid_argument("CircleSystem: filter is not a QMF");
  name_ = filter_.is_constant_one() ? "circle-unit" : "circle";
}

const Filter& CircleSystem::filter(int component) const {
  if (component != 0) throw std::out_of_range("CircleSystem: component out of range");
  return filter_;
}

TwoCircleSystem::TwoCircleSystem(std::int64_t branch_count) : filter_(Filter::constant_one(branch_count)) {}

const Filter& TwoCircleSystem::filter(int component) const {
  if (component < 0 || component > 1) throw std::out_of_range("TwoCircleSystem: component out of range");
  return filter_;
}

Observable poly_observable(LaurentPoly p) {
  return [p = std::move(p)](const Point& x) { return evaluate(p, x.angle); };
}

Observable component_indicator(int component) {
  return [component](const Point& x) { return std::complex<double>(x.component == component ? 1.0 : 0.0, 0.0); };
}

TransitionWeights transition_weights(const SolenoidSystem& sys, const Point& x) {
  TransitionWeights tw;
  const auto pre = sys.preimages(x);
  const double n = static_cast<double>(pre.size());
  double sum = 0.0;
  for (const auto& y : pre) {
    const double w = std::norm(sys.filter_value(y)) / n;
    tw.entries.emplace_back(y, w);
    sum += w;
  }
  tw.defect = std::abs(sum - 1.0);
  if (tw.defect > kWeightDefectLimit) {
    throw std::runtime_error("transition_weights: weights sum to " + std::to_string(sum) +
                             "; the filter violates the QMF condition");
  }
  double renormalized = 0.0;
  for (auto& [y, w] : tw.entries) {
    w /= sum;
    renormalized += w;
  }
  if (std::abs(renormalized - 1.0) > kWeightSumTolerance) {
    throw std::runtime_error("transition_weights: renormalization failed");
  }
  return tw;
}

std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t path_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path_index), static_cast<std::uint32_t>(path_index >> 32)};
  return std::mt19937_64(seq);
}

PathSample sample_path(const SolenoidSystem& sys, const Point& x, int n, std::mt19937_64& rng) {
  if (n < 0) throw std::invalid_argument("sample_path: n must be >= 0");
  PathSample path;
  path.x0 = x;
  path.trajectory.reserve(static_cast<std::size_t>(n));
  Point cur = x;
  for (int i = 0; i < n; ++i) {
    const auto tw = transition_weights(sys, cur);
    path.max_defect = std::max(path.max_defect, tw.defect);
    const double u = uniform01(rng);
    double cum = 0.0;
    std::size_t pick = tw.entries.size() - 1;
    for (std::size_t j = 0; j < tw.entries.size(); ++j) {
      cum += tw.entries[j].second;
      if (u < cum) {
        pick = j;
        break;
      }
    }
    // Skip zero-weight tail entries that only rounding could reach.
    while (tw.entries[pick].second == 0.0 && pick > 0) --pick;
    path.log_weight += std::log(tw.entries[pick].second);
    cur = tw.entries[pick].first;
    path.trajectory.push_back(cur);
  }
  return path;
}

PathSample sample_path(const SolenoidSystem& sys, const Point& x, int n, std::uint64_t seed,
                       std::uint64_t path_index) {
  auto rng = path_rng(seed, path_index);
  return sample_path(sys, x, n, rng);
}

MonteCarloEstimate mu_infinity_integral(const SolenoidSystem& sys, const CylinderFunction& F, int depth,
                                        std::size_t n_samples, std::uint64_t seed, unsigned threads) {
  if (depth < 0) throw std::invalid_argument("mu_infinity_integral: depth must be >= 0");
  if (n_samples == 0) throw std::invalid_argument("mu_infinity_integral: need at least one sample");
  std::vector<double> values(n_samples);
  std::vector<double> defects(n_samples);

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<Point> coords;
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = path_rng(seed, i);
      const Point x0 = sys.sample_base(rng);
      const PathSample p = sample_path(sys, x0, depth, rng);
      coords.assign(1, p.x0);
      coords.insert(coords.end(), p.trajectory.begin(), p.trajectory.end());
      values[i] = F(coords);
      defects[i] = p.max_defect;
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_samples)));
  if (threads == 1) {
    work(0, n_samples);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_samples + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(n_samples, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }

  MonteCarloEstimate est;
  est.samples = n_samples;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n_samples);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  est.estimate = mean;
  est.std_error = n_samples > 1 ? std::sqrt(ss / static_cast<double>(n_samples - 1) / static_cast<double>(n_samples)) : 0.0;
  est.max_defect = *std::max_element(defects.begin(), defects.end());
  return est;
}

std::complex<double> tree_expectation(const SolenoidSystem& sys, const Point& x, const Observable& h,
                                      int depth) {
  if (depth < 0) throw std::invalid_argument("tree_expectation: depth must be >= 0");
  std::int64_t leaves = 1;
  for (int i = 0; i < depth; ++i) {
    if (__builtin_mul_overflow(leaves, sys.branch_count(), &leaves) || leaves > kTreeBudget) {
      throw std::length_error("tree_expectation: preimage tree exceeds the enumeration budget");
    }
  }
  std::complex<double> acc{0.0, 0.0};
  tree_walk(sys, x, h, depth, 1.0, acc);
  return acc;
}

std::complex<double> tree_expectation(const SolenoidSystem& sys, const Point& x, const LaurentPoly& h,
                                      int depth) {
  return tree_expectation(sys, x, poly_observable(h), depth);
}

CocycleReport cocycle_limit(const SolenoidSystem& sys, const Observable& h, const Point& x, int path_len,
                            std::size_t n_paths, std::uint64_t seed, int settle, double tolerance) {
  if (path_len < 1) throw std::invalid_argument("cocycle_limit: path_len must be >= 1");
  CocycleReport report;
  report.settle = settle < 0 ? path_len / 2 : std::min(settle, path_len);
  report.tolerance = tolerance;
  double total = 0.0;
  for (std::size_t i = 0; i < n_paths; ++i) {
    const PathSample p = sample_path(sys, x, path_len, seed, i);
    auto at = [&](int n) { return n == 0 ? h(p.x0) : h(p.trajectory[static_cast<std::size_t>(n - 1)]); };
    const std::complex<double> anchor = at(report.settle);
    PathLimit lim;
    for (int n = report.settle + 1; n <= path_len; ++n) lim.oscillation = std::max(lim.oscillation, std::abs(at(n) - anchor));
    lim.limit = at(path_len);
    report.max_oscillation = std::max(report.max_oscillation, lim.oscillation);
    total += lim.oscillation;
    report.paths.push_back(lim);
  }
  report.mean_oscillation = n_paths ? total / static_cast<double>(n_paths) : 0.0;
  return report;
}

std::string to_string(ErgodicVerdict v) {
  switch (v) {
    case ErgodicVerdict::kTrivial: return "trivial";
    case ErgodicVerdict::kConsistentWithErgodic: return "consistent with ergodic";
    case ErgodicVerdict::kNonErgodicWitness: return "non-ergodic witness";
    case ErgodicVerdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

ComponentPoly apply_unit_transfer(const SolenoidSystem& sys, const ComponentPoly& f) {
  if (static_cast<int>(f.size()) != sys.num_components()) {
    throw std::invalid_argument("apply_unit_transfer: one polynomial per component expected");
  }
  ComponentPoly out;
  out.reserve(f.size());
  for (int c = 0; c < sys.num_components(); ++c) out.push_back(apply(sys.filter(c), f[static_cast<std::size_t>(c)]));
  return out;
}

namespace {

bool is_global_constant(const ComponentPoly& f) {
  for (const auto& p : f) {
    if (!p.is_constant() || !(p == f.front())) return false;
  }
  return true;
}

}  // namespace

std::vector<ErgodicityResult> ergodicity_diagnostic(const SolenoidSystem& sys,
                                                    const std::vector<ComponentPoly>& tests, int depth) {
  if (!sys.is_unit_filter()) throw std::invalid_argument("ergodicity_diagnostic: requires m0 = 1");
  std::vector<ErgodicityResult> out;
  for (const auto& f : tests) {
    ErgodicityResult r;
    ComponentPoly cur = f;
    if (is_global_constant(cur)) {
      r.verdict = ErgodicVerdict::kTrivial;
    } else {
      for (int step = 1; step <= depth; ++step) {
        ComponentPoly next = apply_unit_transfer(sys, cur);
        if (next == cur) {
          r.verdict = ErgodicVerdict::kNonErgodicWitness;
          r.steps = step;
          break;
        }
        cur = std::move(next);
        if (is_global_constant(cur)) {
          r.verdict = ErgodicVerdict::kConsistentWithErgodic;
          r.steps = step;
          break;
        }
        r.steps = step;
      }
    }
    r.final_iterate = std::move(cur);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ErgodicityResult> ergodicity_diagnostic(const SolenoidSystem& sys,
                                                    const std::vector<LaurentPoly>& tests, int depth) {
  std::vector<ComponentPoly> lifted;
  for (const auto& p : tests) lifted.emplace_back(static_cast<std::size_t>(sys.num_components()), p);
  return ergodicity_diagnostic(sys, lifted, depth);
}

ComponentPoly indicator_poly(const SolenoidSystem& sys, int component) {
  ComponentPoly f(static_cast<std::size_t>(sys.num_components()));
  f.at(static_cast<std::size_t>(component)) = LaurentPoly::constant(1);
  return f;
}

}  // namespace cantorwave
