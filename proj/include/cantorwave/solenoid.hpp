#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cantorwave/laurent.hpp"
#include "cantorwave/transfer.hpp"

namespace cantorwave {

/// A point of X: a circle component and an exact angle in [0, 1).
struct Point {
  int component = 0;
  Rational angle{0};

  friend bool operator==(const Point& a, const Point& b) {
    return a.component == b.component && a.angle == b.angle;
  }
};

/// X as a finite union of circles, each mapped to itself by
/// theta -> N theta mod 1, with a filter m0 per component.
class SolenoidSystem {
 public:
  virtual ~SolenoidSystem() = default;

  virtual std::string name() const = 0;
  virtual int num_components() const = 0;
  virtual const Filter& filter(int component) const = 0;

  std::int64_t branch_count() const { return filter(0).branch_count(); }

  /// r(x).
  Point forward(const Point& x) const;
  /// The N points y with r(y) = x, ordered by j in (theta + j)/N.
  std::vector<Point> preimages(const Point& x) const;
  /// m0(x) in floating point.
  std::complex<double> filter_value(const Point& x) const;
  /// Draw from mu: uniform component, then an angle on a 2^-32 grid.
  Point sample_base(std::mt19937_64& rng) const;
  /// True when every component filter is m0 = 1.
  bool is_unit_filter() const;
};

/// One circle, r(theta) = N theta, arbitrary QMF filter.
class CircleSystem final : public SolenoidSystem {
 public:
  explicit CircleSystem(Filter filter);
  std::string name() const override { return name_; }
  int num_components() const override { return 1; }
  const Filter& filter(int component) const override;

 private:
  Filter filter_;
  std::string name_;
};

/// Two disjoint invariant circles with m0 = 1: r is not ergodic.
class TwoCircleSystem final : public SolenoidSystem {
 public:
  explicit TwoCircleSystem(std::int64_t branch_count);
  std::string name() const override { return "two-circle"; }
  int num_components() const override { return 2; }
  const Filter& filter(int component) const override;

 private:
  Filter filter_;
};

/// Function on X, evaluated in floating point.
using Observable = std::function<std::complex<double>(const Point&)>;

/// p(e^{2 pi i theta}), ignoring the component.
Observable poly_observable(LaurentPoly p);
/// Indicator of one component.
Observable component_indicator(int component);

inline constexpr double kWeightSumTolerance = 1e-12;
inline constexpr double kWeightDefectLimit = 1e-9;

struct TransitionWeights {
  std::vector<std::pair<Point, double>> entries;
  double defect = 0.0;  // |sum W - 1| before renormalization
};

/// Preimages of x with W(y) = |m0(y)|^2 / N, renormalized to sum 1.
/// Throws std::runtime_error when the defect exceeds kWeightDefectLimit.
TransitionWeights transition_weights(const SolenoidSystem& sys, const Point& x);

struct PathSample {
  Point x0;
  std::vector<Point> trajectory;  // x_1, ..., x_n with r(x_{i+1}) = x_i
  double log_weight = 0.0;        // sum log W(x_i); diagnostic only
  double max_defect = 0.0;
};

/// Per-path RNG: a fixed function of (seed, path_index), so results do not
/// depend on how paths are scheduled across threads.
std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t path_index);

/// Backward orbit of length n drawn from P_x.
PathSample sample_path(const SolenoidSystem& sys, const Point& x, int n, std::uint64_t seed,
                       std::uint64_t path_index = 0);
PathSample sample_path(const SolenoidSystem& sys, const Point& x, int n, std::mt19937_64& rng);

/// Cylinder function of the coordinates x_0, ..., x_d.
using CylinderFunction = std::function<double(std::span<const Point>)>;

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  double max_defect = 0.0;
};

/// Monte Carlo estimate of the mu_infinity integral of F: x_0 ~ mu, then a
/// P_{x_0} path to depth d. Samples are summed in index order after a
/// parallel fill, so the result is independent of `threads`.
MonteCarloEstimate mu_infinity_integral(const SolenoidSystem& sys, const CylinderFunction& F, int depth,
                                        std::size_t n_samples, std::uint64_t seed, unsigned threads = 1);

/// Largest tree the exact expectation will enumerate.
inline constexpr std::int64_t kTreeBudget = 59049;  // 3^10

/// sum over the depth-n preimage tree of W(x_1)...W(x_n) h(x_n), which is
/// (R^n h)(x). Throws std::length_error past kTreeBudget leaves.
std::complex<double> tree_expectation(const SolenoidSystem& sys, const Point& x, const Observable& h,
                                      int depth);
std::complex<double> tree_expectation(const SolenoidSystem& sys, const Point& x, const LaurentPoly& h,
                                      int depth);

struct PathLimit {
  double oscillation = 0.0;  // max_{n > settle} |h(x_n) - h(x_settle)|
  std::complex<double> limit;  // h at the last point
};

struct CocycleReport {
  std::vector<PathLimit> paths;
  int settle = 0;
  double max_oscillation = 0.0;
  double mean_oscillation = 0.0;
  double tolerance = 0.0;
  /// Oscillation within tolerance on every path; false flags h as not
  /// giving a cocycle along sampled paths.
  bool consistent() const { return max_oscillation <= tolerance; }
};

/// Evaluates a candidate fixed point h along sampled backward orbits from x.
/// settle < 0 selects path_len / 2.
CocycleReport cocycle_limit(const SolenoidSystem& sys, const Observable& h, const Point& x, int path_len,
                            std::size_t n_paths, std::uint64_t seed, int settle = -1, double tolerance = 1e-9);

/// A function on X given by one polynomial per component.
using ComponentPoly = std::vector<LaurentPoly>;

enum class ErgodicVerdict {
  kTrivial,                // the input is already constant
  kConsistentWithErgodic,  // flowed to a constant
  kNonErgodicWitness,      // exact nonconstant fixed point
  kInconclusive,           // depth exhausted
};

std::string to_string(ErgodicVerdict v);

struct ErgodicityResult {
  ErgodicVerdict verdict = ErgodicVerdict::kInconclusive;
  int steps = 0;
  ComponentPoly final_iterate;
};

/// (R_1 f)_k = f_{Nk} componentwise.
ComponentPoly apply_unit_transfer(const SolenoidSystem& sys, const ComponentPoly& f);

/// Iterates R_1 on each test function for up to `depth` steps. Requires m0 = 1
/// on every component; throws std::invalid_argument otherwise.
std::vector<ErgodicityResult> ergodicity_diagnostic(const SolenoidSystem& sys,
                                                    const std::vector<ComponentPoly>& tests, int depth);
/// Same, with each polynomial placed on every component.
std::vector<ErgodicityResult> ergodicity_diagnostic(const SolenoidSystem& sys,
                                                    const std::vector<LaurentPoly>& tests, int depth);

/// Indicator of one component as a ComponentPoly.
ComponentPoly indicator_poly(const SolenoidSystem& sys, int component);

}  // namespace cantorwave
