// cantorwave: verification commands for the Cantor wavelet transfer operator,
// the cascade algorithm, and the solenoid dilation.
//
// Every command builds a report holding the resolved configuration, a list of
// named checks, and the computed values. The process exits 0 only when every
// check passes, 1 when a check fails, and 2 on invalid input or a violated
// precondition.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cantorwave/cantorwave.hpp"

using namespace cantorwave;

namespace {

struct Check {
  std::string name;
  bool passed;
};

struct Report {
  std::string command;
  Json config = Json::object();
  Json result = Json::object();
  std::vector<Check> checks;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> summary;

  void check(const std::string& name, bool ok) { checks.push_back({name, ok}); }

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["config"] = config;
    Json cs = Json::array();
    for (const auto& c : checks) cs.push_back(Json{{"name", c.name}, {"passed", c.passed}});
    j["checks"] = cs;
    j["passed"] = passed();
    j["result"] = result;
    return j;
  }
};

struct Globals {
  std::uint64_t seed = 42;
  bool json = false;
  bool csv = false;
  std::string out;
};

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("not a rational number: " + s);
  q.canonicalize();
  return q;
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string rat_text(const Rational& q) {
  std::ostringstream s;
  s << q.get_str() << " (" << q.get_d() << ")";
  return s.str();
}

Json complex_record(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// ---------------------------------------------------------------- filters

struct FilterOptions {
  std::string name = "cantor";
  std::string numerator;
  int half_scale = 1;
  std::int64_t branches = 3;

  void add_to(CLI::App* app) {
    app->add_option("--filter", name, "Named filter: cantor, haar, one, custom")
        ->check(CLI::IsMember({"cantor", "haar", "one", "custom"}));
    app->add_option("--numerator", numerator, "Numerator polynomial for --filter custom, e.g. \"1 + z^2\"");
    app->add_option("--half-scale", half_scale, "Power s in the 2^{-s/2} normalization for --filter custom");
    app->add_option("--N", branches, "Branch count for --filter one or custom")->check(CLI::Range(2, 1000));
  }

  Filter build() const {
    if (name == "cantor") return Filter::cantor();
    if (name == "haar") return Filter::haar();
    if (name == "one") return Filter::constant_one(branches);
    if (numerator.empty()) throw std::invalid_argument("--filter custom needs --numerator");
    return Filter(parse_laurent(numerator), half_scale, branches);
  }

  Json describe(const Filter& f) const {
    return Json{{"name", name},
                {"numerator", f.numerator().to_string()},
                {"half_scale", f.half_scale()},
                {"N", f.branch_count()}};
  }
};

// ---------------------------------------------------------------- fixed point

struct FixedPointOptions {
  std::int64_t K = 6561;
  int n_max = -1;
  std::string bound_constant = "3";
};

void run_residual(const CantorFixedSequence& seq, Report& r) {
  const auto res = fixed_point_residual(seq);
  r.result["residual"] = Json{{"max_abs", rational_record(res.max_abs_residual)},
                              {"checked_range", res.checked_range},
                              {"worst_index", res.worst_index ? Json(*res.worst_index) : Json(nullptr)}};
  r.result["antisymmetric"] = seq.is_antisymmetric();
  r.result["even_support"] = seq.has_even_support();
  r.check("residual_zero", sgn(res.max_abs_residual) == 0);
  r.summary.push_back("fixed-point residual over |k| <= " + std::to_string(res.checked_range) + ": " +
                      rat_text(res.max_abs_residual));
}

void run_growth(const CantorFixedSequence& seq, int n_max, const Rational& c, Report& r) {
  const auto s = energy_growth(seq, n_max);
  Json rows = Json::array();
  bool increasing = true;
  bool above = true;
  r.csv_header = {"n", "S_n_num", "S_n_den", "S_n_float", "bound_float"};
  for (const auto& [n, v] : s) {
    const Rational bound = Rational(c * Rational(ipow(3, n), ipow(2, n)));
    if (n > 0) {
      if (!(v > s[static_cast<std::size_t>(n - 1)].second)) increasing = false;
      if (v < bound) above = false;
    }
    rows.push_back(Json{{"n", n}, {"S_n", rational_record(v)}, {"bound", rational_record(bound)}});
    r.csv_rows.push_back({std::to_string(n), v.get_num().get_str(), v.get_den().get_str(), fmt_double(v.get_d()),
                          fmt_double(bound.get_d())});
    r.summary.push_back("S_" + std::to_string(n) + " = " + rat_text(v));
  }
  bool monotone = true;
  for (int n = 1; n <= n_max; ++n) monotone = monotone && monotone_tail_check(seq, n);
  r.result["growth"] = rows;
  r.check("growth_increasing", increasing);
  r.check("growth_bound", above);
  r.check("monotone_tail", monotone);
}

int resolve_growth_steps(const FixedPointOptions& o) {
  const int available = max_growth_steps(o.K);
  if (available < 1) {
    throw std::invalid_argument("truncation guard: K = " + std::to_string(o.K) +
                                " is too small for any growth step (need K >= 18)");
  }
  return o.n_max < 0 ? std::min(available, 10) : o.n_max;
}

Report cmd_fixed_point(const FixedPointOptions& o, const std::string& mode) {
  Report r;
  r.command = mode;
  const Rational c = parse_rational(o.bound_constant);
  const bool do_residual = mode != "fixedpoint growth";
  const bool do_growth = mode != "fixedpoint verify";
  const int n_max = do_growth ? resolve_growth_steps(o) : 0;
  r.config = Json{{"K", o.K}};
  if (do_growth) {
    r.config["n_max"] = n_max;
    r.config["bound_constant"] = c.get_str();
  }
  const auto seq = build_sequence(o.K);
  if (do_residual) run_residual(seq, r);
  if (do_growth) run_growth(seq, n_max, c, r);
  r.result["partial_l2"] = rational_record(partial_l2(seq, o.K));
  return r;
}

// ---------------------------------------------------------------- cascade

struct CascadeOptions {
  std::string preset = "half-cell";
  std::string xi_file;
  int n_max = 10;
  int spatial_max = 12;
  int transfer_iters = 40;
};

CellFunction cascade_seed(const CascadeOptions& o) {
  if (!o.xi_file.empty()) {
    std::ifstream in(o.xi_file);
    if (!in) throw std::invalid_argument("cannot open " + o.xi_file);
    return cell_function_from_json(Json::parse(in));
  }
  if (o.preset == "chi-c") return CellFunction::scaling_function();
  if (o.preset == "half-cell") return CellFunction::cell({1, 0});
  return translate(CellFunction::scaling_function(), 1);
}

Report cmd_cascade(const CascadeOptions& o) {
  Report r;
  r.command = "cascade";
  const CellFunction xi = cascade_seed(o);
  r.config = Json{{"preset", o.xi_file.empty() ? Json(o.preset) : Json(nullptr)},
                  {"xi", to_json(xi)},
                  {"n_max", o.n_max},
                  {"spatial_max", o.spatial_max},
                  {"transfer_iters", o.transfer_iters}};
  const int n_spatial = std::min(o.n_max, o.spatial_max);
  const auto spatial = cascade_divergence(xi, n_spatial);
  const auto transfer = cascade_divergence_transfer(xi, o.n_max);
  const LaurentPoly h0 = cascade_defect_correlation(xi);
  const auto conv = iterate_to_invariant(Filter::cantor(), h0, o.transfer_iters);
  const auto& last = conv.iterates.back();

  bool agree = true;
  Json rows = Json::array();
  r.csv_header = {"n", "value_num", "value_den", "float_value"};
  for (std::size_t n = 0; n < transfer.size(); ++n) {
    const Rational& v = transfer[n].second;
    Json row{{"n", n}, {"transfer", rational_record(v)}};
    if (n < spatial.size()) {
      row["spatial"] = rational_record(spatial[n].second);
      agree = agree && spatial[n].second == v;
    }
    rows.push_back(row);
    r.csv_rows.push_back({std::to_string(n), v.get_num().get_str(), v.get_den().get_str(), fmt_double(v.get_d())});
  }
  r.result["series"] = rows;
  r.result["h0"] = to_json(h0);
  r.result["nu_h0"] = Json{{"estimate", rational_record(last.constant_part.re)},
                           {"mass_bound", rational_record(last.nonconstant_l1_mass)},
                           {"iterations", conv.iterations_used},
                           {"converged", conv.converged()}};
  r.check("routes_agree", agree);
  const Rational gap = abs(transfer.back().second - last.constant_part.re);
  r.result["final_gap"] = rational_record(gap);
  r.summary.push_back("series ||M^{n+1} xi - M^n xi||^2, n <= " + std::to_string(o.n_max) +
                      ", last = " + rat_text(transfer.back().second));
  r.summary.push_back("nu(h0) ~ " + rat_text(last.constant_part.re) + " with mass bound " +
                      rat_text(last.nonconstant_l1_mass));
  return r;
}

// ---------------------------------------------------------------- transfer

struct TransferOptions {
  std::string f = "z^6";
  int max_iter = kDefaultMaxIter;
  std::string tol = "1/1000000000";
  FilterOptions filter;
};

Report cmd_transfer(const TransferOptions& o) {
  Report r;
  r.command = "transfer";
  const Filter m0 = o.filter.build();
  const LaurentPoly f = parse_laurent(o.f);
  const Rational tol = parse_rational(o.tol);
  r.config = Json{{"f", f.to_string()}, {"filter", o.filter.describe(m0)}, {"max_iter", o.max_iter},
                  {"tol", tol.get_str()}};
  r.result["qmf"] = qmf_check(m0);
  r.check("qmf", qmf_check(m0));
  if (!qmf_check(m0)) return r;
  const auto conv = iterate_to_invariant(m0, f, o.max_iter, tol);
  r.result["convergence"] = to_json(conv);
  r.result["final_iterate"] = to_json(conv.final_iterate);
  r.check("converged", conv.converged());
  r.csv_header = {"n", "const_re", "const_im", "mass_num", "mass_den", "mass_float"};
  for (const auto& it : conv.iterates) {
    r.csv_rows.push_back({std::to_string(it.n), it.constant_part.re.get_str(), it.constant_part.im.get_str(),
                          it.nonconstant_l1_mass.get_num().get_str(), it.nonconstant_l1_mass.get_den().get_str(),
                          fmt_double(it.nonconstant_l1_mass.get_d())});
  }
  if (conv.converged()) {
    std::ostringstream s;
    s << "limit " << *conv.limit << " after " << conv.iterations_used << " iterations";
    r.summary.push_back(s.str());
  } else {
    r.summary.push_back("not converged after " + std::to_string(conv.iterations_used) + " iterations");
  }
  return r;
}

// ---------------------------------------------------------------- nullspace

struct NullspaceOptions {
  int level = 3;
  std::vector<std::int64_t> window{kDefaultWindowLo, kDefaultWindowHi};
};

Report cmd_nullspace(const NullspaceOptions& o) {
  Report r;
  r.command = "nullspace";
  r.config = Json{{"level", o.level}, {"window", o.window}};
  const auto basis = refinement_nullspace(o.level, o.window[0], o.window[1]);
  Json out = Json::array();
  bool invariant = true;
  for (const auto& b : basis) {
    out.push_back(to_json(b));
    invariant = invariant && cascade(b) == b;
  }
  bool spans_chi = false;
  if (basis.size() == 1) {
    const auto chi = refine(CellFunction::scaling_function(), o.level);
    const auto& c = basis[0].coeffs();
    if (c.size() == chi.coeffs().size()) {
      const Rational ratio = c.begin()->second;
      spans_chi = true;
      for (const auto& [k, v] : chi.coeffs()) {
        auto it = c.find(k);
        spans_chi = spans_chi && it != c.end() && it->second == ratio * v;
      }
    }
  }
  r.result["dimension"] = basis.size();
  r.result["spanned_by_chi_C"] = spans_chi;
  r.result["basis"] = out;
  r.check("basis_fixed_by_M", invariant);
  r.summary.push_back("dimension " + std::to_string(basis.size()) + (spans_chi ? ", spanned by chi_C" : ""));
  return r;
}

// ---------------------------------------------------------------- solenoid

struct SystemOptions {
  std::string system = "cantor";
  std::int64_t branches = 3;

  void add_to(CLI::App* app) {
    app->add_option("--system", system, "cantor, unit (one circle, m0 = 1) or two-circle")
        ->check(CLI::IsMember({"cantor", "unit", "two-circle"}));
    app->add_option("--N", branches, "Branch count for unit and two-circle")->check(CLI::Range(2, 1000));
  }

  std::unique_ptr<SolenoidSystem> build() const {
    if (system == "cantor") return std::make_unique<CircleSystem>(Filter::cantor());
    if (system == "unit") return std::make_unique<CircleSystem>(Filter::constant_one(branches));
    return std::make_unique<TwoCircleSystem>(branches);
  }
};

struct WalkOptions {
  SystemOptions sys;
  std::string angle = "0";
  int component = 0;
  int len = 50;
  std::size_t paths = 10000;
  std::string observable = "z + z^-1";
};

Report cmd_walk(const WalkOptions& o, std::uint64_t seed) {
  Report r;
  r.command = "solenoid walk";
  const auto sys = o.sys.build();
  if (o.component < 0 || o.component >= sys->num_components()) throw std::invalid_argument("--component out of range");
  const Point x{o.component, parse_rational(o.angle)};
  if (sgn(x.angle) < 0 || x.angle >= 1) throw std::invalid_argument("--angle must lie in [0, 1)");
  if (o.len < 0) throw std::invalid_argument("--len must be >= 0");
  if (o.paths < 2) throw std::invalid_argument("--paths must be >= 2");
  const LaurentPoly h = parse_laurent(o.observable);
  r.config = Json{{"system", sys->name()}, {"N", sys->branch_count()}, {"angle", x.angle.get_str()},
                  {"component", x.component}, {"len", o.len}, {"paths", o.paths},
                  {"observable", h.to_string()}, {"seed", seed}};

  const auto tw = transition_weights(*sys, x);
  Json weights = Json::array();
  for (const auto& [y, w] : tw.entries) weights.push_back(Json{{"angle", y.angle.get_str()}, {"weight", w}});

  // Path mean of Re h(x_len) under P_x against the exact transfer value (R^len h)(x).
  std::vector<double> values(o.paths);
  double max_defect = tw.defect;
  double sum_defect = 0.0;
  bool exact_orbits = true;
  for (std::size_t i = 0; i < o.paths; ++i) {
    const auto p = sample_path(*sys, x, o.len, seed, i);
    Point prev = p.x0;
    for (const auto& y : p.trajectory) {
      exact_orbits = exact_orbits && sys->forward(y) == prev;
      prev = y;
    }
    values[i] = evaluate(h, prev.angle).real();
    max_defect = std::max(max_defect, p.max_defect);
    sum_defect += p.max_defect;
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(o.paths);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / static_cast<double>(o.paths - 1) / static_cast<double>(o.paths));
  const Filter& m0 = sys->filter(o.component);
  const double exact = evaluate(apply_power(m0, h, o.len), x.angle).real();
  const double z_score = se > 0 ? std::abs(mean - exact) / se : (std::abs(mean - exact) <= 1e-9 ? 0.0 : INFINITY);

  const auto coc = cocycle_limit(*sys, poly_observable(h), x, std::max(o.len, 1), std::min<std::size_t>(o.paths, 1000), seed);

  r.result["transition_weights"] = weights;
  r.result["defect"] = Json{{"max", max_defect}, {"mean", sum_defect / static_cast<double>(o.paths)},
                            {"limit", kWeightDefectLimit}};
  r.result["path_mean"] = Json{{"estimate", mean}, {"std_error", se}, {"exact", exact}, {"z_score", z_score}};
  r.result["cocycle"] = Json{{"paths", coc.paths.size()}, {"settle", coc.settle},
                             {"max_oscillation", coc.max_oscillation}, {"mean_oscillation", coc.mean_oscillation},
                             {"tolerance", coc.tolerance}, {"consistent", coc.consistent()}};
  r.check("exact_backward_orbits", exact_orbits);
  r.check("weight_defect", max_defect <= kWeightDefectLimit);
  r.check("path_mean_within_4_sigma", z_score <= 4.0);
  std::ostringstream s;
  s << "E_x[Re h(x_" << o.len << ")] = " << mean << " +/- " << se << ", exact " << exact;
  r.summary.push_back(s.str());
  r.summary.push_back(std::string("cocycle test on h: ") + (coc.consistent() ? "settles" : "oscillates") +
                      " (max oscillation " + fmt_double(coc.max_oscillation) + ")");
  return r;
}

// ---------------------------------------------------------------- ergodicity

struct ErgodicityOptions {
  SystemOptions sys{"two-circle", 3};
  int depth = 10;
  std::vector<std::string> polys;
  std::size_t paths = 1000;
};

Report cmd_ergodicity(const ErgodicityOptions& o, std::uint64_t seed) {
  Report r;
  r.command = "ergodicity";
  const auto sys = o.sys.build();
  std::vector<ComponentPoly> tests;
  std::vector<std::string> labels;
  for (const auto& s : o.polys) {
    tests.emplace_back(static_cast<std::size_t>(sys->num_components()), parse_laurent(s));
    labels.push_back(s);
  }
  if (o.polys.empty()) {
    for (std::int64_t k = -81; k <= 81; ++k) {
      if (k == 0) continue;
      tests.emplace_back(static_cast<std::size_t>(sys->num_components()), LaurentPoly::monomial(k));
      labels.push_back("z^" + std::to_string(k));
    }
  }
  for (int c = 0; c < sys->num_components() && sys->num_components() > 1; ++c) {
    tests.push_back(indicator_poly(*sys, c));
    labels.push_back("1_{component " + std::to_string(c) + "}");
  }
  r.config = Json{{"system", sys->name()}, {"N", sys->branch_count()}, {"depth", o.depth}, {"tests", labels},
                  {"paths", o.paths}, {"seed", seed}};
  const auto results = ergodicity_diagnostic(*sys, tests, o.depth);
  Json out = Json::array();
  int witnesses = 0;
  int inconclusive = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    if (res.verdict == ErgodicVerdict::kNonErgodicWitness) ++witnesses;
    if (res.verdict == ErgodicVerdict::kInconclusive) ++inconclusive;
    Json fin = Json::array();
    for (const auto& p : res.final_iterate) fin.push_back(p.to_string());
    out.push_back(Json{{"test", labels[i]}, {"verdict", to_string(res.verdict)}, {"steps", res.steps},
                       {"final", fin}});
    if (res.verdict == ErgodicVerdict::kNonErgodicWitness) {
      r.summary.push_back("non-ergodic witness: " + labels[i] + " is an exact nonconstant fixed point");
    }
  }
  r.result["verdicts"] = out;
  const std::string overall =
      witnesses > 0 ? "non-ergodic" : (inconclusive > 0 ? "inconclusive" : "consistent with ergodic");
  r.result["overall"] = overall;

  // Cocycle limits of the fixed indicators along sampled backward orbits.
  if (sys->num_components() > 1) {
    Json cocycles = Json::array();
    bool settled = true;
    for (int c = 0; c < sys->num_components(); ++c) {
      const auto rep = cocycle_limit(*sys, component_indicator(c), Point{c, Rational(1, 7)}, 30, o.paths, seed, 0);
      cocycles.push_back(Json{{"component", c}, {"max_oscillation", rep.max_oscillation},
                              {"limit", complex_record(rep.paths.empty() ? 0.0 : rep.paths[0].limit)}});
      settled = settled && rep.consistent();
    }
    r.result["indicator_cocycles"] = cocycles;
    r.check("indicator_cocycles_settle", settled);
  }
  r.check("no_inconclusive", inconclusive == 0);
  r.summary.push_back("overall: " + overall + " (" + std::to_string(results.size()) + " tests)");
  return r;
}

// ---------------------------------------------------------------- detail basis

Report cmd_detail_basis(int window) {
  Report r;
  r.command = "detail-basis";
  r.config = Json{{"window", window}};
  const auto gens = detail_basis(window);
  const CellFunction chi = CellFunction::scaling_function();
  const std::int64_t span = checked_pow(3, window - 1);
  bool orthogonal = true;
  bool in_v1 = true;
  Json out = Json::array();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    for (std::int64_t k = -1; k <= span; ++k) orthogonal = orthogonal && sgn(inner(g.function, translate(chi, k))) == 0;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      orthogonal = orthogonal && sgn(inner(g.function, gens[j].function)) == 0;
    }
    in_v1 = in_v1 && mra_project(g.function, 1) == g.function;
    out.push_back(Json{{"function", to_json(g.function)}, {"squared_norm", rational_record(g.squared_norm)}});
  }
  r.result["count"] = gens.size();
  r.result["generators"] = out;
  r.check("orthogonal_to_V0_and_each_other", orthogonal);
  r.check("contained_in_V1", in_v1);
  r.summary.push_back(std::to_string(gens.size()) + " detail generators on " + std::to_string(span) +
                      " integer translates");
  return r;
}

// ---------------------------------------------------------------- output

void emit(const Report& r, const Globals& g) {
  std::ostringstream body;
  if (g.csv) {
    if (r.csv_header.empty()) throw std::invalid_argument("--csv is not available for " + r.command);
    for (std::size_t i = 0; i < r.csv_header.size(); ++i) body << (i ? "," : "") << r.csv_header[i];
    body << "\n";
    for (const auto& row : r.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) body << (i ? "," : "") << row[i];
      body << "\n";
    }
  } else if (g.json || !g.out.empty()) {
    body << r.to_json().dump(2) << "\n";
  } else {
    body << r.command << "\n";
    for (const auto& line : r.summary) body << "  " << line << "\n";
    for (const auto& c : r.checks) body << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << "\n";
  }
  if (g.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(g.out);
    if (!f) throw std::runtime_error("cannot write " + g.out);
    f << body.str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and statistical checks for the Cantor wavelet transfer operator"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--seed", g.seed, "Random seed for sampling commands");
  auto* json_flag = app.add_flag("--json", g.json, "Write the full JSON report");
  auto* csv_flag = app.add_flag("--csv", g.csv, "Write the series as CSV");
  json_flag->excludes(csv_flag);
  app.add_option("--out", g.out, "Write output to a file instead of stdout");

  FixedPointOptions prop;
  auto* verify = app.add_subcommand("verify-prop21", "Fixed point in l^2 but not l^1: residual, growth, monotone tails");
  auto* fixedpoint = app.add_subcommand("fixedpoint", "Fixed point checks split into verify and growth");
  fixedpoint->require_subcommand(1);
  auto* fp_verify = fixedpoint->add_subcommand("verify", "Exact residual of the explicit fixed point");
  auto* fp_growth = fixedpoint->add_subcommand("growth", "Exact weighted energies S_n");
  for (auto* sc : {verify, fp_verify, fp_growth}) {
    sc->add_option("--K", prop.K, "Truncation |n| <= K")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  }
  for (auto* sc : {verify, fp_growth}) {
    sc->add_option("--n-max", prop.n_max, "Largest growth step (default: as many as K allows, at most 10)");
    sc->add_option("--bound-constant", prop.bound_constant, "c in the check S_n >= c (3/2)^n");
  }

  CascadeOptions casc;
  auto* cascade_cmd = app.add_subcommand("cascade", "Cascade algorithm divergence, cell and transfer routes");
  cascade_cmd->add_option("--preset", casc.preset, "chi-c, half-cell or translate")
      ->check(CLI::IsMember({"chi-c", "half-cell", "translate"}));
  cascade_cmd->add_option("--xi", casc.xi_file, "Cell function JSON file for the initial function");
  cascade_cmd->add_option("--n-max", casc.n_max, "Series length")->check(CLI::Range(0, 10000));
  cascade_cmd->add_option("--spatial-max", casc.spatial_max, "Steps computed on cells as well (cell count doubles per step)")
      ->check(CLI::Range(0, kMaxSpatialCascadeSteps));
  cascade_cmd->add_option("--transfer-iters", casc.transfer_iters, "Transfer iterations for nu(h0)")
      ->check(CLI::Range(0, 100000));

  TransferOptions tr;
  auto* transfer_cmd = app.add_subcommand("transfer", "Iterate the transfer operator to its invariant constant");
  transfer_cmd->add_option("--f", tr.f, "Laurent polynomial, e.g. \"z^6\" or \"1 + 1/2 z^-2\"");
  transfer_cmd->add_option("--max-iter", tr.max_iter, "Iteration cap")->check(CLI::Range(0, 1000000));
  transfer_cmd->add_option("--tol", tr.tol, "Mass tolerance as a rational, e.g. 1/1000000000");
  tr.filter.add_to(transfer_cmd);

  NullspaceOptions ns;
  auto* ns_cmd = app.add_subcommand("nullspace", "Exact solutions of the refinement equation on a window");
  ns_cmd->add_option("--level", ns.level, "Cell level of the unknowns")->check(CLI::Range(1, 12));
  ns_cmd->add_option("--window", ns.window, "Integer window lo hi (half-open)")->expected(2);

  WalkOptions walk;
  auto* sol_cmd = app.add_subcommand("solenoid", "Backward orbits of the solenoid dilation");
  sol_cmd->require_subcommand(1);
  auto* walk_cmd = sol_cmd->add_subcommand("walk", "Sample backward orbits from a point");
  walk.sys.add_to(walk_cmd);
  walk_cmd->add_option("--angle", walk.angle, "Start angle as a rational in [0, 1)");
  walk_cmd->add_option("--component", walk.component, "Start component");
  walk_cmd->add_option("--len", walk.len, "Orbit length")->check(CLI::Range(0, 100000));
  walk_cmd->add_option("--paths", walk.paths, "Number of sampled orbits");
  walk_cmd->add_option("--observable", walk.observable, "Laurent polynomial h to average along orbits");

  ErgodicityOptions erg;
  auto* erg_cmd = app.add_subcommand("ergodicity", "Ergodicity diagnostic for m0 = 1 systems");
  erg.sys.add_to(erg_cmd);
  erg_cmd->add_option("--depth", erg.depth, "Iteration depth")->check(CLI::Range(0, 1000));
  erg_cmd->add_option("--f", erg.polys, "Test polynomials (default: z^k, 0 < |k| <= 81)");
  erg_cmd->add_option("--paths", erg.paths, "Sampled orbits for the indicator cocycle check");

  int window = 2;
  auto* db_cmd = app.add_subcommand("detail-basis", "Orthogonal generators of the detail space W_0");
  db_cmd->add_option("--window", window, "Translates [0, 3^{window-1})")->check(CLI::Range(1, 8));

  CLI11_PARSE(app, argc, argv);

  try {
    Report r;
    if (verify->parsed()) {
      r = cmd_fixed_point(prop, "verify-prop21");
    } else if (fp_verify->parsed()) {
      r = cmd_fixed_point(prop, "fixedpoint verify");
    } else if (fp_growth->parsed()) {
      r = cmd_fixed_point(prop, "fixedpoint growth");
    } else if (cascade_cmd->parsed()) {
      r = cmd_cascade(casc);
    } else if (transfer_cmd->parsed()) {
      r = cmd_transfer(tr);
    } else if (ns_cmd->parsed()) {
      r = cmd_nullspace(ns);
    } else if (walk_cmd->parsed()) {
      r = cmd_walk(walk, g.seed);
    } else if (erg_cmd->parsed()) {
      r = cmd_ergodicity(erg, g.seed);
    } else if (db_cmd->parsed()) {
      r = cmd_detail_basis(window);
    }
    r.config["seed"] = g.seed;
    emit(r, g);
    for (const auto& c : r.checks) {
      if (!c.passed) {
        std::cerr << "check failed: " << c.name << "\n";
        return 1;
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
