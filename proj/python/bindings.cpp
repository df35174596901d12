#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>

#include "cantorwave/cantorwave.hpp"

namespace py = pybind11;
using namespace cantorwave;

namespace {

// Rationals cross the boundary as fractions.Fraction, built from their
// decimal string so that no precision is lost on either side.
py::object to_fraction(const Rational& q) {
  static const auto* fraction = new py::object(py::module_::import("fractions").attr("Fraction"));
  return (*fraction)(q.get_str());
}

Rational from_py(const py::handle& obj) {
  const std::string s = py::str(obj);
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw py::value_error("not an exact rational: " + s);
  q.canonicalize();
  return q;
}

py::object coeff_to_py(const RatC& c) {
  if (c.is_real()) return to_fraction(c.re);
  return py::make_tuple(to_fraction(c.re), to_fraction(c.im));
}

RatC coeff_from_py(const py::handle& obj) {
  if (py::isinstance<py::tuple>(obj)) {
    const auto t = obj.cast<py::tuple>();
    if (t.size() != 2) throw py::value_error("complex coefficient must be (re, im)");
    return RatC(from_py(t[0]), from_py(t[1]));
  }
  return RatC(from_py(obj));
}

py::dict poly_to_py(const LaurentPoly& p) {
  py::dict d;
  for (const auto& [k, c] : p.coeffs()) d[py::int_(k)] = coeff_to_py(c);
  return d;
}

LaurentPoly poly_from_py(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return parse_laurent(obj.cast<std::string>());
  LaurentPoly p;
  for (const auto& [k, v] : obj.cast<py::dict>()) p.accumulate(k.cast<std::int64_t>(), coeff_from_py(v));
  return p;
}

py::dict cell_to_py(const CellFunction& f) {
  py::dict coeffs;
  for (const auto& [k, c] : f.coeffs()) coeffs[py::int_(k)] = to_fraction(c);
  py::dict d;
  d["level"] = f.level();
  d["half_scale"] = f.half_scale();
  d["coeffs"] = coeffs;
  return d;
}

CellFunction cell_from_py(const py::dict& d) {
  CellFunction::Map m;
  for (const auto& [k, v] : d["coeffs"].cast<py::dict>()) m.emplace(k.cast<std::int64_t>(), from_py(v));
  const int half_scale = d.contains("half_scale") ? d["half_scale"].cast<int>() : 0;
  return CellFunction(d["level"].cast<int>(), std::move(m), half_scale);
}

py::list series_to_py(const std::vector<std::pair<int, Rational>>& s) {
  py::list out;
  for (const auto& [n, v] : s) out.append(to_fraction(v));
  return out;
}

std::unique_ptr<SolenoidSystem> make_system(const std::string& name, std::int64_t n) {
  if (name == "cantor") return std::make_unique<CircleSystem>(Filter::cantor());
  if (name == "unit") return std::make_unique<CircleSystem>(Filter::constant_one(n));
  if (name == "two-circle") return std::make_unique<TwoCircleSystem>(n);
  throw py::value_error("unknown system: " + name + " (expected cantor, unit or two-circle)");
}

}  // namespace

PYBIND11_MODULE(_cantorwave, m) {
  m.doc() = "Exact transfer-operator, cascade and solenoid computations for the Cantor wavelet";

  py::class_<Filter>(m, "Filter")
      .def(py::init([](const py::object& numerator, int half_scale, std::int64_t n) {
             return Filter(poly_from_py(numerator), half_scale, n);
           }),
           py::arg("numerator"), py::arg("half_scale"), py::arg("N"))
      .def_static("cantor", &Filter::cantor)
      .def_static("haar", &Filter::haar)
      .def_static("constant_one", &Filter::constant_one, py::arg("N"))
      .def_property_readonly("numerator", [](const Filter& f) { return poly_to_py(f.numerator()); })
      .def_property_readonly("half_scale", &Filter::half_scale)
      .def_property_readonly("N", &Filter::branch_count)
      .def_property_readonly("weight", [](const Filter& f) { return poly_to_py(f.weight()); })
      .def("__repr__", [](const Filter& f) {
        return "Filter(" + f.numerator().to_string() + ", half_scale=" + std::to_string(f.half_scale()) +
               ", N=" + std::to_string(f.branch_count()) + ")";
      });

  m.def("parse_laurent", [](const std::string& s) { return poly_to_py(parse_laurent(s)); }, py::arg("text"));
  m.def("qmf_check", &qmf_check, py::arg("filter"));
  m.def(
      "transfer_apply",
      [](const py::object& f, const Filter& filter, int power) {
        return poly_to_py(apply_power(filter, poly_from_py(f), power));
      },
      py::arg("f"), py::arg("filter") = Filter::cantor(), py::arg("power") = 1);
  m.def(
      "iterate_to_invariant",
      [](const py::object& f, const Filter& filter, int max_iter, const py::object& tol) {
        const auto r = iterate_to_invariant(filter, poly_from_py(f), max_iter, from_py(tol));
        py::dict d;
        d["converged"] = r.converged();
        d["limit"] = r.limit ? coeff_to_py(*r.limit) : py::object(py::none());
        d["iterations"] = r.iterations_used;
        py::list masses;
        for (const auto& it : r.iterates) masses.append(to_fraction(it.nonconstant_l1_mass));
        d["masses"] = masses;
        d["final_iterate"] = poly_to_py(r.final_iterate);
        return d;
      },
      py::arg("f"), py::arg("filter") = Filter::cantor(), py::arg("max_iter") = kDefaultMaxIter,
      py::arg("tol") = to_fraction(kDefaultTolerance));
  m.def(
      "weighted_energy",
      [](const py::object& h, int n, const Filter& filter) {
        return to_fraction(weighted_energy(filter, poly_from_py(h), n));
      },
      py::arg("h"), py::arg("n"), py::arg("filter") = Filter::cantor());

  m.def(
      "build_sequence",
      [](std::int64_t K) {
        const auto seq = build_sequence(K);
        py::dict d;
        for (const auto& [k, v] : seq.coeffs()) d[py::int_(k)] = to_fraction(v);
        return d;
      },
      py::arg("K"));
  m.def(
      "fixed_point_residual",
      [](std::int64_t K) { return to_fraction(fixed_point_residual(build_sequence(K)).max_abs_residual); },
      py::arg("K"));
  m.def(
      "energy_growth",
      [](std::int64_t K, int n_max) { return series_to_py(energy_growth(build_sequence(K), n_max)); },
      py::arg("K"), py::arg("n_max"));
  m.def("max_growth_steps", &max_growth_steps, py::arg("K"));

  m.def(
      "refinement_nullspace",
      [](int level, std::int64_t lo, std::int64_t hi) {
        py::list out;
        for (const auto& f : refinement_nullspace(level, lo, hi)) out.append(cell_to_py(f));
        return out;
      },
      py::arg("level"), py::arg("window_lo") = kDefaultWindowLo, py::arg("window_hi") = kDefaultWindowHi);
  m.def("cascade", [](const py::dict& f) { return cell_to_py(cascade(cell_from_py(f))); }, py::arg("f"));
  m.def(
      "cascade_divergence",
      [](const py::dict& f, int n_max) { return series_to_py(cascade_divergence(cell_from_py(f), n_max)); },
      py::arg("f"), py::arg("n_max"));
  m.def(
      "cascade_divergence_transfer",
      [](const py::dict& f, int n_max) {
        return series_to_py(cascade_divergence_transfer(cell_from_py(f), n_max));
      },
      py::arg("f"), py::arg("n_max"));
  m.def(
      "correlation",
      [](const py::dict& f, const py::dict& g) { return poly_to_py(correlation(cell_from_py(f), cell_from_py(g))); },
      py::arg("f"), py::arg("g"));
  m.def(
      "inner",
      [](const py::dict& f, const py::dict& g) { return to_fraction(inner(cell_from_py(f), cell_from_py(g))); },
      py::arg("f"), py::arg("g"));
  m.def(
      "mra_project", [](const py::dict& f, int n) { return cell_to_py(mra_project(cell_from_py(f), n)); },
      py::arg("f"), py::arg("n"));

  m.def(
      "transition_weights",
      [](const std::string& system, const py::object& angle, int component, std::int64_t n) {
        const auto sys = make_system(system, n);
        py::list out;
        for (const auto& [y, w] : transition_weights(*sys, Point{component, from_py(angle)}).entries) {
          out.append(py::make_tuple(to_fraction(y.angle), w));
        }
        return out;
      },
      py::arg("system"), py::arg("angle"), py::arg("component") = 0, py::arg("N") = 3);
  m.def(
      "sample_path",
      [](const std::string& system, const py::object& angle, int length, std::uint64_t seed, std::uint64_t index,
         int component, std::int64_t n) {
        const auto sys = make_system(system, n);
        py::list out;
        for (const auto& y : sample_path(*sys, Point{component, from_py(angle)}, length, seed, index).trajectory) {
          out.append(to_fraction(y.angle));
        }
        return out;
      },
      py::arg("system"), py::arg("angle"), py::arg("length"), py::arg("seed"), py::arg("index") = 0,
      py::arg("component") = 0, py::arg("N") = 3);
  m.def(
      "tree_expectation",
      [](const std::string& system, const py::object& angle, const py::object& h, int depth, int component,
         std::int64_t n) {
        const auto sys = make_system(system, n);
        return tree_expectation(*sys, Point{component, from_py(angle)}, poly_from_py(h), depth);
      },
      py::arg("system"), py::arg("angle"), py::arg("h"), py::arg("depth"), py::arg("component") = 0,
      py::arg("N") = 3);
  m.def(
      "mu_infinity_integral",
      [](const std::string& system, const py::object& h, int coordinate, std::size_t samples, std::uint64_t seed,
         unsigned threads, std::int64_t n) {
        const auto sys = make_system(system, n);
        const LaurentPoly p = poly_from_py(h);
        if (coordinate < 0) throw py::value_error("coordinate must be >= 0");
        const CylinderFunction F = [&p, coordinate](std::span<const Point> xs) {
          return evaluate(p, xs[static_cast<std::size_t>(coordinate)].angle).real();
        };
        MonteCarloEstimate e;
        {
          py::gil_scoped_release release;
          e = mu_infinity_integral(*sys, F, coordinate, samples, seed, threads);
        }
        return py::make_tuple(e.estimate, e.std_error);
      },
      py::arg("system"), py::arg("h"), py::arg("coordinate") = 0, py::arg("samples") = 10000,
      py::arg("seed") = 42, py::arg("threads") = 1, py::arg("N") = 3);
  m.def(
      "ergodicity_diagnostic",
      [](const std::string& system, const py::list& polys, int depth, std::int64_t n, bool indicators) {
        const auto sys = make_system(system, n);
        std::vector<ComponentPoly> tests;
        for (const auto& p : polys) tests.emplace_back(static_cast<std::size_t>(sys->num_components()), poly_from_py(p));
        if (indicators) {
          for (int c = 0; c < sys->num_components(); ++c) tests.push_back(indicator_poly(*sys, c));
        }
        py::list out;
        for (const auto& r : ergodicity_diagnostic(*sys, tests, depth)) {
          out.append(py::make_tuple(to_string(r.verdict), r.steps));
        }
        return out;
      },
      py::arg("system"), py::arg("polys"), py::arg("depth") = 10, py::arg("N") = 3, py::arg("indicators") = false);
}
