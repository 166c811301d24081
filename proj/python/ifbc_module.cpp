#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ifbc/decompose.hpp"
#include "ifbc/error.hpp"
#include "ifbc/error_analysis.hpp"
#include "ifbc/operators.hpp"
#include "ifbc/signal.hpp"
#include "ifbc/transforms.hpp"

namespace py = pybind11;
using namespace ifbc;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> to_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m ? rows.front().size() : 0;
  py::array_t<double> out({static_cast<py::ssize_t>(m), static_cast<py::ssize_t>(n)});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = rows[i][j];
  return out;
}

StoppingConfig make_config(double delta, std::size_t max_inner, std::size_t max_imfs, double xi, bool double_filter) {
  StoppingConfig cfg;
  cfg.delta = delta;
  cfg.max_inner = max_inner;
  cfg.max_imfs = max_imfs;
  cfg.xi = xi;
  cfg.double_filter = double_filter;
  return cfg;
}

py::dict decomposition_dict(const Decomposition& d) {
  py::list diags;
  for (const auto& g : d.diagnostics) {
    py::dict item;
    item["iterations"] = g.iterations;
    item["filter_length"] = g.filter_length;
    item["base_length"] = g.base_length;
    item["final_delta"] = g.final_delta;
    item["stop"] = std::string(to_string(g.stop));
    diags.append(item);
  }
  py::dict out;
  out["imfs"] = to_matrix(d.imfs);
  out["diagnostics"] = diags;
  out["mode"] = std::string(to_string(d.mode));
  out["kind"] = d.kind;
  out["pad"] = d.pad;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Iterative filtering (DIF/EIF) with structured boundary operators";
  m.attr("__version__") = "0.1.0";

  static py::exception<Error> base_error(m, "IfbcError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Unsupported& e) {
      PyErr_SetString(PyExc_NotImplementedError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  py::enum_<BoundaryKind>(m, "BoundaryKind")
      .value("Zero", BoundaryKind::Zero)
      .value("Periodic", BoundaryKind::Periodic)
      .value("Reflective", BoundaryKind::Reflective)
      .value("AntiReflective", BoundaryKind::AntiReflective);
  m.def("parse_boundary_kind", [](const std::string& s) { return parse_boundary_kind(s); });

  // signal
  m.def("load_signal", [](const std::string& path) {
        const auto sig = load_signal(path);
        return to_array({sig.values().begin(), sig.values().end()});
      }, py::arg("path"));
  m.def("normalize", [](const Array& s) {
        const auto sig = normalize(Signal(to_vector(s)));
        return to_array({sig.values().begin(), sig.values().end()});
      }, py::arg("s"));
  m.def("count_extrema", [](const Array& s) { return count_extrema(to_vector(s)); }, py::arg("s"));

  // filters
  py::class_<Filter>(m, "Filter")
      .def(py::init([](const Array& half) { return Filter(to_vector(half)); }), py::arg("half_weights"))
      .def_property_readonly("length", &Filter::length)
      .def_property_readonly("half_weights", [](const Filter& f) {
        return to_array({f.half_weights().begin(), f.half_weights().end()});
      })
      .def("full", [](const Filter& f) { return to_array(f.full()); })
      .def("__repr__", [](const Filter& f) { return "<Filter length=" + std::to_string(f.length()) + ">"; });
  m.def("shape_names", &shape_names);
  m.def("sample_filter", [](const std::string& shape, std::size_t l) { return sample_filter(shape_by_name(shape), l); },
        py::arg("shape"), py::arg("length"));
  m.def("convolve_self", &convolve_self, py::arg("filter"));
  m.def("filter_length", [](const Array& s, double xi) { return filter_length(to_vector(s), xi); }, py::arg("s"),
        py::arg("xi") = StoppingConfig{}.xi);

  // boundary
  m.def("extend", [](const Array& s, BoundaryKind kind, std::size_t p) {
        const auto e = extend(to_vector(s), kind, p);
        return to_array({e.samples().begin(), e.samples().end()});
      }, py::arg("s"), py::arg("kind"), py::arg("pad"));
  m.def("constant_error_extension", [](const Array& s, std::size_t p) {
        const auto e = constant_error_extension(to_vector(s), p);
        return to_array({e.samples().begin(), e.samples().end()});
      }, py::arg("s"), py::arg("pad"));

  // operators
  py::class_<StructuredOperator>(m, "StructuredOperator")
      .def(py::init<Filter, BoundaryKind, std::size_t>(), py::arg("filter"), py::arg("kind"), py::arg("n"))
      .def_property_readonly("kind", &StructuredOperator::kind)
      .def_property_readonly("size", &StructuredOperator::size)
      .def_property_readonly("filter", &StructuredOperator::filter)
      .def("apply", [](const StructuredOperator& op, const Array& x) { return to_array(op.apply(to_vector(x))); })
      .def("to_dense", [](const StructuredOperator& op) { return to_dense(op); })
      .def("eigenvalues", [](const StructuredOperator& op) {
        const auto s = eigenvalues(op);
        return py::make_tuple(to_array(s.eigenvalues), s.unit_multiplicity, s.zero_multiplicity);
      }, "(descending eigenvalues, unit multiplicity, zero multiplicity) from the closed forms")
      .def("dense_eigenvalues", [](const StructuredOperator& op) {
        const auto s = dense_eigenvalues(op);
        return py::make_tuple(to_array(s.eigenvalues), s.unit_multiplicity, s.zero_multiplicity);
      });
  m.def("unit_eigenvectors", [](BoundaryKind kind, std::size_t n) { return to_matrix(unit_eigenvectors(kind, n)); },
        py::arg("kind"), py::arg("n"));
  m.def("transform", [](const std::string& which, const Array& x) -> py::object {
        const auto v = to_vector(x);
        if (which == "dft") {
          std::vector<Complex> c(v.begin(), v.end());
          return py::cast(transforms::dft(c));
        }
        if (which == "dct3") return to_array(transforms::dct3(v));
        if (which == "dst1") return to_array(transforms::dst1(v));
        if (which == "art") return to_array(transforms::art(v));
        if (which == "art_inverse") return to_array(transforms::art_inverse(v));
        throw InvalidArgument("unknown transform '" + which + "'");
      }, py::arg("which"), py::arg("x"));
  m.def("iterate_residual", [](const StructuredOperator& op, const Array& s, std::size_t k) {
        return to_array(iterate_residual(op, to_vector(s), k));
      }, py::arg("op"), py::arg("s"), py::arg("k"));
  m.def("diagonalized_power_apply", [](const StructuredOperator& op, const Array& s, std::size_t k, bool fast) {
        return to_array(diagonalized_power_apply(op, to_vector(s), k, fast ? TransformPath::Fast : TransformPath::Direct));
      }, py::arg("op"), py::arg("s"), py::arg("k"), py::arg("fast") = false);

  // decomposition
  const StoppingConfig defaults;
  m.def("dif", [](const Array& s, BoundaryKind kind, const std::string& shape, double delta, std::size_t max_inner,
                  std::size_t max_imfs, double xi, bool double_filter) {
        return decomposition_dict(dif(Signal(to_vector(s)), shape_by_name(shape), kind,
                                      make_config(delta, max_inner, max_imfs, xi, double_filter)));
      }, py::arg("s"), py::arg("kind"), py::arg("shape") = "raised_cosine", py::arg("delta") = defaults.delta,
      py::arg("max_inner") = defaults.max_inner, py::arg("max_imfs") = defaults.max_imfs, py::arg("xi") = defaults.xi,
      py::arg("double_filter") = defaults.double_filter);
  m.def("eif", [](const Array& s, BoundaryKind kind, std::optional<std::size_t> pad, const std::string& shape,
                  double delta, std::size_t max_inner, std::size_t max_imfs, double xi, bool double_filter) {
        const Signal sig(to_vector(s));
        const auto cfg = make_config(delta, max_inner, max_imfs, xi, double_filter);
        const auto h = shape_by_name(shape);
        const std::size_t p = pad ? *pad : default_eif_pad(sig, h, kind, cfg);
        return decomposition_dict(eif(sig, h, kind, p, cfg));
      }, py::arg("s"), py::arg("kind"), py::arg("pad") = py::none(), py::arg("shape") = "raised_cosine",
      py::arg("delta") = defaults.delta, py::arg("max_inner") = defaults.max_inner,
      py::arg("max_imfs") = defaults.max_imfs, py::arg("xi") = defaults.xi,
      py::arg("double_filter") = defaults.double_filter);
  m.def("delta_metric", [](const Array& next, const Array& cur) { return delta_metric(to_vector(next), to_vector(cur)); });
  m.def("stopping_bound_k0", [](double delta, const StructuredOperator& op, const Array& s) {
        return stopping_bound_k0(delta, op, to_vector(s));
      }, py::arg("delta"), py::arg("op"), py::arg("s"));

  // error analysis
  m.def("estimate_boundary_error", [](const Array& s, const Filter& filter, std::size_t pad, std::size_t steps) {
        const auto est = estimate_boundary_error(to_vector(s), filter, pad, steps);
        py::dict out;
        out["per_step"] = to_matrix(est.per_step);
        out["upper_bound"] = to_array(est.upper_bound);
        out["chi"] = est.chi;
        out["pad"] = est.pad;
        out["steps"] = est.steps;
        return out;
      }, py::arg("s"), py::arg("filter"), py::arg("pad"), py::arg("steps"));
  m.def("actual_error", [](const Array& f1, const Array& exact) {
        return to_array(actual_error(to_vector(f1), to_vector(exact)));
      });
  m.def("relative_error", [](const Array& f1, const Array& exact) {
        return relative_error(to_vector(f1), to_vector(exact));
      });
  m.def("phase_sweep", [](double dt, double span, double period, double amplitude, double trend, double start,
                          std::optional<std::size_t> steps) {
        PhaseSweepConfig cfg;
        cfg.dt = dt;
        cfg.span = span;
        cfg.start = start;
        cfg.steps = steps;
        const auto rows = phase_sweep(sine_plus_constant(period, amplitude, trend), cfg);
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["endpoint"] = r.endpoint;
          d["ub_rel"] = r.ub_rel;
          d["err_rel_periodic"] = r.err_rel[0];
          d["err_rel_reflective"] = r.err_rel[1];
          d["err_rel_antireflective"] = r.err_rel[2];
          d["best_kind"] = std::string(to_string(r.best));
          d["steps"] = r.steps;
          out.append(d);
        }
        return out;
      }, py::arg("dt") = 0.01, py::arg("span") = 3.0, py::arg("period") = 0.5, py::arg("amplitude") = 1.0,
      py::arg("trend") = 2.0, py::arg("start") = -3.33, py::arg("steps") = py::none());
}
