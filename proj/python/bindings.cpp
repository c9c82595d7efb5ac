#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stabma/analysis.hpp"
#include "stabma/cli.hpp"
#include "stabma/error_bounds.hpp"
#include "stabma/errors.hpp"
#include "stabma/kernels.hpp"
#include "stabma/multistable.hpp"
#include "stabma/stable_rng.hpp"
#include "stabma/synthesis.hpp"

namespace py = pybind11;
using namespace stabma;

namespace {

py::array_t<double> to_array(std::vector<double> v) {
  auto* heap = new std::vector<double>(std::move(v));
  py::capsule owner(heap, [](void* p) { delete static_cast<std::vector<double>*>(p); });
  return py::array_t<double>(static_cast<py::ssize_t>(heap->size()), heap->data(), owner);
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  require(a.ndim() == 1, "expected a one-dimensional array");
  return std::vector<double>(a.data(), a.data() + a.size());
}

py::dict breakdown_dict(const BoundBreakdown& b) {
  py::dict d;
  d["alpha"] = b.alpha;
  d["discretization"] = b.discretization;
  d["truncation"] = b.truncation;
  d["total_alpha_power"] = b.total_alpha_power;
  d["err_scale"] = b.err_scale;
  d["formula"] = b.formula;
  return d;
}

SynthesisConfig make_config(std::int64_t omega, std::int64_t Omega, std::int64_t n,
                            std::uint64_t seed, double scale) {
  SynthesisConfig c{omega, Omega, n, seed, scale};
  c.validate();
  return c;
}

py::tuple path_tuple(const Path& p) {
  return py::make_tuple(to_array(p.values), py::cast(p.meta));
}

}  // namespace

PYBIND11_MODULE(_stabma, m) {
  m.doc() = "Stable and multistable moving-average path synthesis";
  m.attr("__version__") = STABMA_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def("sas_stream",
        [](std::uint64_t seed, std::int64_t first, std::int64_t count, double alpha, double scale) {
          return to_array(sas_stream(seed, first, count, StableParams{alpha, scale}));
        },
        py::arg("seed"), py::arg("first_index"), py::arg("count"), py::arg("alpha"),
        py::arg("scale") = 1.0);

  m.def("c_alpha", &c_alpha, py::arg("alpha"));

  m.def("synthesize",
        [](const std::string& kernel, std::map<std::string, double> params, double alpha,
           std::int64_t omega, std::int64_t Omega, std::int64_t n, std::uint64_t seed,
           double scale, const std::string& method) {
          const auto k = make_kernel(kernel, params, alpha);
          const auto c = make_config(omega, Omega, n, seed, scale);
          require(method == "fft" || method == "direct", "method must be 'fft' or 'direct'");
          Path p;
          {
            py::gil_scoped_release release;
            p = method == "fft" ? synthesize_fft(k, alpha, c) : synthesize_direct(k, alpha, c);
          }
          return path_tuple(p);
        },
        py::arg("kernel"), py::arg("params") = std::map<std::string, double>{}, py::arg("alpha"),
        py::arg("omega"), py::arg("Omega"), py::arg("n"), py::arg("seed"), py::arg("scale") = 1.0,
        py::arg("method") = "fft");

  m.def("synthesize_multistable",
        [](const std::string& kernel, std::map<std::string, double> params,
           const std::string& alpha_fn, std::int64_t omega, std::int64_t Omega, std::int64_t n,
           std::uint64_t seed, double scale, std::int64_t alpha_grid, bool renormalize) {
          MultistableConfig c;
          c.base = make_config(omega, Omega, n, seed, scale);
          c.alpha_fn = cli::parse_alpha_fn(alpha_fn, n);
          c.alpha_grid = alpha_grid;
          c.renormalize = renormalize;
          c.validate();
          const auto k = make_kernel(kernel, params, eval_alpha(c.alpha_fn, 1.0));
          Path p;
          {
            py::gil_scoped_release release;
            p = synthesize_multistable(k, c);
          }
          return path_tuple(p);
        },
        py::arg("kernel"), py::arg("params") = std::map<std::string, double>{},
        py::arg("alpha_fn") = "logistic", py::arg("omega"), py::arg("Omega"), py::arg("n"),
        py::arg("seed"), py::arg("scale") = 1.0, py::arg("alpha_grid") = 64,
        py::arg("renormalize") = false);

  m.def("bound",
        [](const std::string& kernel, std::map<std::string, double> params, double alpha,
           std::int64_t omega, std::int64_t Omega, const std::string& formula) {
          const auto k = make_kernel(kernel, params, alpha);
          require(formula == "best" || formula == "generic", "formula must be 'best' or 'generic'");
          return breakdown_dict(formula == "best" ? best_bound(k, alpha, omega, Omega)
                                                  : generic_bound(k, alpha, omega, Omega));
        },
        py::arg("kernel"), py::arg("params") = std::map<std::string, double>{}, py::arg("alpha"),
        py::arg("omega"), py::arg("Omega"), py::arg("formula") = "best");

  m.def("optimal_Omega",
        [](const std::string& kernel, std::map<std::string, double> params, double alpha,
           std::int64_t omega) {
          const TuningResult r = optimal_Omega(make_kernel(kernel, params, alpha), alpha, omega);
          py::dict d;
          d["Omega"] = r.Omega;
          d["asymptotic_seed"] = r.asymptotic_seed;
          d["rule"] = r.rule;
          d["breakdown"] = breakdown_dict(r.breakdown);
          return d;
        },
        py::arg("kernel"), py::arg("params") = std::map<std::string, double>{}, py::arg("alpha"),
        py::arg("omega"));

  m.def("alpha_norm",
        [](const std::string& kernel, std::map<std::string, double> params, double alpha) {
          return alpha_norm(make_kernel(kernel, params, alpha), alpha);
        },
        py::arg("kernel"), py::arg("params") = std::map<std::string, double>{}, py::arg("alpha"));

  m.def("lalpha_distance",
        [](const std::string& kernel, std::map<std::string, double> params, double alpha, double t,
           double r) {
          const auto k = make_kernel(kernel, params, alpha);
          return lalpha_distance(k, alpha, k.local_form(alpha), t, r);
        },
        py::arg("kernel"), py::arg("params") = std::map<std::string, double>{}, py::arg("alpha"),
        py::arg("t"), py::arg("r"));

  m.def("estimate_scale",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
           double alpha) {
          const auto v = from_array(samples);
          const ScaleEstimate e = estimate_scale(v, alpha);
          return py::make_tuple(e.value, e.std_error);
        },
        py::arg("samples"), py::arg("alpha"));

  m.def("estimate_scaling_exponent",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
           double alpha, std::vector<std::int64_t> lags) {
          Path p;
          p.values = from_array(values);
          return estimate_scaling_exponent(p, alpha, lags);
        },
        py::arg("values"), py::arg("alpha"), py::arg("lags"));
}
