#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "sectorlab/entropy.hpp"
#include "sectorlab/io.hpp"
#include "sectorlab/means.hpp"
#include "sectorlab/quadrature.hpp"
#include "sectorlab/verify.hpp"

namespace py = pybind11;
using namespace sectorlab;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw py::value_error("expected a square 2-d array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return ComplexMatrix(n, std::vector<Complex>(a.data(), a.data() + n * n));
}

CArray to_array(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  CArray out({n, n});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

AccretiveMatrix operand(const CArray& a, bool validate) {
  ComplexMatrix m = to_matrix(a);
  return validate ? AccretiveMatrix(std::move(m)) : AccretiveMatrix::unchecked(std::move(m));
}

QuadratureConfig quadrature(int nodes, bool adaptive, double tol) {
  QuadratureConfig cfg;
  cfg.rule_nodes = nodes;
  cfg.adaptive = adaptive;
  cfg.tol = tol;
  cfg.validate();
  return cfg;
}

template <class Config>
Config config(int nodes, bool adaptive, double tol) {
  Config cfg;
  static_cast<QuadratureConfig&>(cfg) = quadrature(nodes, adaptive, tol);
  return cfg;
}

py::dict integral(const IntegralResult& r) {
  py::dict d;
  d["value"] = to_array(r.value);
  d["nodes_used"] = r.nodes_used;
  d["error_estimate"] = r.error_estimate;
  return d;
}

std::string verify_json(std::size_t dim, std::size_t trials, std::uint64_t seed, double angle,
                        const std::vector<double>& lambdas, const std::vector<std::string>& only, unsigned threads) {
  EnsembleSpec spec;
  spec.dim = dim;
  spec.trials = trials;
  spec.seed = seed;
  spec.sector_angle = angle * 1.5707963267948966;
  spec.lambda_grid.clear();
  for (double l : lambdas) spec.lambda_grid.emplace_back(l);
  VerifyOptions opts;
  opts.threads = threads;
  std::vector<PropertyReport> reports;
  {
    py::gil_scoped_release release;
    reports = run_selected(spec, only, opts);
  }
  return dump_json(verify_document(spec, reports));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Geometric means and operator entropies of accretive matrices";

  py::register_exception<Error>(m, "SectorlabError", PyExc_ValueError);

  const auto a_ = py::arg("a");
  const auto b_ = py::arg("b");

  m.def("arithmetic_mean",
        [](const CArray& a, const CArray& b, double lam, bool validate) {
          return to_array(arithmetic_mean(operand(a, validate), operand(b, validate), Weight(lam)));
        },
        a_, b_, py::arg("lam"), py::arg("validate") = true);
  m.def("harmonic_mean",
        [](const CArray& a, const CArray& b, double lam, bool validate) {
          return to_array(harmonic_mean(operand(a, validate), operand(b, validate), Weight(lam)));
        },
        a_, b_, py::arg("lam"), py::arg("validate") = true);
  m.def("geometric_mean",
        [](const CArray& a, const CArray& b, double lam, int nodes, bool adaptive, double tol, bool validate) {
          const auto cfg = config<GeometricMeanConfig>(nodes, adaptive, tol);
          return integral(geometric_mean_integral(operand(a, validate), operand(b, validate), Weight(lam), cfg));
        },
        a_, b_, py::arg("lam"), py::arg("nodes") = 64, py::arg("adaptive") = false, py::arg("tol") = 1e-12,
        py::arg("validate") = true);
  m.def("drury_mean",
        [](const CArray& a, const CArray& b, int nodes, bool adaptive, double tol, bool validate) {
          const auto cfg = config<GeometricMeanConfig>(nodes, adaptive, tol);
          return to_array(drury_mean(operand(a, validate), operand(b, validate), cfg));
        },
        a_, b_, py::arg("nodes") = 64, py::arg("adaptive") = false, py::arg("tol") = 1e-12,
        py::arg("validate") = true);
  m.def("relative_entropy",
        [](const CArray& a, const CArray& b, int nodes, bool adaptive, double tol, bool validate) {
          const auto cfg = config<EntropyConfig>(nodes, adaptive, tol);
          return integral(relative_entropy_integral(operand(a, validate), operand(b, validate), cfg));
        },
        a_, b_, py::arg("nodes") = 64, py::arg("adaptive") = false, py::arg("tol") = 1e-12,
        py::arg("validate") = true);
  m.def("tsallis_entropy",
        [](const CArray& a, const CArray& b, double lam, int nodes, bool adaptive, double tol, bool validate) {
          const auto cfg = config<EntropyConfig>(nodes, adaptive, tol);
          return integral(tsallis_entropy_integral(operand(a, validate), operand(b, validate), Weight(lam), cfg));
        },
        a_, b_, py::arg("lam"), py::arg("nodes") = 64, py::arg("adaptive") = false, py::arg("tol") = 1e-12,
        py::arg("validate") = true);
  m.def("tsallis_from_mean",
        [](const CArray& a, const CArray& b, double lam, int nodes, bool adaptive, double tol) {
          const auto cfg = config<GeometricMeanConfig>(nodes, adaptive, tol);
          return to_array(tsallis_from_mean(AccretiveMatrix(to_matrix(a)), AccretiveMatrix(to_matrix(b)),
                                            Weight(lam), cfg));
        },
        a_, b_, py::arg("lam"), py::arg("nodes") = 64, py::arg("adaptive") = false, py::arg("tol") = 1e-12);

  m.def("quadrature_rule",
        [](const std::string& kind, int n, std::optional<double> lam) {
          QuadratureRule rule = [&] {
            if (kind == "legendre") return gauss_legendre(n);
            if (kind != "jacobi") throw py::value_error("kind must be 'legendre' or 'jacobi'");
            if (!lam) throw py::value_error("jacobi rules need lam");
            const Weight w(*lam);
            return gauss_jacobi(n, -w.value(), w.value() - 1.0);
          }();
          return py::make_tuple(py::array(py::cast(rule.nodes())), py::array(py::cast(rule.weights())));
        },
        py::arg("kind"), py::arg("n"), py::arg("lam") = py::none());

  m.def("property_ids", &property_ids);
  m.def("verify_json", &verify_json, py::arg("dim") = 3, py::arg("trials") = 200, py::arg("seed") = 0,
        py::arg("angle") = 0.4, py::arg("lambdas") = std::vector<double>{0.1, 0.5, 0.9},
        py::arg("only") = std::vector<std::string>{}, py::arg("threads") = 1);
}
