#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlab/cmpoints.hpp"
#include "qlab/error.hpp"
#include "qlab/harness.hpp"
#include "qlab/hecke.hpp"
#include "qlab/latcount.hpp"
#include "qlab/orders.hpp"
#include "qlab/spectral.hpp"

namespace py = pybind11;
using namespace qlab;

namespace {

UHPoint point(std::complex<double> z) { return UHPoint(z.real(), z.imag()); }

KernelSpec kernel(const std::string& kind, double X, double delta, const std::string& mass) {
  const MassConvention mc = mass == "half" ? MassConvention::half_mass : MassConvention::unit_mass;
  if (mass != "unit" && mass != "half") throw ConfigError("mass must be 'unit' or 'half'");
  if (kind == "disc") return HardDisc{X};
  if (kind == "moll") return Mollifier{delta, mc};
  if (kind == "plus") return Smoothed{X, delta, 1, mc};
  if (kind == "minus") return Smoothed{X, delta, -1, mc};
  throw ConfigError("kernel must be one of disc, moll, plus, minus");
}

py::dict cm_dict(const CMPointSet& s) {
  py::list pts;
  for (const auto& p : s.points) {
    py::dict e;
    e["rep"] = std::vector<long>(p.rep.begin(), p.rep.end());
    e["point"] = p.point.as_complex();
    e["t"] = p.t;
    e["n"] = p.n;
    pts.append(e);
  }
  py::dict d;
  d["D"] = s.D;
  d["d"] = s.d;
  d["h"] = s.h;
  d["radius"] = s.radius;
  d["points"] = pts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice point counts, spectral transforms and CM points on Shimura curves X(D,1)";

  auto base = py::register_exception<Error>(m, "QlabError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

  m.def("hilbert_symbol", &hilbert_symbol, py::arg("a"), py::arg("b"), py::arg("p"));
  m.def("ramified_primes", [](long a, long b) { return discriminant(a, b).ramified_primes; });
  m.def("catalog_discriminants", &catalog_discriminants);
  m.def("shimura_volume", &shimura_volume, py::arg("D"));
  m.def(
      "verify_order",
      [](long D) {
        const VerificationReport r = verify_order(catalog_order(D), D);
        py::dict d;
        d["ok"] = r.ok();
        d["multiplicatively_closed"] = r.multiplicatively_closed;
        d["integral"] = r.integral_traces_norms;
        d["reduced_discriminant"] = r.reduced_discriminant;
        return d;
      },
      py::arg("D"), "Certify the catalog maximal order of discriminant D.");

  m.def(
      "count",
      [](long D, std::complex<double> z, std::optional<std::complex<double>> w, double X) {
        const OrderBasis O = catalog_order(D);
        py::gil_scoped_release release;
        return count_lattice(O, point(z), point(w.value_or(z)), X).count;
      },
      py::arg("D"), py::arg("z"), py::arg("w") = py::none(), py::arg("X"),
      "N(X; z, w): group elements with 2 cosh(dist(z, gamma w)) <= X.");
  m.def(
      "count_profile",
      [](long D, std::complex<double> z, const std::vector<double>& Xs) {
        const OrderBasis O = catalog_order(D);
        std::vector<long long> out;
        for (const auto& c : count_profile(O, point(z), point(z), Xs)) out.push_back(c.count);
        return out;
      },
      py::arg("D"), py::arg("z"), py::arg("Xs"));

  m.def("main_term", [](long D, double X) { return main_term(X, default_eigendata(D)); }, py::arg("D"),
        py::arg("X"));
  m.def(
      "error_scan",
      [](long D, std::complex<double> z, double xmin, double xmax, int steps) {
        ScanConfig cfg;
        cfg.D = D;
        cfg.z = point(z);
        cfg.x_min = xmin;
        cfg.x_max = xmax;
        cfg.steps = steps;
        std::vector<py::dict> rows;
        for (const auto& s : run_error_scan(cfg)) {
          py::dict r;
          r["X"] = s.X;
          r["N"] = s.N;
          r["M"] = s.M;
          r["E"] = s.E;
          r["E_over_X23"] = s.normalized;
          rows.push_back(r);
        }
        return rows;
      },
      py::arg("D"), py::arg("z"), py::arg("xmin"), py::arg("xmax"), py::arg("steps"));
  m.def(
      "fit_power_law",
      [](const std::vector<std::pair<double, double>>& samples) {
        const FitResult f = fit_power_law(samples);
        py::dict d;
        d["coefficient"] = f.coefficient;
        d["exponent"] = f.exponent;
        d["r_squared"] = f.r_squared;
        d["residual_max"] = f.residual_max;
        return d;
      },
      py::arg("samples"));

  m.def(
      "shc_transform",
      [](const std::string& kind, std::complex<double> t, double X, double delta, const std::string& mass) {
        return shc_transform(kernel(kind, X, delta, mass), t);
      },
      py::arg("kernel"), py::arg("t"), py::arg("X") = 100.0, py::arg("delta") = 0.1, py::arg("mass") = "unit",
      "Selberg/Harish-Chandra transform h(t), |Im t| <= 1/2.");

  m.def("embedding_criterion", &embedding_criterion, py::arg("D"), py::arg("d"));
  m.def("class_number", &class_number_forms, py::arg("d"));
  m.def("eichler_class_number", &eichler_class_number_oracle, py::arg("D"), py::arg("d"));
  m.def(
      "cm_points",
      [](long D, long d) { return cm_dict(compute_cm_points(catalog_order(D), d)); },
      py::arg("D"), py::arg("d"), "Representatives of the CM points of discriminant d on X(D,1).");
  m.def(
      "hecke_degree", [](long D, long long n) { return hecke_degree(catalog_order(D), n, UHPoint(0, 1)).orbits; },
      py::arg("D"), py::arg("n"));
  m.def("sigma1", &sigma1, py::arg("n"));
}
