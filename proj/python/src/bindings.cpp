#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "confgauss/acceptance.hpp"
#include "confgauss/bryant_classifier.hpp"
#include "confgauss/cli_driver.hpp"
#include "confgauss/errors.hpp"

namespace py = pybind11;
using namespace confgauss;

namespace {

ClassificationReport classify_named(const std::string& name, const std::map<std::string, double>& params, int grid,
                                    const std::string& word) {
    const SurfaceSpec spec = make_surface(name, params);
    std::optional<Mat5> M;
    if (word.find_first_not_of(" \t") != std::string::npos) M = parse_word(word);
    return classify(spec, grid, {}, M);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Conformal Gauss map and Moebius geometry of surfaces";
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);

    m.def("lorentz_product", py::overload_cast<const Vec5&, const Vec5&>(&lorentz_product), py::arg("u"), py::arg("v"));
    m.def("classify_vector",
          [](const Vec5& v, double tol) { return to_string(classify_vector(v, tol)); },
          py::arg("v"), py::arg("tol") = 1e-9);
    m.def("is_so41", &is_so41, py::arg("M"), py::arg("tol") = 1e-12);
    m.def("dilation", &dilation, py::arg("lam"));
    m.def("inversion", &inversion);
    m.def("translation", &translation, py::arg("a"));
    m.def("rotation", py::overload_cast<const Vec3&, double>(&rotation), py::arg("axis"), py::arg("angle"));
    m.def("parse_word", &parse_word, py::arg("word"));
    m.def("act_on_r3",
          [](const Mat5& M, const Vec3& x) -> std::optional<Vec3> {
              const R3Point y = act_on_r3(M, R3Point::at(x));
              if (y.infinite) return std::nullopt;
              return y.x;
          },
          py::arg("M"), py::arg("x"), "Returns None for the point at infinity.");
    m.def("act_on_s3", py::overload_cast<const Mat5&, const Vec4&>(&act_on_s3), py::arg("M"), py::arg("X"));

    m.def("surface_names", &surface_names);
    m.def("classify",
          [](const std::string& name, const std::map<std::string, double>& params, int grid, const std::string& word) {
              return to_json(classify_named(name, params, grid, word));
          },
          py::arg("surface"), py::arg("params") = std::map<std::string, double>{}, py::arg("grid") = 128,
          py::arg("word") = "", "Classification report as a JSON string.");

    m.def("criterion_count", &criterion_count);
    m.def("run_criterion",
          [](int id, int grid) {
              AcceptanceConfig cfg;
              cfg.n = grid;
              const CriterionResult r = run_criterion(id, cfg);
              return py::dict(py::arg("id") = r.id, py::arg("name") = r.name, py::arg("pass") = r.pass,
                              py::arg("detail") = r.detail);
          },
          py::arg("id"), py::arg("grid") = 128);
}
