#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "thiele/convergents.hpp"
#include "thiele/core.hpp"
#include "thiele/io.hpp"
#include "thiele/version.hpp"
#include "thiele/newman.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace pybind11::literals;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Adaptive Thiele continued-fraction interpolation";

  auto error = py::register_exception<thiele::Error>(m, "ThieleError");
  py::register_exception<thiele::InvalidInput>(m, "InvalidInput", error.ptr());
  py::register_exception<thiele::BreakdownError>(m, "BreakdownError", error.ptr());
  py::register_exception<thiele::InsufficientSamples>(m, "InsufficientSamples", error.ptr());
  py::register_exception<thiele::OverflowDetected>(m, "OverflowDetected", error.ptr());
  py::register_exception<thiele::InvalidN>(m, "InvalidN", error.ptr());
  py::register_exception<thiele::ParseError>(m, "ParseError", error.ptr());
  py::register_exception<thiele::DuplicateAbscissa>(m, "DuplicateAbscissa", error.ptr());
  py::register_exception<thiele::NonFiniteValue>(m, "NonFiniteValue", error.ptr());
  py::register_exception<thiele::VersionMismatch>(m, "VersionMismatch", error.ptr());
  py::register_exception<thiele::SchemaError>(m, "SchemaError", error.ptr());

  py::class_<thiele::SampleSet>(m, "SampleSet")
      .def(py::init<std::vector<double>, std::vector<double>>(), "xs"_a, "fs"_a)
      .def_property_readonly("xs", &thiele::SampleSet::xs)
      .def_property_readonly("fs", &thiele::SampleSet::fs)
      .def("__len__", &thiele::SampleSet::size);

  py::class_<thiele::ThieleModel>(m, "ThieleModel")
      .def(py::init<std::vector<double>, std::vector<double>>(), "nodes"_a, "coeffs"_a)
      .def_property_readonly("nodes", &thiele::ThieleModel::nodes)
      .def_property_readonly("coeffs", &thiele::ThieleModel::coeffs)
      .def_property_readonly("order", &thiele::ThieleModel::order)
      .def("__call__", &thiele::eval_cfrac, "x"_a)
      .def("__eq__", [](const thiele::ThieleModel& a, const thiele::ThieleModel& b) { return a == b; })
      .def("__repr__", [](const thiele::ThieleModel& mdl) {
        return "<ThieleModel order=" + std::to_string(mdl.order()) + ">";
      });

  py::class_<thiele::FitConfig>(m, "FitConfig")
      .def(py::init([](double tol, std::optional<std::size_t> max_order) {
             return thiele::FitConfig{tol, max_order};
           }),
           "tol"_a = 5e-15, "max_order"_a = py::none())
      .def_readwrite("tol", &thiele::FitConfig::tol)
      .def_readwrite("max_order", &thiele::FitConfig::max_order);

  py::class_<thiele::FitReport>(m, "FitReport")
      .def_readonly("steps_taken", &thiele::FitReport::steps_taken)
      .def_readonly("stopped_early", &thiele::FitReport::stopped_early)
      .def_readonly("node_errors", &thiele::FitReport::node_errors)
      .def_readonly("diagnostics", &thiele::FitReport::diagnostics);

  m.def("select_first_point", &thiele::select_first_point, "data"_a);
  m.def(
      "fit_adaptive",
      [](const thiele::SampleSet& data, const thiele::FitConfig& cfg) {
        auto r = thiele::fit_adaptive(data, cfg);
        return py::make_tuple(std::move(r.model), std::move(r.report));
      },
      "data"_a, "config"_a = thiele::FitConfig{},
      "Greedy adaptive Thiele fit. Returns (model, report).");
  m.def("fit_fixed_order", &thiele::fit_fixed_order, "data"_a);
  m.def("eval_cfrac", &thiele::eval_cfrac, "model"_a, "x"_a);
  m.def(
      "eval_cfrac_batch",
      [](const thiele::ThieleModel& model, const std::vector<double>& xs) {
        return thiele::eval_cfrac_batch(model, xs);
      },
      "model"_a, "xs"_a);

  m.def(
      "convergent_trace",
      [](const thiele::ThieleModel& model, double x, bool scaled) {
        const auto t = thiele::convergent_trace(model, x, scaled);
        std::vector<std::pair<double, double>> pairs;
        for (const auto& p : t.pairs()) pairs.emplace_back(p.numerator, p.denominator);
        return pairs;
      },
      "model"_a, "x"_a, "scaled"_a = false,
      "List of (A_i, B_i) for i = -2..order.");
  m.def(
      "check_consecutive_distinct",
      [](const thiele::ThieleModel& model, const std::vector<double>& xs) {
        return thiele::check_consecutive_distinct(model, xs);
      },
      "model"_a, "sample_xs"_a);
  m.def("check_phi_residual_identity", &thiele::check_phi_residual_identity, "model"_a, "data"_a);

  auto nm = m.def_submodule("newman", "Newman points and the |x| convergence study");
  nm.def("eta", &thiele::newman::eta, "n"_a);
  nm.def("newman_points", &thiele::newman::newman_points, "n"_a);
  nm.def(
      "sup_error_on_grid",
      [](const thiele::ThieleModel& model, const std::function<double(double)>& f, double lo,
         double hi, std::size_t count) {
        return thiele::newman::sup_error_on_grid(model, f, lo, hi, count).sup;
      },
      "model"_a, "f"_a, "lo"_a, "hi"_a, "count"_a);
  nm.def("node_error_norm", &thiele::newman::node_error_norm, "model"_a, "data"_a);
  nm.def(
      "pole_scan",
      [](const thiele::ThieleModel& model, double lo, double hi, std::size_t samples) {
        std::vector<std::pair<double, double>> out;
        for (const auto& b : thiele::newman::pole_scan(model, lo, hi, samples))
          out.emplace_back(b.lo, b.hi);
        return out;
      },
      "model"_a, "lo"_a = -1.0, "hi"_a = 1.0, "samples"_a = 20001);

  py::class_<thiele::newman::StudyRow>(nm, "StudyRow")
      .def_readonly("n", &thiele::newman::StudyRow::n)
      .def_readonly("eta", &thiele::newman::StudyRow::eta)
      .def_readonly("order", &thiele::newman::StudyRow::order)
      .def_readonly("sup_err", &thiele::newman::StudyRow::sup_err)
      .def_readonly("node_err_2norm", &thiele::newman::StudyRow::node_err_2norm)
      .def_readonly("poles_in_unit_interval", &thiele::newman::StudyRow::poles_in_unit_interval)
      .def_readonly("stopped_early", &thiele::newman::StudyRow::stopped_early)
      .def_readonly("error", &thiele::newman::StudyRow::error);
  nm.def(
      "run_newman_study",
      [](int n_min, int n_max, double lo, double hi, std::size_t count, double tol) {
        thiele::newman::StudyConfig cfg;
        cfg.n_min = n_min;
        cfg.n_max = n_max;
        cfg.grid = {lo, hi, count};
        cfg.tol = tol;
        return thiele::newman::run_newman_study(cfg);
      },
      "n_min"_a, "n_max"_a, "lo"_a = 0.0, "hi"_a = 0.01, "count"_a = 10000, "tol"_a = 5e-15);
  nm.def(
      "even_n_trend_slope",
      [](const std::vector<thiele::newman::StudyRow>& rows) {
        return thiele::newman::even_n_trend_slope(rows);
      },
      "rows"_a);

  auto iom = m.def_submodule("io", "CSV and JSON serialization");
  iom.def("read_samples", py::overload_cast<const std::filesystem::path&>(&thiele::io::read_samples),
          "path"_a);
  iom.def(
      "read_samples_text",
      [](const std::string& text) {
        std::istringstream in(text);
        return thiele::io::read_samples(in);
      },
      "text"_a);
  iom.def(
      "model_to_json",
      [](const thiele::ThieleModel& model, const thiele::FitConfig& cfg, bool stopped_early) {
        std::ostringstream out;
        thiele::io::write_model(model, {std::string(thiele::kVersion), cfg, stopped_early}, out);
        return out.str();
      },
      "model"_a, "config"_a = thiele::FitConfig{}, "stopped_early"_a = false);
  iom.def(
      "model_from_json",
      [](const std::string& text) {
        std::istringstream in(text);
        return thiele::io::read_model(in).model;
      },
      "text"_a);
  iom.def(
      "study_to_csv",
      [](const std::vector<thiele::newman::StudyRow>& rows) {
        std::ostringstream out;
        thiele::io::write_study_csv(rows, out);
        return out.str();
      },
      "rows"_a);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
