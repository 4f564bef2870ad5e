#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "eeio/cli.hpp"
#include "eeio/economy.hpp"
#include "eeio/leontief.hpp"
#include "eeio/sensitivity.hpp"
#include "eeio/synth.hpp"
#include "eeio/table_io.hpp"

namespace py = pybind11;
using namespace eeio;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Leontief input-output accounting for emissions.";

  static py::exception<Error> error(m, "EeioError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (code, message) so callers can branch on the code
      const py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  py::enum_<CoefficientKind>(m, "CoefficientKind")
      .value("Technical", CoefficientKind::Technical)
      .value("Allocation", CoefficientKind::Allocation);
  py::enum_<IntensityKind>(m, "IntensityKind")
      .value("Direct", IntensityKind::Direct)
      .value("TotalConsumer", IntensityKind::TotalConsumer)
      .value("TotalSystemic", IntensityKind::TotalSystemic);

  py::class_<BuildPolicy>(m, "BuildPolicy")
      .def(py::init<>())
      .def_readwrite("tol_rel", &BuildPolicy::tol_rel)
      .def_readwrite("allow_negative_value_added", &BuildPolicy::allow_negative_value_added)
      .def_readwrite("drop_zero_sectors", &BuildPolicy::drop_zero_sectors)
      .def_readwrite("money_unit", &BuildPolicy::money_unit);

  py::class_<Economy>(m, "Economy")
      .def_readonly("sectors", &Economy::sectors)
      .def_readonly("transactions", &Economy::transactions)
      .def_readonly("demand", &Economy::demand)
      .def_readonly("value_added", &Economy::value_added)
      .def_readonly("totals", &Economy::totals)
      .def_readonly("money_unit", &Economy::money_unit)
      .def_readonly("dropped_sectors", &Economy::dropped_sectors)
      .def("__len__", [](const Economy& e) { return e.size(); })
      .def(py::self == py::self);

  py::class_<EmissionAccount>(m, "EmissionAccount")
      .def_readonly("emissions", &EmissionAccount::emissions)
      .def_readonly("emission_unit", &EmissionAccount::emission_unit)
      .def("total", &EmissionAccount::total);

  py::class_<BalanceReport>(m, "BalanceReport")
      .def_readonly("row_residuals", &BalanceReport::row_residuals)
      .def_readonly("col_residuals", &BalanceReport::col_residuals)
      .def_readonly("max_residual", &BalanceReport::max_residual)
      .def_readonly("tol_rel", &BalanceReport::tol_rel)
      .def_readonly("ok", &BalanceReport::ok);

  py::class_<CoefficientMatrix>(m, "CoefficientMatrix")
      .def(py::init<CoefficientKind, Matrix>(), py::arg("kind"), py::arg("values"))
      .def_property_readonly("kind", &CoefficientMatrix::kind)
      .def_property_readonly("values", &CoefficientMatrix::values);

  py::class_<IntensityVector>(m, "IntensityVector")
      .def(py::init([](IntensityKind kind, RowVector values) {
             return IntensityVector{kind, std::move(values)};
           }),
           py::arg("kind"), py::arg("values"))
      .def_readonly("kind", &IntensityVector::kind)
      .def_readonly("values", &IntensityVector::values);

  py::class_<AttributionReport>(m, "AttributionReport")
      .def_readonly("per_sector", &AttributionReport::per_sector)
      .def_readonly("total_attributed", &AttributionReport::total_attributed)
      .def_readonly("total_emissions", &AttributionReport::total_emissions)
      .def_readonly("conservation_residual", &AttributionReport::conservation_residual);

  py::class_<NeumannResult>(m, "NeumannResult")
      .def_readonly("intensity", &NeumannResult::intensity)
      .def_readonly("terms_used", &NeumannResult::terms_used);

  py::class_<SpectralEstimate>(m, "SpectralEstimate")
      .def_readonly("rho", &SpectralEstimate::rho)
      .def_readonly("iterations", &SpectralEstimate::iterations)
      .def_readonly("converged", &SpectralEstimate::converged);

  py::class_<PerturbationReport>(m, "PerturbationReport")
      .def_readonly("epsilon", &PerturbationReport::epsilon)
      .def_readonly("samples", &PerturbationReport::samples)
      .def_readonly("baseline_norm", &PerturbationReport::baseline_norm)
      .def_readonly("max_deviation", &PerturbationReport::max_deviation)
      .def_readonly("amplification", &PerturbationReport::amplification)
      .def_readonly("diverged_count", &PerturbationReport::diverged_count)
      .def_readonly("seed", &PerturbationReport::seed);

  m.def("build_economy", &build_economy, py::arg("sectors"), py::arg("transactions"),
        py::arg("demand"), py::arg("value_added") = py::none(), py::arg("totals") = py::none(),
        py::arg("policy") = BuildPolicy{});
  m.def("validate_balance", &validate_balance, py::arg("economy"), py::arg("tol_rel") = 1e-6);
  m.def("make_emission_account", &make_emission_account, py::arg("economy"),
        py::arg("emissions"), py::arg("unit") = std::string{});
  m.def("demand_identity_residual", &demand_identity_residual);

  m.def("technical_coefficients", &technical_coefficients);
  m.def("allocation_coefficients", &allocation_coefficients);
  m.def("direct_intensity", &direct_intensity);
  m.def("leontief_inverse", &leontief_inverse);
  m.def("total_intensity",
        py::overload_cast<const IntensityVector&, const CoefficientMatrix&>(&total_intensity));
  m.def(
      "total_intensity_neumann",
      [](const IntensityVector& direct, const CoefficientMatrix& a, double tol,
         std::size_t max_terms) {
        NeumannOptions options;
        options.tol = tol;
        options.max_terms = max_terms;
        return total_intensity_neumann(direct, a, options);
      },
      py::arg("direct"), py::arg("a"), py::arg("tol") = 1e-10, py::arg("max_terms") = 100000);
  m.def("consumer_direct_footprint", &consumer_direct_footprint);
  m.def("attribute_to_demand", &attribute_to_demand);
  m.def("systemic_intensity", &systemic_intensity);
  m.def("systemic_intensity_literal", &systemic_intensity_literal);
  m.def("attribute_to_value_added", &attribute_to_value_added);

  m.def("spectral_radius",
        py::overload_cast<const CoefficientMatrix&, double, std::size_t>(&spectral_radius),
        py::arg("a"), py::arg("tol") = 1e-12, py::arg("max_iter") = 10000);
  m.def("perturb_inverse", &perturb_inverse, py::arg("a"), py::arg("epsilon"), py::arg("samples"),
        py::arg("seed"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("amplification_curve", &amplification_curve, py::arg("a_values"), py::arg("epsilon"));

  m.def(
      "generate_economy",
      [](Eigen::Index n, std::uint64_t seed, double column_sum_cap, double demand_scale,
         double emission_scale) {
        return generate_economy({n, seed, column_sum_cap, demand_scale, emission_scale});
      },
      py::arg("n") = 5, py::arg("seed") = 0, py::arg("column_sum_cap") = 0.9,
      py::arg("demand_scale") = 100.0, py::arg("emission_scale") = 0.1);

  m.def("parse_table",
        py::overload_cast<const std::filesystem::path&, const BuildPolicy&>(&parse_table),
        py::arg("path"), py::arg("policy") = BuildPolicy{});
  m.def("parse_emissions",
        py::overload_cast<const std::filesystem::path&, const Economy&>(&parse_emissions),
        py::arg("path"), py::arg("economy"));
  m.def("write_table",
        py::overload_cast<const std::filesystem::path&, const Economy&>(&write_table));
  m.def("write_emissions",
        py::overload_cast<const std::filesystem::path&, const Economy&, const EmissionAccount&>(
            &write_emissions));

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI command line; returns (exit_code, stdout, stderr).");
}
