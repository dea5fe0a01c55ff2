// Python bindings for the core operations: special functions, discrete bath
// sums, density-matrix evolution, continuum spectral models and the device
// builders.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dephasure/bathmodel.hpp"
#include "dephasure/config.hpp"
#include "dephasure/devices.hpp"
#include "dephasure/exactsum.hpp"
#include "dephasure/runner.hpp"
#include "dephasure/specfun.hpp"

namespace py = pybind11;
using namespace dephasure;

PYBIND11_MODULE(_dephasure, m) {
  m.doc() = "cavity-mode dephasing from a dense acoustic environment";

  // --- special functions ---
  m.def("exp_integral_e1", &specfun::exp_integral_e1, py::arg("z"));
  m.def("upper_incomplete_gamma", &specfun::upper_incomplete_gamma,
        py::arg("order"), py::arg("z"));
  m.def("coth_half", &specfun::coth_half, py::arg("x"));
  m.def("sinc", &specfun::sinc, py::arg("x"));

  // --- discrete bath ---
  py::class_<ModeBath>(m, "ModeBath")
      .def(py::init([](std::vector<double> omega, std::vector<double> lambda) {
             ModeBath b{std::move(omega), std::move(lambda)};
             b.validate();
             return b;
           }),
           py::arg("omega"), py::arg("lambda_"))
      .def_readonly("omega", &ModeBath::omega)
      .def_readonly("lambda_", &ModeBath::lambda)
      .def("__len__", &ModeBath::size);

  py::class_<CavityParams>(m, "CavityParams")
      .def(py::init([](double omega) { return CavityParams{omega}; }),
           py::arg("omega_cavity"))
      .def_readonly("omega_cavity", &CavityParams::omega_cavity);

  py::class_<ThermalParams>(m, "ThermalParams")
      .def_static("from_temperature", &ThermalParams::from_temperature,
                  py::arg("kelvin"))
      .def_static("from_beta_hbar", &ThermalParams::from_beta_hbar,
                  py::arg("seconds"))
      .def_readonly("temperature", &ThermalParams::temperature)
      .def_readonly("beta_hbar", &ThermalParams::beta_hbar);

  py::class_<ExponentBreakdown>(m, "ExponentBreakdown")
      .def_readonly("free_phase", &ExponentBreakdown::free_phase)
      .def_readonly("kerr_phase", &ExponentBreakdown::kerr_phase)
      .def_readonly("osc_phase", &ExponentBreakdown::osc_phase)
      .def_readonly("dephase", &ExponentBreakdown::dephase)
      .def("total_phase", &ExponentBreakdown::total_phase)
      .def("__repr__", [](const ExponentBreakdown& e) {
        std::ostringstream ss;
        ss << "ExponentBreakdown(free=" << e.free_phase
           << ", kerr=" << e.kerr_phase << ", osc=" << e.osc_phase
           << ", dephase=" << e.dephase << ")";
        return ss.str();
      });

  m.def("exponent_discrete", &exponent_discrete, py::arg("bath"),
        py::arg("cavity"), py::arg("thermal"), py::arg("n"), py::arg("n_prime"),
        py::arg("t"));
  m.def("kerr_constant_discrete", &kerr_constant_discrete, py::arg("bath"),
        py::arg("cavity"));

  py::class_<FockDensityMatrix>(m, "FockDensityMatrix")
      .def(py::init<Eigen::MatrixXcd>(), py::arg("entries"))
      .def_static("diagonal", &FockDensityMatrix::diagonal, py::arg("weights"))
      .def_static("equal_superposition", &FockDensityMatrix::equal_superposition,
                  py::arg("dim"), py::arg("n"), py::arg("n_prime"))
      .def_property_readonly("dim", &FockDensityMatrix::dim)
      .def_property_readonly("entries", &FockDensityMatrix::entries)
      .def("min_eigenvalue", &FockDensityMatrix::min_eigenvalue)
      .def("trace_real", &FockDensityMatrix::trace_real);

  m.def("evolve_density_matrix", &evolve_density_matrix, py::arg("rho0"),
        py::arg("bath"), py::arg("cavity"), py::arg("thermal"), py::arg("t"));
  m.def("coherence_magnitude", &coherence_magnitude, py::arg("rho"),
        py::arg("n"), py::arg("n_prime"));

  // --- continuum models ---
  py::enum_<bath::CutoffShape>(m, "CutoffShape")
      .value("exponential", bath::CutoffShape::Exponential)
      .value("sinc2", bath::CutoffShape::SincSq)
      .value("gaussian", bath::CutoffShape::Gaussian);

  py::class_<bath::SpectralModel>(m, "SpectralModel")
      .def(py::init([](int s, double coupling_c, double omega_1, double omega_u,
                       bath::CutoffShape cutoff, double boundary_weight,
                       double continuum_correction) {
             bath::SpectralModel mdl{s,      coupling_c,      omega_1,
                                     omega_u, cutoff,          boundary_weight,
                                     continuum_correction};
             mdl.validate();
             return mdl;
           }),
           py::arg("s"), py::arg("coupling_c"), py::arg("omega_1"),
           py::arg("omega_u"),
           py::arg("cutoff") = bath::CutoffShape::Exponential,
           py::arg("boundary_weight") = 0.0,
           py::arg("continuum_correction") = 1.0)
      .def_readonly("s", &bath::SpectralModel::s)
      .def_readonly("coupling_c", &bath::SpectralModel::coupling_c)
      .def_readonly("omega_1", &bath::SpectralModel::omega_1)
      .def_readonly("omega_u", &bath::SpectralModel::omega_u)
      .def_readonly("cutoff_shape", &bath::SpectralModel::cutoff_shape)
      .def_readonly("boundary_weight", &bath::SpectralModel::boundary_weight)
      .def_readonly("continuum_correction",
                    &bath::SpectralModel::continuum_correction);

  py::class_<bath::WeightFunction>(m, "WeightFunction")
      .def_static("inv_omega", &bath::WeightFunction::inv_omega)
      .def_static("oscillation", &bath::WeightFunction::oscillation, py::arg("t"))
      .def_static("dephasing_full", &bath::WeightFunction::dephasing_full,
                  py::arg("t"), py::arg("beta_hbar"))
      .def_static("dephasing_high_t", &bath::WeightFunction::dephasing_high_t,
                  py::arg("t"), py::arg("beta_hbar"))
      .def("__call__", &bath::WeightFunction::operator(), py::arg("omega"));

  m.def("spectral_integral_quadrature", &bath::spectral_integral_quadrature,
        py::arg("model"), py::arg("weight"), py::arg("rel_tol") = 1e-10);

  py::class_<bath::PhasePair>(m, "PhasePair")
      .def_readonly("kerr_phase", &bath::PhasePair::kerr_phase)
      .def_readonly("osc_phase", &bath::PhasePair::osc_phase);

  m.def("phase_closed", &bath::phase_closed, py::arg("model"), py::arg("cavity"),
        py::arg("n"), py::arg("n_prime"), py::arg("t"));
  m.def("dephase_closed_highT", &bath::dephase_closed_highT, py::arg("model"),
        py::arg("cavity"), py::arg("thermal"), py::arg("n"), py::arg("n_prime"),
        py::arg("t"));

  py::enum_<bath::TimeRegime>(m, "TimeRegime")
      .value("intermediate", bath::TimeRegime::Intermediate)
      .value("long_time", bath::TimeRegime::Long);

  py::class_<bath::AsymptoticExponent>(m, "AsymptoticExponent")
      .def_readonly("net_phase", &bath::AsymptoticExponent::net_phase)
      .def_readonly("dephase", &bath::AsymptoticExponent::dephase);

  m.def("asymptotic_exponent", &bath::asymptotic_exponent, py::arg("model"),
        py::arg("cavity"), py::arg("thermal"), py::arg("n"), py::arg("n_prime"),
        py::arg("t"), py::arg("regime"));
  m.def("subleading_oscillation", &bath::subleading_oscillation, py::arg("model"),
        py::arg("cavity"), py::arg("thermal"), py::arg("n"), py::arg("n_prime"),
        py::arg("t"));
  m.def("exponent_continuum", &bath::exponent_continuum, py::arg("model"),
        py::arg("cavity"), py::arg("thermal"), py::arg("n"), py::arg("n_prime"),
        py::arg("t"), py::arg("full_coth") = true);
  m.def("discretize", &bath::discretize, py::arg("model"),
        py::arg("mode_cutoff_factor") = 40.0);

  // --- devices ---
  py::class_<devices::StripParams>(m, "StripParams")
      .def(py::init<>())
      .def_readwrite("rho_m", &devices::StripParams::rho_m)
      .def_readwrite("tension_f", &devices::StripParams::tension_f)
      .def_readwrite("width_w", &devices::StripParams::width_w)
      .def_readwrite("thickness_t", &devices::StripParams::thickness_t)
      .def_readwrite("length_l", &devices::StripParams::length_l)
      .def_readwrite("metallized_dl", &devices::StripParams::metallized_dl)
      .def_readwrite("gap_d", &devices::StripParams::gap_d)
      .def_readwrite("circuit_omega", &devices::StripParams::circuit_omega)
      .def_readwrite("temperature", &devices::StripParams::temperature)
      .def("validate", &devices::StripParams::validate)
      .def("effective_mass", &devices::StripParams::effective_mass);

  py::class_<devices::MembraneParams>(m, "MembraneParams")
      .def(py::init<>())
      .def_readwrite("rho_m", &devices::MembraneParams::rho_m)
      .def_readwrite("tension_per_length",
                     &devices::MembraneParams::tension_per_length)
      .def_readwrite("thickness_t", &devices::MembraneParams::thickness_t)
      .def_readwrite("side_l", &devices::MembraneParams::side_l)
      .def_readwrite("cavity_length", &devices::MembraneParams::cavity_length)
      .def_readwrite("wavelength", &devices::MembraneParams::wavelength)
      .def_readwrite("rayleigh_range", &devices::MembraneParams::rayleigh_range)
      .def_readwrite("z0", &devices::MembraneParams::z0)
      .def_readwrite("refractive_n", &devices::MembraneParams::refractive_n)
      .def_readwrite("temperature", &devices::MembraneParams::temperature)
      .def("validate", &devices::MembraneParams::validate)
      .def("effective_mass", &devices::MembraneParams::effective_mass)
      .def("sigma_index", &devices::MembraneParams::sigma_index)
      .def("beam_waist", &devices::MembraneParams::beam_waist);

  py::class_<devices::Mode>(m, "Mode")
      .def_readonly("omega", &devices::Mode::omega)
      .def_readonly("lambda_", &devices::Mode::lambda);

  py::class_<devices::StripCutoffs>(m, "StripCutoffs")
      .def_readonly("omega_u", &devices::StripCutoffs::omega_u)
      .def_readonly("omega_1", &devices::StripCutoffs::omega_1)
      .def_readonly("coupling_c", &devices::StripCutoffs::coupling_c);

  py::class_<devices::ValidityCheck>(m, "ValidityCheck")
      .def_readonly("lhs", &devices::ValidityCheck::lhs)
      .def_readonly("max_length", &devices::ValidityCheck::max_length)
      .def_readonly("ok", &devices::ValidityCheck::ok);

  m.def("strip_mode", &devices::strip_mode, py::arg("i"), py::arg("params"));
  m.def("strip_cutoffs", &devices::strip_cutoffs, py::arg("params"));
  m.def("strip_spectral_model", &devices::strip_spectral_model, py::arg("params"),
        py::arg("boundary_weight") = devices::kStripBoundaryWeightRefined);
  m.def("strip_validity", &devices::strip_validity, py::arg("params"));
  m.def("strip_bath", &devices::strip_bath, py::arg("params"),
        py::arg("mode_cutoff_factor") = 40.0);
  m.def("strip_cavity", &devices::strip_cavity, py::arg("params"));
  m.def("membrane_mode", &devices::membrane_mode, py::arg("ix"), py::arg("iy"),
        py::arg("params"));
  m.def("membrane_cavity_frequency", &devices::membrane_cavity_frequency,
        py::arg("sigma"), py::arg("params"));
  m.def("membrane_spectral_model", &devices::membrane_spectral_model,
        py::arg("params"),
        py::arg("continuum_correction") = devices::kMembraneContinuumCorrection);
  m.def("membrane_bath", &devices::membrane_bath, py::arg("params"),
        py::arg("mode_cutoff_factor") = 3.0);
  m.def("membrane_cavity", &devices::membrane_cavity, py::arg("params"));

  py::class_<devices::DephasingReport>(m, "DephasingReport")
      .def_readonly("device_kind", &devices::DephasingReport::device_kind)
      .def_readonly("omega_u", &devices::DephasingReport::omega_u)
      .def_readonly("omega_1", &devices::DephasingReport::omega_1)
      .def_readonly("coupling_c", &devices::DephasingReport::coupling_c)
      .def_readonly("omega_cavity", &devices::DephasingReport::omega_cavity)
      .def_readonly("cavity_to_cutoff_ratio",
                    &devices::DephasingReport::cavity_to_cutoff_ratio)
      .def_readonly("window_lo", &devices::DephasingReport::window_lo)
      .def_readonly("window_hi", &devices::DephasingReport::window_hi)
      .def_readonly("kerr_constant", &devices::DephasingReport::kerr_constant)
      .def_readonly("long_time_plateau",
                    &devices::DephasingReport::long_time_plateau)
      .def_readonly("strip_coeff_first_order",
                    &devices::DephasingReport::strip_coeff_first_order)
      .def_readonly("strip_coeff_refined",
                    &devices::DephasingReport::strip_coeff_refined)
      .def_readonly("rephasing_time", &devices::DephasingReport::rephasing_time)
      .def_readonly("validity", &devices::DephasingReport::validity)
      .def_readonly("membrane_prefactor",
                    &devices::DephasingReport::membrane_prefactor)
      .def_readonly("membrane_prefactor_per_kelvin",
                    &devices::DephasingReport::membrane_prefactor_per_kelvin)
      .def_readonly("rephasing_expected",
                    &devices::DephasingReport::rephasing_expected);

  m.def(
      "device_dephasing_report",
      [](py::object params, double t_lo, double t_hi, int n, int n_prime) {
        if (py::isinstance<devices::StripParams>(params)) {
          return devices::device_dephasing_report(
              params.cast<devices::StripParams>(), t_lo, t_hi, n, n_prime);
        }
        return devices::device_dephasing_report(
            params.cast<devices::MembraneParams>(), t_lo, t_hi, n, n_prime);
      },
      py::arg("params"), py::arg("t_lo"), py::arg("t_hi"), py::arg("n") = 1,
      py::arg("n_prime") = 0);

  // --- run orchestration ---
  m.def(
      "run_config_file",
      [](const std::string& subcommand, const std::string& config_path,
         const std::string& out_dir, bool enforce_validity) {
        const auto cfg = io::parse_config_file(config_path);
        std::ostringstream out, err;
        const int code = io::run_subcommand(
            cfg, subcommand, {out_dir, enforce_validity}, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("subcommand"), py::arg("config_path"), py::arg("out_dir") = ".",
      py::arg("enforce_validity") = false,
      "run a CLI subcommand; returns (exit_code, stdout, stderr)");
}
