// Python bindings for the simulator core: field model, gradient
// estimation, source estimator, formation control, the full engine and
// the Monte Carlo harness.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "artva/config.hpp"
#include "artva/engine.hpp"
#include "artva/errors.hpp"
#include "artva/es_gradient.hpp"
#include "artva/field_model.hpp"
#include "artva/formation.hpp"
#include "artva/mc.hpp"
#include "artva/rng.hpp"
#include "artva/timebase.hpp"
#include "artva/tx_estimator.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-agent magnetic-beacon localization simulator";

  py::register_exception<artva::ConfigError>(m, "ConfigError",
                                             PyExc_ValueError);
  py::register_exception<artva::IoError>(m, "IoError", PyExc_IOError);
  py::register_exception<artva::SingularField>(m, "SingularFieldError",
                                               PyExc_ValueError);

  // --- random streams -----------------------------------------------------
  m.def("derive_stream_seed", &artva::derive_stream_seed, py::arg("master"),
        py::arg("stream_id"),
        "Mix a master seed and a stream id into an independent stream seed.");
  py::class_<artva::RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", py::overload_cast<>(&artva::RngStream::uniform),
           "Uniform double in [0, 1).")
      .def("normal", &artva::RngStream::normal, "Standard normal draw.");

  // --- field model ---------------------------------------------------------
  py::class_<artva::TxSource>(m, "TxSource")
      .def(py::init<>())
      .def_readwrite("position", &artva::TxSource::position)
      .def_readwrite("attitude", &artva::TxSource::attitude)
      .def_readwrite("power", &artva::TxSource::power);
  py::class_<artva::RxPose>(m, "RxPose")
      .def(py::init<>())
      .def_readwrite("position", &artva::RxPose::position)
      .def_readwrite("attitude", &artva::RxPose::attitude);
  py::class_<artva::NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_readwrite("amplitude_bound", &artva::NoiseModel::amplitude_bound);
  py::class_<artva::Measurement>(m, "Measurement")
      .def_readonly("intensity", &artva::Measurement::intensity)
      .def_readonly("reading", &artva::Measurement::reading);
  m.def("moment", &artva::moment, py::arg("p"),
        "Dipole anisotropy m(p) = (2x^2-y^2-z^2, 3xy, 3xz).");
  m.def("field_at", &artva::field_at, py::arg("tx"), py::arg("rx"),
        "Magnetic dipole field at the receiver, in the receiver frame.");
  m.def("intensity_of", &artva::intensity_of, py::arg("reading"),
        "Intensity of a field reading: |v|^(-2/3), 0 at the extremes.");
  m.def("measure", &artva::measure, py::arg("tx"), py::arg("rx"),
        py::arg("noise"), py::arg("rng"), "One noisy intensity measurement.");
  m.def("is_rotation", &artva::is_rotation, py::arg("r"),
        py::arg("tol") = 1e-12);

  // --- extremum-seeking gradient estimation --------------------------------
  py::class_<artva::DitherParams>(m, "DitherParams")
      .def(py::init<>())
      .def_readwrite("amplitude", &artva::DitherParams::amplitude)
      .def_readwrite("omega", &artva::DitherParams::omega)
      .def_readwrite("kappa", &artva::DitherParams::kappa)
      .def_readwrite("planar", &artva::DitherParams::planar);
  py::class_<artva::EsState>(m, "EsState")
      .def(py::init<>())
      .def_readwrite("grad_hat", &artva::EsState::grad_hat)
      .def_readwrite("z", &artva::EsState::z)
      .def_readwrite("alpha", &artva::EsState::alpha);
  m.def("dither", &artva::dither, py::arg("params"), py::arg("t"),
        "Probe direction at research step t.");
  m.def("agent_position", &artva::agent_position, py::arg("base"),
        py::arg("params"), py::arg("t"),
        "Dithered agent position at research step t.");
  m.def("es_update", &artva::es_update, py::arg("state"), py::arg("y"),
        py::arg("gamma"), "One extremum-seeking filter update.");
  m.def("bearing", &artva::bearing, py::arg("grad_hat"), py::arg("eps_reg"),
        py::arg("sign"), "Regularized unit-capped bearing from a gradient.");

  // --- source estimator -----------------------------------------------------
  py::class_<artva::EstimatorState>(m, "EstimatorState")
      .def(py::init<>())
      .def_readwrite("p_hat", &artva::EstimatorState::p_hat)
      .def_readwrite("beta", &artva::EstimatorState::beta)
      .def_readwrite("rho_hat", &artva::EstimatorState::rho_hat)
      .def_readwrite("eps_reg", &artva::EstimatorState::eps_reg);
  py::class_<artva::BearingSet>(m, "BearingSet")
      .def(py::init<>())
      .def_readwrite("bearings", &artva::BearingSet::bearings)
      .def_readwrite("bases", &artva::BearingSet::bases)
      .def("size", &artva::BearingSet::size);
  py::class_<artva::EstimateTrace>(m, "EstimateTrace")
      .def_readonly("state", &artva::EstimateTrace::state)
      .def_readonly("residual_norms", &artva::EstimateTrace::residual_norms)
      .def_readonly("reset_fallback", &artva::EstimateTrace::reset_fallback);
  m.def("unit_stack", &artva::unit_stack, py::arg("p"), py::arg("bases"),
        py::arg("eps_reg"),
        "Stacked regularized unit vectors from the bases toward p.");
  m.def("projector", &artva::projector, py::arg("u"), py::arg("eps_reg"),
        "Regularized orthogonal-complement projector of u.");
  m.def("jacobian", &artva::jacobian, py::arg("p"), py::arg("bases"),
        py::arg("eps_reg"), "Jacobian of the stacked unit vectors at p.");
  m.def("ls_reset", &artva::ls_reset, py::arg("bearings"), py::arg("eps_reg"),
        "Closed-form re-anchor; None when the bearings are degenerate.");
  m.def("ls_step", &artva::ls_step, py::arg("state"), py::arg("bearings"),
        py::arg("centroid"), "One damped Gauss-Newton step, ball-clamped.");
  m.def("estimate_research_step", &artva::estimate_research_step,
        py::arg("bearings"), py::arg("centroid"), py::arg("prev"),
        py::arg("period"),
        py::arg("first_step_direction") = std::optional<Eigen::Vector3d>{},
        "Full inner loop of one research step of the source estimator.");

  // --- formation -------------------------------------------------------------
  py::class_<artva::FormationState>(m, "FormationState")
      .def(py::init<>())
      .def_readwrite("centroid", &artva::FormationState::centroid)
      .def_readwrite("offsets", &artva::FormationState::offsets)
      .def_readwrite("gain", &artva::FormationState::gain)
      .def_readwrite("sigma", &artva::FormationState::sigma);
  py::class_<artva::FleetDirections>(m, "FleetDirections")
      .def_readonly("es", &artva::FleetDirections::es)
      .def_readonly("ls", &artva::FleetDirections::ls);
  m.def("sigma_blend", &artva::sigma_blend, py::arg("b"), py::arg("f_val"),
        "Reliability blend in [0, 1] from stacked bearings and fit.");
  m.def("sigma_from_residual", &artva::sigma_from_residual,
        py::arg("residual_norm"), py::arg("n_agents"));
  m.def("fleet_directions", &artva::fleet_directions, py::arg("grads"),
        py::arg("p_hat"), py::arg("centroid"), py::arg("eps_reg"),
        py::arg("sign"));
  m.def("centroid_update", &artva::centroid_update, py::arg("formation"),
        py::arg("es_dir"), py::arg("ls_dir"), py::arg("sigma"),
        "Move the centroid one step along the blended direction.");
  m.def("agent_bases", &artva::agent_bases, py::arg("formation"));
  m.def("square_offsets", &artva::square_offsets, py::arg("edge"),
        "Zero-mean offsets at the corners of a square in the x-y plane.");

  // --- timebase ---------------------------------------------------------------
  py::class_<artva::Timebase>(m, "Timebase")
      .def_static("start", &artva::Timebase::start, py::arg("period"))
      .def_readonly("k", &artva::Timebase::k)
      .def_readonly("period", &artva::Timebase::period)
      .def_readonly("t", &artva::Timebase::t)
      .def_readonly("tau", &artva::Timebase::tau)
      .def("at_period_end", &artva::Timebase::at_period_end);
  m.def("advance", &artva::advance, py::arg("timebase"));

  // --- configuration ------------------------------------------------------------
  py::enum_<artva::Mode>(m, "Mode")
      .value("ES", artva::Mode::EsOnly)
      .value("LS", artva::Mode::LsOnly)
      .value("ESLS", artva::Mode::Combined);
  py::enum_<artva::SigmaForce>(m, "SigmaForce")
      .value("NONE", artva::SigmaForce::None)
      .value("ZERO", artva::SigmaForce::Zero)
      .value("ONE", artva::SigmaForce::One);
  py::class_<artva::SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("dimensions", &artva::SimConfig::dimensions)
      .def_readwrite("mode", &artva::SimConfig::mode)
      .def_readwrite("sigma_force", &artva::SimConfig::sigma_force)
      .def_readwrite("seed", &artva::SimConfig::seed)
      .def_readwrite("n_agents", &artva::SimConfig::n_agents)
      .def_readwrite("formation_edge", &artva::SimConfig::formation_edge)
      .def_readwrite("offsets", &artva::SimConfig::offsets)
      .def_readwrite("centroid_init", &artva::SimConfig::centroid_init)
      .def_readwrite("tx_position", &artva::SimConfig::tx_position)
      .def_readwrite("tx_attitude_rpy_deg",
                     &artva::SimConfig::tx_attitude_rpy_deg)
      .def_readwrite("tx_power", &artva::SimConfig::tx_power)
      .def_readwrite("noise_bound", &artva::SimConfig::noise_bound)
      .def_readwrite("delta", &artva::SimConfig::delta)
      .def_readwrite("omega", &artva::SimConfig::omega)
      .def_readwrite("kappa", &artva::SimConfig::kappa)
      .def_readwrite("alpha", &artva::SimConfig::alpha)
      .def_readwrite("beta", &artva::SimConfig::beta)
      .def_readwrite("gamma", &artva::SimConfig::gamma)
      .def_readwrite("rho_hat", &artva::SimConfig::rho_hat)
      .def_readwrite("eps_reg", &artva::SimConfig::eps_reg)
      .def_readwrite("period", &artva::SimConfig::period)
      .def_readwrite("max_research_steps",
                     &artva::SimConfig::max_research_steps)
      .def_readwrite("grad_init_std", &artva::SimConfig::grad_init_std)
      .def_readwrite("bearing_sign", &artva::SimConfig::bearing_sign)
      .def("resolved_offsets", &artva::SimConfig::resolved_offsets)
      .def("resolved_kappa", &artva::SimConfig::resolved_kappa);
  m.def("validate_config", &artva::validate, py::arg("config"));
  m.def("parse_config_text", &artva::parse_config_text, py::arg("text"));
  m.def("load_config", &artva::load_config, py::arg("path"));
  m.def("format_config", &artva::format_config, py::arg("config"));

  // --- engine ----------------------------------------------------------------------
  py::class_<artva::TraceRow>(m, "TraceRow")
      .def_readonly("t", &artva::TraceRow::t)
      .def_readonly("centroid", &artva::TraceRow::centroid)
      .def_readonly("p_hat", &artva::TraceRow::p_hat)
      .def_readonly("error", &artva::TraceRow::error)
      .def_readonly("err_norm", &artva::TraceRow::err_norm)
      .def_readonly("dist_centroid", &artva::TraceRow::dist_centroid)
      .def_readonly("sigma", &artva::TraceRow::sigma)
      .def_readonly("sigma_smooth", &artva::TraceRow::sigma_smooth)
      .def_readonly("reset_fallback", &artva::TraceRow::reset_fallback)
      .def_readonly("bases", &artva::TraceRow::bases)
      .def_readonly("positions", &artva::TraceRow::positions)
      .def_readonly("intensities", &artva::TraceRow::intensities)
      .def_readonly("grads", &artva::TraceRow::grads)
      .def_readonly("bearings", &artva::TraceRow::bearings);
  py::class_<artva::RunTrace>(m, "RunTrace")
      .def_readonly("config", &artva::RunTrace::config)
      .def_readonly("seed", &artva::RunTrace::seed)
      .def_readonly("rows", &artva::RunTrace::rows);
  py::class_<artva::Engine>(m, "Engine")
      .def(py::init<const artva::SimConfig&>(), py::arg("config"))
      .def("research_step", &artva::Engine::research_step)
      .def("run", &artva::Engine::run)
      .def_property_readonly("next_step", &artva::Engine::next_step)
      .def_property_readonly(
          "formation",
          [](const artva::Engine& e) { return e.formation(); })
      .def_property_readonly(
          "estimator",
          [](const artva::Engine& e) { return e.estimator(); });
  m.def("run_simulation", &artva::run_simulation, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("write_trace_csv",
        py::overload_cast<const artva::RunTrace&, const std::string&>(
            &artva::write_trace_csv),
        py::arg("trace"), py::arg("path"));

  // --- Monte Carlo harness -------------------------------------------------------------
  py::class_<artva::ConvergenceCriterion>(m, "ConvergenceCriterion")
      .def(py::init<>())
      .def_readwrite("threshold", &artva::ConvergenceCriterion::threshold)
      .def_readwrite("window", &artva::ConvergenceCriterion::window)
      .def_readwrite("max_steps", &artva::ConvergenceCriterion::max_steps);
  py::class_<artva::ModeStats>(m, "ModeStats")
      .def_readonly("mode", &artva::ModeStats::mode)
      .def_readonly("runs", &artva::ModeStats::runs)
      .def_readonly("converged", &artva::ModeStats::converged)
      .def_readonly("non_converged", &artva::ModeStats::non_converged)
      .def_readonly("steps", &artva::ModeStats::steps)
      .def_readonly("mean", &artva::ModeStats::mean)
      .def_readonly("stddev", &artva::ModeStats::stddev)
      .def_readonly("q1", &artva::ModeStats::q1)
      .def_readonly("median", &artva::ModeStats::median)
      .def_readonly("q3", &artva::ModeStats::q3)
      .def_readonly("whisker_low", &artva::ModeStats::whisker_low)
      .def_readonly("whisker_high", &artva::ModeStats::whisker_high)
      .def_readonly("outliers", &artva::ModeStats::outliers);
  py::class_<artva::McSummary>(m, "McSummary")
      .def_readonly("base_seed", &artva::McSummary::base_seed)
      .def_readonly("runs", &artva::McSummary::runs)
      .def_readonly("criterion", &artva::McSummary::criterion)
      .def_readonly("modes", &artva::McSummary::modes);
  m.def("convergence_step", &artva::convergence_step, py::arg("err_norms"),
        py::arg("criterion"));
  m.def("run_convergence", &artva::run_convergence, py::arg("config"),
        py::arg("criterion"), py::call_guard<py::gil_scoped_release>());
  m.def("run_batch", &artva::run_batch, py::arg("config"), py::arg("runs"),
        py::arg("base_seed"), py::arg("modes"), py::arg("criterion"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("summary_json", &artva::summary_json, py::arg("summary"));
  m.def("parse_summary_json", &artva::parse_summary_json, py::arg("text"));
  m.def("write_summary_json", &artva::write_summary_json, py::arg("summary"),
        py::arg("path"));
  m.def("write_boxplot_csv", &artva::write_boxplot_csv, py::arg("summary"),
        py::arg("path"));
  m.def("format_summary_table", &artva::format_summary_table,
        py::arg("summary"));

#ifdef ARTVA_VERSION
  m.attr("__version__") = ARTVA_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
