#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pursuitsim/engine.hpp"
#include "pursuitsim/errors.hpp"
#include "pursuitsim/exporter.hpp"
#include "pursuitsim/scenario.hpp"

namespace py = pybind11;
using namespace pursuitsim;

PYBIND11_MODULE(pursuitsim, m) {
  m.doc() = "deterministic pursuer-evader simulation engine";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  m.attr("EARTH_RADIUS") = kEarthRadius;

  // --- geo ---
  py::class_<GeodeticPosition>(m, "GeodeticPosition")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("lon"), py::arg("lat"),
           py::arg("radius") = kEarthRadius)
      .def_readwrite("lon", &GeodeticPosition::lon)
      .def_readwrite("lat", &GeodeticPosition::lat)
      .def_readwrite("radius", &GeodeticPosition::radius);

  m.def("normalize_angle", &normalize_angle, py::arg("a"));
  m.def(
      "geodetic_to_ecef",
      [](const GeodeticPosition& p) { return geodetic_to_ecef(p).vec(); },
      py::arg("p"));
  m.def(
      "enu_rotation",
      [](const GeodeticPosition& p) { return enu_rotation(p).matrix(); },
      py::arg("p"));
  m.def(
      "ecef_to_enu",
      [](const Eigen::Vector3d& v, const GeodeticPosition& origin) {
        return ecef_to_enu(EcefVector::from(v), origin).vec();
      },
      py::arg("v"), py::arg("origin"));
  m.def(
      "enu_to_ecef",
      [](const Eigen::Vector3d& v, const GeodeticPosition& origin) {
        return enu_to_ecef(EnuVector::from(v), origin).vec();
      },
      py::arg("v"), py::arg("origin"));
  m.def("great_circle_distance", &great_circle_distance, py::arg("a"), py::arg("b"));
  m.def("initial_bearing", &initial_bearing, py::arg("a"), py::arg("b"));
  m.def("great_circle_step", &great_circle_step, py::arg("p"), py::arg("heading"),
        py::arg("distance"));

  // --- kinematics ---
  py::class_<VesselState>(m, "VesselState")
      .def(py::init<>())
      .def_readwrite("id", &VesselState::id)
      .def_readwrite("pos", &VesselState::pos)
      .def_readwrite("speed", &VesselState::speed)
      .def_readwrite("heading", &VesselState::heading)
      .def_readwrite("max_speed", &VesselState::max_speed);

  py::class_<PolarAdjustment>(m, "PolarAdjustment")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("u_v"), py::arg("u_theta"))
      .def_readwrite("u_v", &PolarAdjustment::u_v)
      .def_readwrite("u_theta", &PolarAdjustment::u_theta);

  m.def(
      "decompose_control",
      [](double u_x, double u_y) { return decompose_control({u_x, u_y}); },
      py::arg("u_x"), py::arg("u_y"));
  m.def("step_vessel", &step_vessel, py::arg("state"), py::arg("now"),
        py::arg("prev"), py::arg("delta"), py::arg("dt"));

  // --- rl ---
  py::class_<LearnerConfig>(m, "LearnerConfig")
      .def(py::init<>())
      .def_readwrite("alpha_a", &LearnerConfig::alpha_a)
      .def_readwrite("alpha_c", &LearnerConfig::alpha_c)
      .def_readwrite("Delta", &LearnerConfig::Delta)
      .def_readwrite("L", &LearnerConfig::L)
      .def_readwrite("N_t", &LearnerConfig::N_t)
      .def_readwrite("init_scale", &LearnerConfig::init_scale)
      .def_readwrite("rng_seed", &LearnerConfig::rng_seed);

  m.def("stage_cost", &stage_cost_n, py::arg("E"), py::arg("u"), py::arg("Q"),
        py::arg("R"));
  m.def("value", &value_n, py::arg("E"), py::arg("u"), py::arg("W"));
  m.def("actor_target", &actor_target_n, py::arg("E"), py::arg("W"));
  m.def("critic_target", &critic_target_n, py::arg("E_next"), py::arg("u_next"),
        py::arg("E"), py::arg("u"), py::arg("W"), py::arg("Q"), py::arg("R"));
  m.def(
      "critic_update",
      [](const Eigen::MatrixXd& W, const Eigen::VectorXd& E, double u,
         double target, double alpha_c) {
        return critic_update_n(W, E, u, target, alpha_c);
      },
      py::arg("W"), py::arg("E"), py::arg("u"), py::arg("target"),
      py::arg("alpha_c"));
  m.def(
      "actor_update",
      [](const Eigen::RowVectorXd& K, const Eigen::VectorXd& E, double u_hat,
         double u_tilde, double alpha_a) {
        return actor_update_n(K, E, u_hat, u_tilde, alpha_a);
      },
      py::arg("K"), py::arg("E"), py::arg("u_hat"), py::arg("u_tilde"),
      py::arg("alpha_a"));

  py::class_<Learner>(m, "Learner")
      .def(py::init<int, Eigen::MatrixXd, double, LearnerConfig>(), py::arg("dim"),
           py::arg("Q"), py::arg("R"), py::arg("config"))
      .def("step",
           [](Learner& self, const Eigen::VectorXd& E, double u,
              const Eigen::VectorXd& E_next) {
             return self.step({E, u, E_next});
           })
      .def("policy", &Learner::policy)
      .def_property_readonly("critic", &Learner::critic)
      .def_property_readonly("actor", &Learner::actor)
      .def_property_readonly("critic_converged", &Learner::critic_converged)
      .def_property_readonly("actor_converged", &Learner::actor_converged)
      .def_property_readonly("stopped", &Learner::stopped)
      .def_property_readonly("iteration", &Learner::iteration);

  m.def(
      "riccati_oracle",
      [](const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
         const Eigen::MatrixXd& Q, double R) {
        const RiccatiSolution sol = riccati_oracle(A, B, Q, R);
        return py::make_tuple(sol.P, sol.K);
      },
      py::arg("A"), py::arg("B"), py::arg("Q"), py::arg("R"));

  // --- pursuit ---
  py::class_<TrackingError>(m, "TrackingError")
      .def_readonly("ex", &TrackingError::ex)
      .def_readonly("ey", &TrackingError::ey)
      .def_readonly("e_theta", &TrackingError::e_theta);

  m.def("measure_error", &measure_error, py::arg("pursuer"),
        py::arg("target_point"), py::arg("target_heading"));
  m.def("check_capture", &check_capture, py::arg("pursuer"), py::arg("evader"),
        py::arg("radius"));

  // --- engine + io ---
  py::class_<PursuerMetrics>(m, "PursuerMetrics")
      .def_readonly("vessel_id", &PursuerMetrics::vessel_id)
      .def_readonly("capture_time_s", &PursuerMetrics::capture_time_s)
      .def_readonly("min_distance_m", &PursuerMetrics::min_distance_m);

  py::class_<VesselSnapshot>(m, "VesselSnapshot")
      .def_readonly("vessel_id", &VesselSnapshot::vessel_id)
      .def_readonly("lon_deg", &VesselSnapshot::lon_deg)
      .def_readonly("lat_deg", &VesselSnapshot::lat_deg)
      .def_readonly("speed_mps", &VesselSnapshot::speed_mps)
      .def_readonly("heading_deg", &VesselSnapshot::heading_deg)
      .def_readonly("ex_m", &VesselSnapshot::ex_m)
      .def_readonly("ey_m", &VesselSnapshot::ey_m)
      .def_readonly("e_theta_rad", &VesselSnapshot::e_theta_rad)
      .def_readonly("u_x", &VesselSnapshot::u_x)
      .def_readonly("u_y", &VesselSnapshot::u_y)
      .def_readonly("u_v", &VesselSnapshot::u_v)
      .def_readonly("u_theta", &VesselSnapshot::u_theta)
      .def_readonly("captured", &VesselSnapshot::captured)
      .def_readonly("critic_converged", &VesselSnapshot::critic_converged)
      .def_readonly("actor_converged", &VesselSnapshot::actor_converged);

  py::class_<TickSnapshot>(m, "TickSnapshot")
      .def_readonly("time_s", &TickSnapshot::time_s)
      .def_readonly("vessels", &TickSnapshot::vessels);

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readonly("pursuers", &RunMetrics::pursuers)
      .def_readonly("capture_order", &RunMetrics::capture_order)
      .def_readonly("unapplied_events", &RunMetrics::unapplied_events);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def_readwrite("name", &ScenarioConfig::name)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("dt_s", &ScenarioConfig::dt_s)
      .def_readwrite("max_duration_s", &ScenarioConfig::max_duration_s)
      .def_readwrite("capture_radius_m", &ScenarioConfig::capture_radius_m);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("config", &RunRecord::config)
      .def_readonly("ticks", &RunRecord::ticks)
      .def_readonly("metrics", &RunRecord::metrics);

  m.def("parse_scenario", &parse_scenario, py::arg("text"));
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("serialize_scenario", &serialize_scenario, py::arg("config"));
  m.def("bundled_scenario_names", [] {
    std::vector<std::string> names;
    for (const BundledScenario& b : bundled_scenarios()) names.push_back(b.name);
    return names;
  });
  m.def("bundled_scenario_config", &bundled_scenario_config, py::arg("key"));
  m.def("run", &run, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("step_log_csv", &step_log_csv, py::arg("record"));
  m.def("tracks_kml", &tracks_kml, py::arg("record"));
  m.def("tracks_geojson", &tracks_geojson, py::arg("record"));
  m.def("run_summary", &run_summary, py::arg("record"));
  m.def(
      "export_run",
      [](const RunRecord& rec, const std::vector<std::string>& formats,
         const std::filesystem::path& out_dir) {
        std::set<ExportFormat> fs;
        for (const std::string& f : formats) fs.insert(parse_format_name(f));
        return export_run(rec, fs, out_dir);
      },
      py::arg("record"), py::arg("formats"), py::arg("out_dir"));
}
