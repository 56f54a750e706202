#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "bptrack/config.hpp"
#include "bptrack/factors.hpp"
#include "bptrack/geometry.hpp"
#include "bptrack/metrics.hpp"
#include "bptrack/runner.hpp"
#include "bptrack/scenario.hpp"
#include "bptrack/tracker.hpp"

namespace py = pybind11;
using namespace bptrack;

namespace {

// C-array range members are exposed as (lo, hi) tuples.
template <typename T>
std::pair<double, double> get_range(const T& obj, const double (T::*member)[2]) {
  return {(obj.*member)[0], (obj.*member)[1]};
}

template <typename T>
void set_range(T& obj, double (T::*member)[2], std::pair<double, double> v) {
  (obj.*member)[0] = v.first;
  (obj.*member)[1] = v.second;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Passive radio tracking core";

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def(py::init([](std::pair<double, double> p) { return Vec2{p.first, p.second}; }))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("__repr__",
           [](const Vec2& v) {
             return "Vec2(" + format_double(v.x) + ", " + format_double(v.y) + ")";
           })
      .def("__iter__",
           [](const Vec2& v) {
             return py::iter(py::make_tuple(v.x, v.y));
           });
  py::implicitly_convertible<py::tuple, Vec2>();
  py::implicitly_convertible<py::list, Vec2>();

  py::class_<Pose>(m, "Pose")
      .def(py::init<>())
      .def(py::init([](Vec2 position, Vec2 orientation) {
             return Pose{position, orientation};
           }),
           py::arg("position"), py::arg("orientation") = Vec2{1.0, 0.0})
      .def_readwrite("position", &Pose::position)
      .def_readwrite("orientation", &Pose::orientation);

  m.def("relative_distance", &relative_distance, py::arg("tx"), py::arg("scatterer"),
        py::arg("rx"));
  m.def("aoa", &aoa, py::arg("target"), py::arg("rx"));
  m.def("ray_ellipse_range", &ray_ellipse_range, py::arg("tx"), py::arg("rx"),
        py::arg("direction"), py::arg("rel_distance"));
  m.def("position_from_direct", &position_from_direct, py::arg("tx"), py::arg("rx"),
        py::arg("rel_distance"), py::arg("theta"));

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("tx_position", &ScenarioConfig::tx_position)
      .def_readwrite("static_scatterers", &ScenarioConfig::static_scatterers)
      .def_readwrite("target_waypoints", &ScenarioConfig::target_waypoints)
      .def_readwrite("target_speed", &ScenarioConfig::target_speed)
      .def_readwrite("rx_waypoints", &ScenarioConfig::rx_waypoints)
      .def_readwrite("rx_speed", &ScenarioConfig::rx_speed)
      .def_readwrite("n_steps", &ScenarioConfig::n_steps)
      .def_readwrite("sigma_d", &ScenarioConfig::sigma_d)
      .def_readwrite("sigma_theta", &ScenarioConfig::sigma_theta)
      .def_readwrite("p_detect", &ScenarioConfig::p_detect)
      .def_readwrite("mu_fa", &ScenarioConfig::mu_fa)
      .def_property(
          "fa_d_range",
          [](const ScenarioConfig& c) { return get_range(c, &ScenarioConfig::fa_d_range); },
          [](ScenarioConfig& c, std::pair<double, double> v) {
            set_range(c, &ScenarioConfig::fa_d_range, v);
          })
      .def_property(
          "fa_theta_range",
          [](const ScenarioConfig& c) {
            return get_range(c, &ScenarioConfig::fa_theta_range);
          },
          [](ScenarioConfig& c, std::pair<double, double> v) {
            set_range(c, &ScenarioConfig::fa_theta_range, v);
          });
  m.def("benchmark_scenario", &benchmark_scenario);

  py::class_<GroundTruthFrame>(m, "GroundTruthFrame")
      .def_readonly("step", &GroundTruthFrame::step)
      .def_readonly("rx", &GroundTruthFrame::rx)
      .def_readonly("tx", &GroundTruthFrame::tx)
      .def_readonly("scatterers", &GroundTruthFrame::scatterers);

  py::class_<DirectMeasurement>(m, "DirectMeasurement")
      .def(py::init<>())
      .def_readwrite("theta", &DirectMeasurement::theta);

  py::class_<ScatterMeasurement>(m, "ScatterMeasurement")
      .def(py::init<>())
      .def_readwrite("rel_distance", &ScatterMeasurement::rel_distance)
      .def_readwrite("theta", &ScatterMeasurement::theta);

  py::class_<MeasurementFrame>(m, "MeasurementFrame")
      .def(py::init<>())
      .def_readwrite("step", &MeasurementFrame::step)
      .def_readwrite("direct", &MeasurementFrame::direct)
      .def_readwrite("scatter", &MeasurementFrame::scatter);

  m.def("waypoint_path", &waypoint_path, py::arg("waypoints"), py::arg("speed"),
        py::arg("n_steps"));
  m.def("make_ground_truth", &make_ground_truth, py::arg("config"));
  m.def(
      "synthesize",
      [](const ScenarioConfig& cfg, std::uint64_t seed) {
        RandomStream rng = make_run_stream(seed, 0, 0);
        return synthesize_all(make_ground_truth(cfg), cfg, rng);
      },
      py::arg("config"), py::arg("seed"),
      "Ground truth plus noisy measurement frames for every step.");

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("p_survival", &ModelParams::p_survival)
      .def_readwrite("p_detect", &ModelParams::p_detect)
      .def_readwrite("mu_fa", &ModelParams::mu_fa)
      .def_readwrite("sigma_d", &ModelParams::sigma_d)
      .def_readwrite("sigma_theta", &ModelParams::sigma_theta)
      .def_readwrite("sigma_tx_walk", &ModelParams::sigma_tx_walk)
      .def_readwrite("sigma_ps_walk", &ModelParams::sigma_ps_walk)
      .def_property(
          "fa_d_range",
          [](const ModelParams& p) { return get_range(p, &ModelParams::fa_d_range); },
          [](ModelParams& p, std::pair<double, double> v) {
            set_range(p, &ModelParams::fa_d_range, v);
          })
      .def_property(
          "fa_theta_range",
          [](const ModelParams& p) { return get_range(p, &ModelParams::fa_theta_range); },
          [](ModelParams& p, std::pair<double, double> v) {
            set_range(p, &ModelParams::fa_theta_range, v);
          })
      .def("clutter_density", &ModelParams::clutter_density);
  m.def("benchmark_model", &benchmark_model);

  m.def("likelihood_scatter", &likelihood_scatter, py::arg("z"), py::arg("tx"),
        py::arg("scatterer"), py::arg("rx"), py::arg("params"));
  m.def("likelihood_direct", &likelihood_direct, py::arg("z"), py::arg("tx"),
        py::arg("rx"), py::arg("params"));

  py::enum_<TrackerMode>(m, "TrackerMode")
      .value("Full", TrackerMode::Full)
      .value("Simplified1", TrackerMode::Simplified1)
      .value("Simplified2", TrackerMode::Simplified2)
      .value("TxOnly", TrackerMode::TxOnly);

  py::enum_<TrackerStage>(m, "TrackerStage")
      .value("Bootstrap", TrackerStage::Bootstrap)
      .value("Tracking", TrackerStage::Tracking);

  py::class_<TrackerConfig>(m, "TrackerConfig")
      .def(py::init<>())
      .def_readwrite("particle_count", &TrackerConfig::particle_count)
      .def_readwrite("p_exist", &TrackerConfig::p_exist)
      .def_readwrite("p_prune", &TrackerConfig::p_prune)
      .def_readwrite("assoc_tol", &TrackerConfig::assoc_tol)
      .def_readwrite("assoc_max_iter", &TrackerConfig::assoc_max_iter)
      .def_readwrite("lambda_undetected_init", &TrackerConfig::lambda_undetected_init)
      .def_readwrite("lambda_birth", &TrackerConfig::lambda_birth)
      .def_readwrite("tx_range_max", &TrackerConfig::tx_range_max)
      .def_readwrite("bootstrap_std_threshold", &TrackerConfig::bootstrap_std_threshold)
      .def_readwrite("stack_partners", &TrackerConfig::stack_partners)
      .def_readwrite("model", &TrackerConfig::model);
  m.def("benchmark_tracker_config", &benchmark_tracker_config);

  py::class_<TrackEstimate>(m, "TrackEstimate")
      .def_readonly("id", &TrackEstimate::id)
      .def_readonly("position", &TrackEstimate::position)
      .def_readonly("existence", &TrackEstimate::existence)
      .def_readonly("spread", &TrackEstimate::spread);

  py::class_<StepEstimate>(m, "StepEstimate")
      .def_readonly("tx", &StepEstimate::tx)
      .def_readonly("tracks", &StepEstimate::tracks);

  py::class_<Tracker>(m, "Tracker")
      .def(py::init<TrackerConfig, TrackerMode, std::uint64_t>(), py::arg("config"),
           py::arg("mode") = TrackerMode::Full, py::arg("seed") = 1)
      .def("step",
           [](Tracker& t, const MeasurementFrame& frame, const Pose& rx) {
             t.step(frame, rx);
           },
           py::arg("frame"), py::arg("rx"))
      .def("estimate", &Tracker::estimate)
      .def_property_readonly("stage", [](const Tracker& t) { return t.state().stage; })
      .def_property_readonly(
          "stage_transition_step",
          [](const Tracker& t) { return t.state().stage_transition_step; })
      .def_property_readonly("track_count",
                             [](const Tracker& t) { return t.state().scatterers.size(); });

  m.def(
      "ospa",
      [](const std::vector<Vec2>& a, const std::vector<Vec2>& b, double order,
         double cutoff) { return ospa(a, b, OspaParams{order, cutoff}); },
      py::arg("a"), py::arg("b"), py::arg("order") = 1.0, py::arg("cutoff") = 10.0);
  m.def(
      "min_cost_assignment",
      [](const std::vector<std::vector<double>>& cost) {
        std::vector<int> assignment;
        const double total = min_cost_assignment(cost, &assignment);
        return py::make_tuple(total, assignment);
      },
      py::arg("cost"), "Minimum total cost and the chosen column per row.");

  py::class_<OspaParams>(m, "OspaParams")
      .def(py::init<>())
      .def_readwrite("order", &OspaParams::order)
      .def_readwrite("cutoff", &OspaParams::cutoff);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("scenario", &RunConfig::scenario)
      .def_readwrite("tracker", &RunConfig::tracker)
      .def_readwrite("mode", &RunConfig::mode)
      .def_readwrite("ospa", &RunConfig::ospa)
      .def_readwrite("runs", &RunConfig::runs)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("out_dir", &RunConfig::out_dir)
      .def_readwrite("track_spread_gate", &RunConfig::track_spread_gate);
  m.def("default_run_config", &default_run_config);
  m.def("parse_config_text", &parse_config_text, py::arg("text"));
  m.def("format_config", &format_config, py::arg("config"));

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readonly("tx_error", &RunMetrics::tx_error)
      .def_readonly("target_error", &RunMetrics::target_error)
      .def_readonly("ospa", &RunMetrics::ospa)
      .def_readonly("stage_transition_step", &RunMetrics::stage_transition_step);

  py::class_<AggregateMetrics>(m, "AggregateMetrics")
      .def_readonly("tx_error_mean", &AggregateMetrics::tx_error_mean)
      .def_readonly("target_error_mean", &AggregateMetrics::target_error_mean)
      .def_readonly("ospa_mean", &AggregateMetrics::ospa_mean);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("metrics", &RunRecord::metrics);

  py::class_<BatchResult>(m, "BatchResult")
      .def_readonly("runs", &BatchResult::runs)
      .def_readonly("agg", &BatchResult::agg)
      .def_readonly("mean_transition_step", &BatchResult::mean_transition_step);

  m.def("run_single", &run_single, py::arg("config"), py::arg("run_index") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_batch", &run_batch, py::arg("config"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("write_outputs", &write_outputs, py::arg("config"), py::arg("batch"));
}
