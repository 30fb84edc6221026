#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pursuitsim/pursuit.hpp"

namespace pursuitsim {

// Scenario configuration mirrors the scenario file: distances in meters,
// times in seconds, angles in degrees. Conversion to the engine's internal
// radian types happens once at the start of run(), so echoing a config and
// re-parsing it reproduces the exact same values.

struct EvaderSpec {
  std::string id = "evader";
  double lon_deg = 0.0;
  double lat_deg = 0.0;
  double speed_mps = 0.0;
  double heading_deg = 0.0;
  std::string policy = "constant_course";  // constant_course | waypoints | random_maneuver
  std::vector<std::array<double, 2>> waypoints_deg;  // (lon_deg, lat_deg)
  double turn_rate_bound_deg_s = 0.0;                // random_maneuver only
  std::uint64_t maneuver_seed = 0;                   // random_maneuver only

  bool operator==(const EvaderSpec&) const = default;
};

struct PursuerSpec {
  std::string id;
  double lon_deg = 0.0;
  double lat_deg = 0.0;
  double speed_mps = 0.0;
  double heading_deg = 0.0;
  double max_speed_mps = 15.0;
  std::string mission = "intercept";  // intercept | surveil | idle
  double standoff_m = 0.0;            // surveil only, > 0

  bool operator==(const PursuerSpec&) const = default;
};

struct EventSpec {
  double time_s = 0.0;
  std::string kind;    // malfunction | set_mission
  std::string vessel;  // pursuer id
  std::string mission;     // set_mission only
  double standoff_m = 0.0;  // set_mission -> surveil only

  bool operator==(const EventSpec&) const = default;
};

struct LearningSpec {
  double delta = 0.99;          // discount in the speed update
  double q_scale = 1e-4;        // Q = q_scale * I3
  double r = 0.01;              // control weight
  double alpha_a = 0.01;
  double alpha_c = 1e-6;
  double conv_threshold = 1e-8;
  int window_l = 20;
  long max_iters = 6000;
  double init_scale = 0.1;

  bool operator==(const LearningSpec&) const = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  double dt_s = 10.0;
  double max_duration_s = 21600.0;
  double capture_radius_m = 500.0;
  LearningSpec learning;
  EvaderSpec evader;
  std::vector<PursuerSpec> pursuers;
  std::vector<EventSpec> events;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Checks every semantic constraint; throws ValidationError naming the
/// offending section/field.
void validate_config(const ScenarioConfig& cfg);

/// One vessel's row in a tick snapshot. The evader carries zero errors,
/// controls and flags.
struct VesselSnapshot {
  std::string vessel_id;
  double lon_deg = 0.0;
  double lat_deg = 0.0;
  double speed_mps = 0.0;
  double heading_deg = 0.0;
  double ex_m = 0.0;
  double ey_m = 0.0;
  double e_theta_rad = 0.0;
  double u_x = 0.0;
  double u_y = 0.0;
  double u_v = 0.0;
  double u_theta = 0.0;
  bool captured = false;
  bool critic_converged = false;
  bool actor_converged = false;
};

/// World state at time_s = k * dt, evader first, pursuers in config order.
/// Controls are the adjustments applied over [time_s, time_s + dt).
struct TickSnapshot {
  double time_s = 0.0;
  std::vector<VesselSnapshot> vessels;
};

struct PursuerMetrics {
  std::string vessel_id;
  std::optional<double> capture_time_s;
  double min_distance_m = 0.0;
};

struct TimelineEntry {
  double time_s = 0.0;
  std::string text;
};

struct RunMetrics {
  std::vector<PursuerMetrics> pursuers;
  std::vector<std::string> capture_order;  // vessel ids by capture time
  std::vector<TimelineEntry> timeline;     // applied events and captures
  std::vector<std::string> unapplied_events;
};

struct RunRecord {
  ScenarioConfig config;
  std::vector<TickSnapshot> ticks;
  RunMetrics metrics;
};

/// Runs a scenario to completion. Fixed-step synchronous loop; each tick
/// applies due events, checks captures at current positions, computes every
/// controller's adjustment against the evader's published position, records
/// a snapshot, then advances all vessels. Terminates when every Intercept
/// pursuer is captured (with no scheduled event still pending) or when
/// max_duration elapses. Identical configs produce bit-identical records.
RunRecord run(const ScenarioConfig& cfg);

/// Recomputes the snapshot-derivable metrics (capture times, minimum
/// distances, capture order) from a record's rows; timeline and unapplied
/// events are copied through from the record.
RunMetrics derive_metrics(const RunRecord& rec);

}  // namespace pursuitsim
