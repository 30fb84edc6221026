#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "pursuitsim/geo.hpp"

namespace pursuitsim {

/// Instantaneous state of one vessel.
/// heading is measured counterclockwise from east, in (-pi, pi].
/// speed is surge speed along the heading [m/s], in [0, max_speed].
struct VesselState {
  std::string id;
  GeodeticPosition pos;
  double speed = 0.0;
  double heading = 0.0;
  double max_speed = 15.0;
};

/// Planar control adjustment in the local frame [m/s]: u_x east, u_y north.
struct ControlAdjustment {
  double u_x = 0.0;
  double u_y = 0.0;
};

/// Control adjustment split into surge and steering channels.
/// u_v >= 0 [m/s]; u_theta in [-pi/2, pi/2] [rad].
struct PolarAdjustment {
  double u_v = 0.0;
  double u_theta = 0.0;
};

/// Splits a planar adjustment into magnitude and steering angle:
///   u_v     = sqrt(u_x^2 + u_y^2)
///   u_theta = atan(u_x / u_y), with u_y == 0 mapping to sign(u_x) * pi/2
/// and the zero adjustment mapping to (0, 0).
PolarAdjustment decompose_control(const ControlAdjustment& c);

/// Advances a vessel by one tick of duration dt [s]:
///   v'     = clamp(v + delta * (now.u_v - prev.u_v), 0, max_speed)
///   theta' = normalize(theta + now.u_theta)
/// then moves the vessel v' * dt metres along theta' on a great circle.
/// delta is the discount applied to the surge increment.
/// Throws SimulationError if the move crosses a pole.
VesselState step_vessel(const VesselState& s, const PolarAdjustment& now,
                        const PolarAdjustment& prev, double delta, double dt);

/// Moves a position `distance` metres along the great circle that leaves p
/// with the given heading (east-ccw). Throws SimulationError if the end
/// point lands on or beyond a pole (|lat| >= pi/2 - 1e-9).
GeodeticPosition great_circle_step(const GeodeticPosition& p, double heading,
                                   double distance);

/// Evader holds heading and speed exactly.
struct ConstantCourse {
  double heading = 0.0;  // rad, east-ccw
  double speed = 0.0;    // m/s
};

/// Evader runs a fixed waypoint list at constant speed, snapping to each
/// waypoint as it is reached and stopping at the last one.
struct WaypointRoute {
  std::vector<GeodeticPosition> waypoints;
  double speed = 0.0;  // m/s
};

/// Evader holds speed, starts from base_heading, and perturbs its heading
/// each tick by a uniform draw in [-turn_rate_bound * dt, +turn_rate_bound * dt].
struct RandomManeuver {
  double base_heading = 0.0;     // rad, east-ccw
  double speed = 0.0;            // m/s
  double turn_rate_bound = 0.0;  // rad/s
  std::uint64_t seed = 0;
};

using EvaderPolicy = std::variant<ConstantCourse, WaypointRoute, RandomManeuver>;

/// Steps an evader under its policy. Owns the policy cursor (waypoint index)
/// and the maneuver RNG, so a fresh Evader with the same inputs replays the
/// same trajectory.
class Evader {
 public:
  Evader(VesselState initial, EvaderPolicy policy);

  const VesselState& state() const { return state_; }

  /// Advances one tick of duration dt [s].
  void step(double dt);

 private:
  VesselState state_;
  EvaderPolicy policy_;
  std::size_t next_waypoint_ = 0;
  bool route_done_ = false;
  std::mt19937_64 rng_;
};

}  // namespace pursuitsim
