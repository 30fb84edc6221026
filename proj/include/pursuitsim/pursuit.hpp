#pragma once

#include <string>
#include <utility>

#include "pursuitsim/kinematics.hpp"
#include "pursuitsim/rl.hpp"

namespace pursuitsim {

enum class MissionKind { kIntercept, kSurveil, kIdle };

/// A pursuer's commanded objective. standoff only meaningful for Surveil.
struct Mission {
  MissionKind kind = MissionKind::kIntercept;
  double standoff = 0.0;  // m, > 0 for Surveil

  static Mission intercept() { return {MissionKind::kIntercept, 0.0}; }
  static Mission surveil(double standoff) { return {MissionKind::kSurveil, standoff}; }
  static Mission idle() { return {MissionKind::kIdle, 0.0}; }
};

/// Per-axis tracking errors in the pursuer's local ENU frame,
/// pursuer-minus-target. e_theta is logged but never optimized.
struct TrackingError {
  double ex = 0.0;       // m, east
  double ey = 0.0;       // m, north
  double e_theta = 0.0;  // rad, in (-pi, pi]
};

/// ex, ey are the east/north components of the displacement from
/// target_point to the pursuer, rotated into the pursuer's ENU frame;
/// e_theta = normalize(pursuer.heading - target_heading).
TrackingError measure_error(const VesselState& pursuer,
                            const GeodeticPosition& target_point,
                            double target_heading);

/// Resolves a mission into the point/heading the controller should track.
/// Intercept: the evader itself. Surveil{d}: the hold point d metres from
/// the evader along the great circle toward the pursuer (reverse evader
/// heading when the two coincide). Idle: the pursuer's own position/heading.
std::pair<GeodeticPosition, double> mission_target(const Mission& m,
                                                   const VesselState& evader,
                                                   const VesselState& pursuer);

/// True iff the great-circle separation is <= radius (inclusive).
bool check_capture(const VesselState& pursuer, const VesselState& evader,
                   double radius);

/// Everything controller_step produces for one tick, for logging and for
/// the kinematics update.
struct ControlRecord {
  TrackingError error;
  double u_x = 0.0;
  double u_y = 0.0;
  PolarAdjustment polar;
  PolarAdjustment prev_polar;  // the adjustment applied on the previous tick
  bool critic_converged = false;
  bool actor_converged = false;
};

/// Decentralized per-pursuer controller: two error windows and two learners
/// (east and north axes), mission state, and the previous adjustment needed
/// by the speed update.
///
/// Raw tracking errors at mission scale (hundreds of km) sit far outside
/// the learning rates' stable region, so the learners see each window
/// through a fixed sensor basis (offset, first difference, second
/// difference in actuator units, with a radial cap), and their outputs are
/// mapped to actuator units and saturated against the vessel's speed and
/// turn limits. All basis and output scales are fixed at window priming;
/// the closed-loop gains are invariant under the scaling.
class PursuerController {
 public:
  PursuerController(std::string vessel_id, Mission mission,
                    const CostParams& cost, LearnerConfig learner_cfg,
                    std::uint64_t scenario_seed, double capture_radius);

  /// One control tick: measures errors against the mission target, pushes
  /// them into the windows (priming on the first call after construction or
  /// set_mission), feeds each learner the observed transition, and returns
  /// the composed adjustment. Captured, Idle and frozen controllers emit
  /// zero adjustments and leave the learners untouched.
  ControlRecord step(const VesselState& evader, const VesselState& self, double dt);

  /// Switches the mission. Windows re-prime from the next measurement;
  /// learners keep their weights.
  void set_mission(Mission m);

  /// Malfunction: zero adjustments from now on, learners untouched.
  void freeze();

  void mark_captured() { captured_ = true; }

  const std::string& id() const { return id_; }
  const Mission& mission() const { return mission_; }
  bool captured() const { return captured_; }
  bool frozen() const { return frozen_; }
  const ErrorWindow& window_x() const { return window_x_; }
  const ErrorWindow& window_y() const { return window_y_; }
  const Learner& learner_x() const { return learner_x_; }
  const Learner& learner_y() const { return learner_y_; }
  double steer_error_scale() const { return scale_x_; }
  double speed_error_scale() const { return scale_y_; }
  double steer_scale() const { return scale_ux_; }
  double speed_scale() const { return scale_uy_; }

 private:
  ControlRecord zero_record(const VesselState& evader, const VesselState& self);

  std::string id_;
  Mission mission_;
  Learner learner_x_;
  Learner learner_y_;
  ErrorWindow window_x_;
  ErrorWindow window_y_;
  PolarAdjustment prev_polar_;
  double capture_radius_ = 1.0;
  bool captured_ = false;
  bool frozen_ = false;
  bool primed_ = false;
  double scale_x_ = 1.0;
  double scale_y_ = 1.0;
  double lead_ = 0.0;
  double vmax_ = 1.0;
  double rate_unit_ = 1.0;
  double accel_unit_ = 1.0;
  double scale_ux_ = 1.0;
  double scale_uy_ = 1.0;
  double prev_ux_scaled_ = 0.0;
  double prev_uy_scaled_ = 0.0;
};

}  // namespace pursuitsim
