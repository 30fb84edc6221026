#include "pursuitsim/pursuit.hpp"

#include <cmath>

#include "pursuitsim/errors.hpp"
#include "rng_util.hpp"

namespace pursuitsim {

namespace {

// The learners see each window through a fixed invertible basis: offset,
// first difference, second difference, each divided by its actuator unit
// (full-speed step per tick, full-rudder deflection per tick^2). Raw window
// taps differ by well under a percent at any sane tick length, so a learner
// regressing on them cannot separate position from velocity and its
// steering comes out proportional-only, which orbits the target instead of
// closing on it.
//
// The offset taps use different scales per channel. The north (speed)
// channel is scaled to the capture radius: outside a few capture radii the
// radial cap saturates it, giving a constant full-authority approach, and
// the unsaturated zone near the target is what stops the approach speed
// from decaying below the evader's escape speed before contact. The east
// (steer) channel is scaled to the primed offset so steering starts inside
// its proportional band whatever the initial geometry; a saturated steering
// command is a blind constant-rate turn that circles without closing.
// Its offset tap is lead-compensated (offset plus lead * rate): spring and
// damping then share one learned gain, so the loop damping ratio is set by
// the lead horizon rather than by the luck of the gain draw, and any
// tracking-stable gain also kills transverse drift instead of orbiting.
constexpr double kBasisNormCap = 13.0;
constexpr double kSteerScaleMargin = 1.08;
constexpr double kTypicalGain = 0.05;

// Actuator authority granted to the O(1) learner outputs. The speed channel
// deliberately over-drives the speed clamp (most draws command a saturated
// full-speed cruise); the steering channel is kept small enough that
// typical gains stay below the turn clamp at full basis deflection.
constexpr double kSpeedAuthority = 4.0;
constexpr double kSteerAuthority = 2.0;

// Per-tick heading change is limited to atan(|u_x| / |u_y|) with u_x
// clamped to tan(kMaxTurnPerTick) * |u_y|. Without the clamp a weak u_y
// draw lets atan(u_x/u_y) swing the heading by up to a quarter turn per
// tick and the vessel pirouettes instead of steering.
constexpr double kMaxTurnPerTick = 0.05;  // rad

// Below this separation the evader->pursuer bearing is numerically
// meaningless and the standoff point falls back to the reverse heading.
constexpr double kBearingDegeneracy = 1e-6;  // m

LearnerConfig axis_config(const LearnerConfig& base, std::uint64_t scenario_seed,
                          const std::string& vessel_id, char axis) {
  LearnerConfig cfg = base;
  cfg.rng_seed = detail::fnv1a(scenario_seed, vessel_id + '/' + axis);
  return cfg;
}

}  // namespace

TrackingError measure_error(const VesselState& pursuer,
                            const GeodeticPosition& target_point,
                            double target_heading) {
  const Eigen::Vector3d d =
      geodetic_to_ecef(pursuer.pos).vec() - geodetic_to_ecef(target_point).vec();
  const EnuVector local = ecef_to_enu(EcefVector::from(d), pursuer.pos);
  return {local.e, local.n, normalize_angle(pursuer.heading - target_heading)};
}

std::pair<GeodeticPosition, double> mission_target(const Mission& m,
                                                   const VesselState& evader,
                                                   const VesselState& pursuer) {
  switch (m.kind) {
    case MissionKind::kIntercept:
      return {evader.pos, evader.heading};
    case MissionKind::kSurveil: {
      double bearing;
      if (great_circle_distance(evader.pos, pursuer.pos) < kBearingDegeneracy) {
        bearing = normalize_angle(evader.heading + M_PI);
      } else {
        bearing = initial_bearing(evader.pos, pursuer.pos);
      }
      return {great_circle_step(evader.pos, bearing, m.standoff), evader.heading};
    }
    case MissionKind::kIdle:
      return {pursuer.pos, pursuer.heading};
  }
  throw SimulationError("mission_target: unknown mission kind");
}

bool check_capture(const VesselState& pursuer, const VesselState& evader,
                   double radius) {
  return great_circle_distance(pursuer.pos, evader.pos) <= radius;
}

PursuerController::PursuerController(std::string vessel_id, Mission mission,
                                     const CostParams& cost,
                                     LearnerConfig learner_cfg,
                                     std::uint64_t scenario_seed,
                                     double capture_radius)
    : id_(std::move(vessel_id)),
      mission_(mission),
      learner_x_(3, cost.Q, cost.R, axis_config(learner_cfg, scenario_seed, id_, 'x')),
      learner_y_(3, cost.Q, cost.R, axis_config(learner_cfg, scenario_seed, id_, 'y')),
      capture_radius_(std::max(1.0, capture_radius)) {}

void PursuerController::set_mission(Mission m) {
  mission_ = m;
  primed_ = false;
}

void PursuerController::freeze() { frozen_ = true; }

ControlRecord PursuerController::zero_record(const VesselState& evader,
                                             const VesselState& self) {
  const auto [point, heading] = mission_target(mission_, evader, self);
  ControlRecord rec;
  rec.error = measure_error(self, point, heading);
  rec.prev_polar = prev_polar_;
  rec.critic_converged =
      learner_x_.critic_converged() && learner_y_.critic_converged();
  rec.actor_converged =
      learner_x_.actor_converged() && learner_y_.actor_converged();
  prev_polar_ = rec.polar;  // zero
  return rec;
}

ControlRecord PursuerController::step(const VesselState& evader,
                                      const VesselState& self, double dt) {
  if (captured_ || frozen_ || mission_.kind == MissionKind::kIdle)
    return zero_record(evader, self);

  const auto [point, heading] = mission_target(mission_, evader, self);
  const TrackingError te = measure_error(self, point, heading);

  ErrorWindow prev_x, prev_y;
  if (!primed_) {
    window_x_ = ErrorWindow::primed(te.ex);
    window_y_ = ErrorWindow::primed(te.ey);
    prev_x = window_x_;
    prev_y = window_y_;
    vmax_ = std::max(1.0, self.max_speed);
    scale_y_ = std::max(1.0, 0.5 * capture_radius_);
    scale_x_ = std::max(2.0 * scale_y_,
                        kSteerScaleMargin * std::abs(te.ex) / kBasisNormCap);
    rate_unit_ = vmax_ * dt;
    accel_unit_ = vmax_ * kMaxTurnPerTick * dt * dt;
    scale_uy_ = kSpeedAuthority * vmax_;
    scale_ux_ = kSteerAuthority;
    lead_ = 1.6 / std::sqrt(kTypicalGain * dt * scale_ux_ / scale_x_);
    prev_ux_scaled_ = 0.0;
    prev_uy_scaled_ = 0.0;
    primed_ = true;
  } else {
    prev_x = window_x_;
    prev_y = window_y_;
    window_x_.push(te.ex);
    window_y_.push(te.ey);
  }

  const auto capped = [](Eigen::Vector3d e) {
    const double n = e.norm();
    if (n > kBasisNormCap) e *= kBasisNormCap / n;
    return e;
  };
  const auto basis_x = [&](const ErrorWindow& w) {
    const double rate = w.e0 - w.e1;
    return capped({(w.e0 + lead_ * rate) / scale_x_, rate / rate_unit_,
                   (w.e0 - 2.0 * w.e1 + w.e2) / accel_unit_});
  };
  const auto basis_y = [&](const ErrorWindow& w) {
    return capped({w.e0 / scale_y_, (w.e0 - w.e1) / rate_unit_,
                   (w.e0 - 2.0 * w.e1 + w.e2) / accel_unit_});
  };
  const double ux_scaled =
      learner_x_.step({basis_x(prev_x), prev_ux_scaled_, basis_x(window_x_)});
  const double uy_scaled =
      learner_y_.step({basis_y(prev_y), prev_uy_scaled_, basis_y(window_y_)});

  double u_y = uy_scaled * scale_uy_;
  const double lim_y = vmax_ * std::cos(kMaxTurnPerTick);
  if (std::abs(u_y) > lim_y) u_y = std::copysign(lim_y, u_y);
  double u_x = ux_scaled * scale_ux_;
  const double lim_x = std::abs(u_y) * std::tan(kMaxTurnPerTick);
  if (std::abs(u_x) > lim_x) u_x = std::copysign(lim_x, u_x);
  prev_ux_scaled_ = u_x / scale_ux_;
  prev_uy_scaled_ = u_y / scale_uy_;

  ControlRecord rec;
  rec.error = te;
  rec.u_x = u_x;
  rec.u_y = u_y;
  rec.polar = decompose_control({rec.u_x, rec.u_y});
  rec.prev_polar = prev_polar_;
  rec.critic_converged =
      learner_x_.critic_converged() && learner_y_.critic_converged();
  rec.actor_converged =
      learner_x_.actor_converged() && learner_y_.actor_converged();
  prev_polar_ = rec.polar;
  return rec;
}

}  // namespace pursuitsim
