#include "pursuitsim/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "pursuitsim/errors.hpp"
#include "rng_util.hpp"

namespace pursuitsim {

namespace {
// Steps whose arc comes this close to a pole (about 6 m) are rejected;
// anything tighter is below the resolution of asin near +/-1.
constexpr double kPoleMargin = 1e-6;  // rad
}  // namespace

PolarAdjustment decompose_control(const ControlAdjustment& c) {
  PolarAdjustment p;
  p.u_v = std::hypot(c.u_x, c.u_y);
  if (c.u_y != 0.0) {
    p.u_theta = std::atan(c.u_x / c.u_y);
  } else if (c.u_x != 0.0) {
    p.u_theta = std::copysign(M_PI_2, c.u_x);
  } else {
    p.u_theta = 0.0;
  }
  return p;
}

GeodeticPosition great_circle_step(const GeodeticPosition& p, double heading,
                                   double distance) {
  if (distance < 0.0) throw SimulationError("great_circle_step: negative distance");
  if (distance >= M_PI * p.radius)
    throw SimulationError("great_circle_step: step of half circumference or more");
  if (distance == 0.0) return p;

  const double sigma = distance / p.radius;
  // Destination formulas take the bearing clockwise from north.
  const double bearing = M_PI_2 - heading;
  const double sp = std::sin(p.lat), cp = std::cos(p.lat);
  const double ss = std::sin(sigma), cs = std::cos(sigma);

  const double sin_lat2 = sp * cs + cp * ss * std::cos(bearing);
  const double lat2 = std::asin(std::clamp(sin_lat2, -1.0, 1.0));

  // sin(lat) along the arc is A*cos(s - s0): reject the step when its
  // latitude extreme (an endpoint or an interior vertex) reaches a pole.
  const double a_north = cp * std::cos(bearing);
  double peak = std::max(std::abs(p.lat), std::abs(lat2));
  const double s0 = std::atan2(a_north, sp);
  if ((s0 >= 0.0 && s0 <= sigma) || s0 + M_PI <= sigma) {
    const double amp = std::min(std::hypot(sp, a_north), 1.0);
    peak = std::max(peak, std::asin(amp));
  }
  if (peak >= M_PI_2 - kPoleMargin)
    throw SimulationError("great_circle_step: trajectory reaches a pole");

  const double lon2 = p.lon + std::atan2(std::sin(bearing) * ss * cp,
                                         cs - sp * sin_lat2);
  return {normalize_angle(lon2), lat2, p.radius};
}

VesselState step_vessel(const VesselState& s, const PolarAdjustment& now,
                        const PolarAdjustment& prev, double delta, double dt) {
  VesselState out = s;
  out.speed = std::clamp(s.speed + delta * (now.u_v - prev.u_v), 0.0, s.max_speed);
  out.heading = normalize_angle(s.heading + now.u_theta);
  out.pos = great_circle_step(s.pos, out.heading, out.speed * dt);
  return out;
}

Evader::Evader(VesselState initial, EvaderPolicy policy)
    : state_(std::move(initial)), policy_(std::move(policy)) {
  if (const auto* cc = std::get_if<ConstantCourse>(&policy_)) {
    state_.heading = normalize_angle(cc->heading);
    state_.speed = cc->speed;
  } else if (const auto* wr = std::get_if<WaypointRoute>(&policy_)) {
    state_.speed = wr->speed;
  } else if (const auto* rm = std::get_if<RandomManeuver>(&policy_)) {
    state_.heading = normalize_angle(rm->base_heading);
    state_.speed = rm->speed;
    rng_.seed(rm->seed);
  }
}

void Evader::step(double dt) {
  if (const auto* cc = std::get_if<ConstantCourse>(&policy_)) {
    state_.pos = great_circle_step(state_.pos, state_.heading, cc->speed * dt);
    return;
  }

  if (const auto* wr = std::get_if<WaypointRoute>(&policy_)) {
    if (route_done_ || wr->waypoints.empty()) {
      state_.speed = 0.0;
      return;
    }
    const GeodeticPosition& wp = wr->waypoints[next_waypoint_];
    const double gap = great_circle_distance(state_.pos, wp);
    const double step_len = wr->speed * dt;
    if (gap <= step_len) {
      state_.pos = wp;
      if (next_waypoint_ + 1 < wr->waypoints.size()) {
        ++next_waypoint_;
      } else {
        route_done_ = true;
        state_.speed = 0.0;
      }
      return;
    }
    state_.heading = initial_bearing(state_.pos, wp);
    state_.pos = great_circle_step(state_.pos, state_.heading, step_len);
    return;
  }

  const auto& rm = std::get<RandomManeuver>(policy_);
  const double bound = rm.turn_rate_bound * dt;
  state_.heading =
      normalize_angle(state_.heading + detail::uniform(rng_, -bound, bound));
  state_.pos = great_circle_step(state_.pos, state_.heading, rm.speed * dt);
}

}  // namespace pursuitsim
