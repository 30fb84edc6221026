#include "pursuitsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "pursuitsim/errors.hpp"
#include "rng_util.hpp"

namespace pursuitsim {

namespace {

constexpr double kDeg = M_PI / 180.0;
constexpr double kTimeEps = 1e-9;  // s, grid comparison slack

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ValidationError(field + ": " + why);
}

void check_geo(const std::string& prefix, double lon_deg, double lat_deg) {
  if (!(lon_deg > -180.0 && lon_deg <= 180.0))
    fail(prefix + ".lon_deg", "must be in (-180, 180]");
  if (!(lat_deg >= -90.0 && lat_deg <= 90.0))
    fail(prefix + ".lat_deg", "must be in [-90, 90]");
}

Mission make_mission(const std::string& name, double standoff_m,
                     const std::string& field_prefix) {
  if (name == "intercept") return Mission::intercept();
  if (name == "surveil") return Mission::surveil(standoff_m);
  if (name == "idle") return Mission::idle();
  fail(field_prefix, "unknown mission '" + name + "'");
}

std::string mission_text(const std::string& name, double standoff_m) {
  if (name == "surveil") {
    std::ostringstream os;
    os << "surveil(" << standoff_m << " m)";
    return os.str();
  }
  return name;
}

GeodeticPosition position_from_deg(double lon_deg, double lat_deg) {
  return {normalize_angle(lon_deg * kDeg), lat_deg * kDeg, kEarthRadius};
}

EvaderPolicy build_policy(const ScenarioConfig& cfg) {
  const EvaderSpec& e = cfg.evader;
  if (e.policy == "constant_course")
    return ConstantCourse{e.heading_deg * kDeg, e.speed_mps};
  if (e.policy == "waypoints") {
    WaypointRoute route;
    route.speed = e.speed_mps;
    for (const auto& wp : e.waypoints_deg)
      route.waypoints.push_back(position_from_deg(wp[0], wp[1]));
    return route;
  }
  RandomManeuver rm;
  rm.base_heading = e.heading_deg * kDeg;
  rm.speed = e.speed_mps;
  rm.turn_rate_bound = e.turn_rate_bound_deg_s * kDeg;
  rm.seed = e.maneuver_seed;
  return rm;
}

}  // namespace

void validate_config(const ScenarioConfig& cfg) {
  if (!(cfg.dt_s > 0.0)) fail("simulation.dt_s", "must be > 0");
  if (!(cfg.max_duration_s >= cfg.dt_s))
    fail("simulation.max_duration_s", "must be >= dt_s");
  if (!(cfg.capture_radius_m > 0.0))
    fail("simulation.capture_radius_m", "must be > 0");

  const LearningSpec& l = cfg.learning;
  if (!(l.delta > 0.0 && l.delta <= 1.0)) fail("learning.delta", "must be in (0, 1]");
  if (!(l.q_scale > 0.0)) fail("learning.q_scale", "must be > 0");
  if (!(l.r > 0.0)) fail("learning.r", "must be > 0");
  if (!(l.alpha_a > 0.0 && l.alpha_a < 1.0))
    fail("learning.alpha_a", "must be in (0, 1)");
  if (!(l.alpha_c > 0.0 && l.alpha_c < 1.0))
    fail("learning.alpha_c", "must be in (0, 1)");
  if (!(l.conv_threshold > 0.0)) fail("learning.conv_threshold", "must be > 0");
  if (l.window_l < 1) fail("learning.window_l", "must be >= 1");
  if (l.max_iters < 1) fail("learning.max_iters", "must be >= 1");
  if (!(l.init_scale > 0.0)) fail("learning.init_scale", "must be > 0");

  const EvaderSpec& e = cfg.evader;
  if (e.id.empty()) fail("evader.id", "must not be empty");
  check_geo("evader", e.lon_deg, e.lat_deg);
  if (!(e.speed_mps >= 0.0)) fail("evader.speed_mps", "must be >= 0");
  if (e.policy == "waypoints") {
    if (e.waypoints_deg.empty())
      fail("evader.waypoints", "must list at least one waypoint");
    for (std::size_t i = 0; i < e.waypoints_deg.size(); ++i)
      check_geo("evader.waypoints[" + std::to_string(i) + "]",
                e.waypoints_deg[i][0], e.waypoints_deg[i][1]);
  } else if (e.policy == "random_maneuver") {
    if (!(e.turn_rate_bound_deg_s >= 0.0))
      fail("evader.turn_rate_bound_deg_s", "must be >= 0");
  } else if (e.policy != "constant_course") {
    fail("evader.policy", "unknown policy '" + e.policy + "'");
  }

  if (cfg.pursuers.empty()) fail("pursuers", "at least one pursuer is required");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < cfg.pursuers.size(); ++i) {
    const PursuerSpec& p = cfg.pursuers[i];
    const std::string prefix = "pursuers[" + std::to_string(i) + "]";
    if (p.id.empty()) fail(prefix + ".id", "must not be empty");
    if (p.id == e.id) fail(prefix + ".id", "collides with the evader id");
    if (!ids.insert(p.id).second) fail(prefix + ".id", "duplicate vessel id");
    check_geo(prefix, p.lon_deg, p.lat_deg);
    if (!(p.max_speed_mps > 0.0)) fail(prefix + ".max_speed_mps", "must be > 0");
    if (!(p.speed_mps >= 0.0 && p.speed_mps <= p.max_speed_mps))
      fail(prefix + ".speed_mps", "must be in [0, max_speed_mps]");
    if (p.mission == "surveil") {
      if (!(p.standoff_m > 0.0)) fail(prefix + ".standoff_m", "must be > 0 for surveil");
    } else if (p.mission == "intercept" || p.mission == "idle") {
      if (p.standoff_m != 0.0)
        fail(prefix + ".standoff_m", "only valid for surveil missions");
    } else {
      fail(prefix + ".mission", "unknown mission '" + p.mission + "'");
    }
  }

  for (std::size_t i = 0; i < cfg.events.size(); ++i) {
    const EventSpec& ev = cfg.events[i];
    const std::string prefix = "events[" + std::to_string(i) + "]";
    if (!(ev.time_s >= 0.0 && ev.time_s <= cfg.max_duration_s))
      fail(prefix + ".time_s", "must be in [0, max_duration_s]");
    if (!ids.count(ev.vessel))
      fail(prefix + ".vessel", "unknown vessel '" + ev.vessel + "'");
    if (ev.kind == "malfunction") {
      if (!ev.mission.empty())
        fail(prefix + ".mission", "not valid for malfunction events");
      if (ev.standoff_m != 0.0)
        fail(prefix + ".standoff_m", "not valid for malfunction events");
    } else if (ev.kind == "set_mission") {
      if (ev.mission == "surveil") {
        if (!(ev.standoff_m > 0.0))
          fail(prefix + ".standoff_m", "must be > 0 for surveil");
      } else if (ev.mission == "intercept" || ev.mission == "idle") {
        if (ev.standoff_m != 0.0)
          fail(prefix + ".standoff_m", "only valid for surveil missions");
      } else {
        fail(prefix + ".mission", "unknown mission '" + ev.mission + "'");
      }
    } else {
      fail(prefix + ".kind", "unknown event kind '" + ev.kind + "'");
    }
  }
}

RunRecord run(const ScenarioConfig& cfg) {
  validate_config(cfg);

  VesselState evader_state;
  evader_state.id = cfg.evader.id;
  evader_state.pos = position_from_deg(cfg.evader.lon_deg, cfg.evader.lat_deg);
  evader_state.speed = cfg.evader.speed_mps;
  evader_state.heading = normalize_angle(cfg.evader.heading_deg * kDeg);
  evader_state.max_speed = std::max(cfg.evader.speed_mps, 1.0);
  Evader evader(evader_state, build_policy(cfg));

  CostParams cost;
  cost.Q = cfg.learning.q_scale * Eigen::Matrix3d::Identity();
  cost.R = cfg.learning.r;
  LearnerConfig lcfg;
  lcfg.alpha_a = cfg.learning.alpha_a;
  lcfg.alpha_c = cfg.learning.alpha_c;
  lcfg.Delta = cfg.learning.conv_threshold;
  lcfg.L = cfg.learning.window_l;
  lcfg.N_t = cfg.learning.max_iters;
  lcfg.init_scale = cfg.learning.init_scale;

  std::vector<VesselState> pursuers;
  std::vector<PursuerController> controllers;
  for (const PursuerSpec& p : cfg.pursuers) {
    VesselState s;
    s.id = p.id;
    s.pos = position_from_deg(p.lon_deg, p.lat_deg);
    s.speed = p.speed_mps;
    s.heading = normalize_angle(p.heading_deg * kDeg);
    s.max_speed = p.max_speed_mps;
    pursuers.push_back(s);
    controllers.emplace_back(
        p.id, make_mission(p.mission, p.standoff_m, "pursuers.mission"), cost,
        lcfg, cfg.seed, cfg.capture_radius_m);
  }

  // Stable sort keeps list order for events scheduled at the same time.
  std::vector<std::size_t> event_order(cfg.events.size());
  std::iota(event_order.begin(), event_order.end(), 0u);
  std::stable_sort(event_order.begin(), event_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return cfg.events[a].time_s < cfg.events[b].time_s;
                   });
  std::size_t next_event = 0;

  RunRecord rec;
  rec.config = cfg;
  rec.metrics.pursuers.resize(pursuers.size());
  for (std::size_t i = 0; i < pursuers.size(); ++i) {
    rec.metrics.pursuers[i].vessel_id = pursuers[i].id;
    rec.metrics.pursuers[i].min_distance_m =
        std::numeric_limits<double>::infinity();
  }

  auto controller_for = [&](const std::string& id) -> PursuerController& {
    for (std::size_t i = 0; i < pursuers.size(); ++i)
      if (pursuers[i].id == id) return controllers[i];
    throw ValidationError("events.vessel: unknown vessel '" + id + "'");
  };

  const double r2d = 180.0 / M_PI;
  long k = 0;
  while (true) {
    const double t = static_cast<double>(k) * cfg.dt_s;
    if (t > cfg.max_duration_s + kTimeEps) break;

    while (next_event < event_order.size() &&
           cfg.events[event_order[next_event]].time_s <= t + kTimeEps) {
      const EventSpec& ev = cfg.events[event_order[next_event]];
      PursuerController& ctrl = controller_for(ev.vessel);
      if (ev.kind == "malfunction") {
        ctrl.freeze();
        ctrl.set_mission(Mission::idle());
        for (std::size_t i = 0; i < pursuers.size(); ++i)
          if (pursuers[i].id == ev.vessel) pursuers[i].speed = 0.0;
        rec.metrics.timeline.push_back({t, "malfunction: " + ev.vessel});
      } else {
        ctrl.set_mission(
            make_mission(ev.mission, ev.standoff_m, "events.mission"));
        rec.metrics.timeline.push_back(
            {t, "set_mission: " + ev.vessel + " -> " +
                    mission_text(ev.mission, ev.standoff_m)});
      }
      ++next_event;
    }

    for (std::size_t i = 0; i < pursuers.size(); ++i) {
      PursuerController& ctrl = controllers[i];
      if (ctrl.mission().kind == MissionKind::kIntercept && !ctrl.captured() &&
          check_capture(pursuers[i], evader.state(), cfg.capture_radius_m)) {
        ctrl.mark_captured();
        rec.metrics.pursuers[i].capture_time_s = t;
        rec.metrics.capture_order.push_back(pursuers[i].id);
        rec.metrics.timeline.push_back(
            {t, "captured: " + pursuers[i].id});
      }
    }

    std::vector<ControlRecord> controls(pursuers.size());
    for (std::size_t i = 0; i < pursuers.size(); ++i)
      controls[i] = controllers[i].step(evader.state(), pursuers[i], cfg.dt_s);

    TickSnapshot snap;
    snap.time_s = t;
    const VesselState& ev_now = evader.state();
    VesselSnapshot ev_row;
    ev_row.vessel_id = ev_now.id;
    ev_row.lon_deg = ev_now.pos.lon * r2d;
    ev_row.lat_deg = ev_now.pos.lat * r2d;
    ev_row.speed_mps = ev_now.speed;
    ev_row.heading_deg = ev_now.heading * r2d;
    snap.vessels.push_back(ev_row);

    for (std::size_t i = 0; i < pursuers.size(); ++i) {
      const VesselState& s = pursuers[i];
      const ControlRecord& c = controls[i];
      VesselSnapshot row;
      row.vessel_id = s.id;
      row.lon_deg = s.pos.lon * r2d;
      row.lat_deg = s.pos.lat * r2d;
      row.speed_mps = s.speed;
      row.heading_deg = s.heading * r2d;
      row.ex_m = c.error.ex;
      row.ey_m = c.error.ey;
      row.e_theta_rad = c.error.e_theta;
      row.u_x = c.u_x;
      row.u_y = c.u_y;
      row.u_v = c.polar.u_v;
      row.u_theta = c.polar.u_theta;
      row.captured = controllers[i].captured();
      row.critic_converged = c.critic_converged;
      row.actor_converged = c.actor_converged;
      snap.vessels.push_back(row);

      rec.metrics.pursuers[i].min_distance_m =
          std::min(rec.metrics.pursuers[i].min_distance_m,
                   great_circle_distance(s.pos, ev_now.pos));
    }
    rec.ticks.push_back(std::move(snap));

    bool any_intercept = false;
    bool all_intercept_captured = true;
    for (const PursuerController& ctrl : controllers) {
      if (ctrl.mission().kind != MissionKind::kIntercept) continue;
      any_intercept = true;
      if (!ctrl.captured()) all_intercept_captured = false;
    }
    if (any_intercept && all_intercept_captured &&
        next_event == event_order.size())
      break;

    try {
      evader.step(cfg.dt_s);
      for (std::size_t i = 0; i < pursuers.size(); ++i)
        pursuers[i] = step_vessel(pursuers[i], controls[i].polar,
                                  controls[i].prev_polar, cfg.learning.delta,
                                  cfg.dt_s);
    } catch (const SimulationError& err) {
      throw SimulationError("tick " + std::to_string(k) + ": " + err.what());
    }
    ++k;
  }

  for (std::size_t i = next_event; i < event_order.size(); ++i) {
    const EventSpec& ev = cfg.events[event_order[i]];
    std::ostringstream os;
    os << ev.kind << " " << ev.vessel << " at t=" << ev.time_s << " s";
    rec.metrics.unapplied_events.push_back(os.str());
  }

  return rec;
}

RunMetrics derive_metrics(const RunRecord& rec) {
  RunMetrics m;
  m.timeline = rec.metrics.timeline;
  m.unapplied_events = rec.metrics.unapplied_events;
  if (rec.ticks.empty()) return m;

  const std::size_t n_pursuers = rec.ticks.front().vessels.size() - 1;
  m.pursuers.resize(n_pursuers);
  for (std::size_t i = 0; i < n_pursuers; ++i) {
    m.pursuers[i].vessel_id = rec.ticks.front().vessels[i + 1].vessel_id;
    m.pursuers[i].min_distance_m = std::numeric_limits<double>::infinity();
  }

  std::vector<std::pair<double, std::size_t>> captures;
  for (const TickSnapshot& tick : rec.ticks) {
    const VesselSnapshot& ev = tick.vessels.front();
    const GeodeticPosition ev_pos = position_from_deg(ev.lon_deg, ev.lat_deg);
    for (std::size_t i = 0; i < n_pursuers; ++i) {
      const VesselSnapshot& row = tick.vessels[i + 1];
      const GeodeticPosition pos = position_from_deg(row.lon_deg, row.lat_deg);
      m.pursuers[i].min_distance_m = std::min(
          m.pursuers[i].min_distance_m, great_circle_distance(pos, ev_pos));
      if (row.captured && !m.pursuers[i].capture_time_s) {
        m.pursuers[i].capture_time_s = tick.time_s;
        captures.emplace_back(tick.time_s, i);
      }
    }
  }
  std::stable_sort(captures.begin(), captures.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [time, idx] : captures)
    m.capture_order.push_back(m.pursuers[idx].vessel_id);
  return m;
}

}  // namespace pursuitsim
