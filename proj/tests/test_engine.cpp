#include <doctest.h>

#include <cmath>
#include <string>

#include "pursuitsim/engine.hpp"
#include "pursuitsim/errors.hpp"

using namespace pursuitsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

GeodeticPosition pos(double lon_deg, double lat_deg) {
  return {lon_deg * kPi / 180.0, lat_deg * kPi / 180.0, kEarthRadius};
}

PursuerSpec pursuer(const std::string& id, double lon_deg, double lat_deg,
                    const std::string& mission = "intercept",
                    double standoff_m = 0.0) {
  PursuerSpec p;
  p.id = id;
  p.lon_deg = lon_deg;
  p.lat_deg = lat_deg;
  p.mission = mission;
  p.standoff_m = standoff_m;
  return p;
}

// evader going northeast, one distant pursuer; cheap to run to completion
ScenarioConfig base_config() {
  ScenarioConfig cfg;
  cfg.name = "fixture";
  cfg.seed = 1;
  cfg.dt_s = 10.0;
  cfg.max_duration_s = 300.0;
  cfg.evader.lon_deg = 0.0;
  cfg.evader.lat_deg = 0.0;
  cfg.evader.speed_mps = 5.0;
  cfg.evader.heading_deg = 45.0;
  cfg.pursuers.push_back(pursuer("pa", 0.2, 0.0));
  return cfg;
}

void expect_invalid(const ScenarioConfig& cfg, const std::string& field) {
  try {
    validate_config(cfg);
    FAIL_CHECK("expected ValidationError naming " << field);
  } catch (const ValidationError& err) {
    CHECK(std::string(err.what()).find(field) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("validate_config names the offending field") {
  ScenarioConfig cfg = base_config();

  SUBCASE("no pursuers") {
    cfg.pursuers.clear();
    expect_invalid(cfg, "pursuers");
  }
  SUBCASE("non-positive dt") {
    cfg.dt_s = 0.0;
    expect_invalid(cfg, "simulation.dt_s");
  }
  SUBCASE("duration shorter than one tick") {
    cfg.max_duration_s = 5.0;
    expect_invalid(cfg, "simulation.max_duration_s");
  }
  SUBCASE("duplicate vessel ids") {
    cfg.pursuers.push_back(pursuer("pa", 0.3, 0.0));
    expect_invalid(cfg, "pursuers[1].id");
  }
  SUBCASE("pursuer colliding with the evader id") {
    cfg.pursuers.push_back(pursuer("evader", 0.3, 0.0));
    expect_invalid(cfg, "pursuers[1].id");
  }
  SUBCASE("latitude out of range") {
    cfg.pursuers[0].lat_deg = 91.0;
    expect_invalid(cfg, "pursuers[0].lat_deg");
  }
  SUBCASE("speed above the vessel limit") {
    cfg.pursuers[0].speed_mps = 20.0;
    cfg.pursuers[0].max_speed_mps = 15.0;
    expect_invalid(cfg, "pursuers[0].speed_mps");
  }
  SUBCASE("surveil requires a positive standoff") {
    cfg.pursuers[0].mission = "surveil";
    expect_invalid(cfg, "pursuers[0].standoff_m");
  }
  SUBCASE("standoff on an intercept mission") {
    cfg.pursuers[0].standoff_m = 1000.0;
    expect_invalid(cfg, "pursuers[0].standoff_m");
  }
  SUBCASE("unknown mission") {
    cfg.pursuers[0].mission = "patrol";
    expect_invalid(cfg, "pursuers[0].mission");
  }
  SUBCASE("unknown evader policy") {
    cfg.evader.policy = "zigzag";
    expect_invalid(cfg, "evader.policy");
  }
  SUBCASE("waypoints policy needs waypoints") {
    cfg.evader.policy = "waypoints";
    expect_invalid(cfg, "evader.waypoints");
  }
  SUBCASE("event beyond the horizon") {
    cfg.events.push_back({400.0, "malfunction", "pa", "", 0.0});
    expect_invalid(cfg, "events[0].time_s");
  }
  SUBCASE("event naming an unknown vessel") {
    cfg.events.push_back({100.0, "malfunction", "nobody", "", 0.0});
    expect_invalid(cfg, "events[0].vessel");
  }
  SUBCASE("unknown event kind") {
    cfg.events.push_back({100.0, "refuel", "pa", "", 0.0});
    expect_invalid(cfg, "events[0].kind");
  }
  SUBCASE("malfunction with a mission payload") {
    cfg.events.push_back({100.0, "malfunction", "pa", "idle", 0.0});
    expect_invalid(cfg, "events[0].mission");
  }
  SUBCASE("learning rate out of range") {
    cfg.learning.alpha_c = 1.0;
    expect_invalid(cfg, "learning.alpha_c");
  }
  SUBCASE("valid config passes") { validate_config(cfg); }
}

TEST_CASE("pursuer starting inside the capture radius captures at tick 0") {
  ScenarioConfig cfg = base_config();
  cfg.pursuers[0] = pursuer("pa", 0.003, 0.0);  // ~334 m out
  const RunRecord rec = run(cfg);
  REQUIRE(rec.metrics.pursuers.size() == 1);
  REQUIRE(rec.metrics.pursuers[0].capture_time_s.has_value());
  CHECK(*rec.metrics.pursuers[0].capture_time_s == 0.0);
  CHECK(rec.metrics.capture_order == std::vector<std::string>{"pa"});
  CHECK(rec.ticks.size() == 1);
  CHECK(rec.ticks[0].vessels[1].captured);
}

TEST_CASE("runs are bit-identical for identical configs") {
  ScenarioConfig cfg = base_config();
  cfg.max_duration_s = 2000.0;
  cfg.pursuers.push_back(pursuer("pb", -0.1, 0.05, "surveil", 5000.0));
  const RunRecord a = run(cfg);
  const RunRecord b = run(cfg);

  CHECK(a.config == b.config);
  REQUIRE(a.ticks.size() == b.ticks.size());
  for (std::size_t k = 0; k < a.ticks.size(); ++k) {
    CHECK(a.ticks[k].time_s == b.ticks[k].time_s);
    REQUIRE(a.ticks[k].vessels.size() == b.ticks[k].vessels.size());
    for (std::size_t v = 0; v < a.ticks[k].vessels.size(); ++v) {
      const VesselSnapshot& x = a.ticks[k].vessels[v];
      const VesselSnapshot& y = b.ticks[k].vessels[v];
      CHECK(x.vessel_id == y.vessel_id);
      CHECK(x.lon_deg == y.lon_deg);
      CHECK(x.lat_deg == y.lat_deg);
      CHECK(x.speed_mps == y.speed_mps);
      CHECK(x.heading_deg == y.heading_deg);
      CHECK(x.ex_m == y.ex_m);
      CHECK(x.ey_m == y.ey_m);
      CHECK(x.e_theta_rad == y.e_theta_rad);
      CHECK(x.u_x == y.u_x);
      CHECK(x.u_y == y.u_y);
      CHECK(x.u_v == y.u_v);
      CHECK(x.u_theta == y.u_theta);
      CHECK(x.captured == y.captured);
      CHECK(x.critic_converged == y.critic_converged);
      CHECK(x.actor_converged == y.actor_converged);
    }
  }

  // a different seed diverges once the controllers engage
  ScenarioConfig other = cfg;
  other.seed = 2;
  const RunRecord c = run(other);
  bool any_diff = false;
  for (std::size_t k = 1; k < std::min(a.ticks.size(), c.ticks.size()) && !any_diff;
       ++k)
    any_diff = a.ticks[k].vessels[1].lon_deg != c.ticks[k].vessels[1].lon_deg ||
               a.ticks[k].vessels[1].lat_deg != c.ticks[k].vessels[1].lat_deg;
  CHECK(any_diff);
}

TEST_CASE("snapshot times are exactly k*dt and ids are conserved") {
  ScenarioConfig cfg = base_config();
  cfg.dt_s = 7.0;
  cfg.max_duration_s = 700.0;
  const RunRecord rec = run(cfg);
  REQUIRE(!rec.ticks.empty());
  for (std::size_t k = 0; k < rec.ticks.size(); ++k) {
    CHECK(rec.ticks[k].time_s == static_cast<double>(k) * 7.0);
    REQUIRE(rec.ticks[k].vessels.size() == 2);
    CHECK(rec.ticks[k].vessels[0].vessel_id == "evader");
    CHECK(rec.ticks[k].vessels[1].vessel_id == "pa");
  }
}

TEST_CASE("surveil-only runs go the full horizon without captures") {
  ScenarioConfig cfg = base_config();
  cfg.pursuers[0] = pursuer("pa", 0.2, 0.0, "surveil", 10000.0);
  const RunRecord rec = run(cfg);
  CHECK(rec.ticks.size() == 31);  // t = 0..300 inclusive
  CHECK(!rec.metrics.pursuers[0].capture_time_s.has_value());
  CHECK(rec.metrics.capture_order.empty());
  CHECK(rec.metrics.pursuers[0].min_distance_m > 0.0);
  CHECK(std::isfinite(rec.metrics.pursuers[0].min_distance_m));
}

TEST_CASE("surveil pursuers inside the radius are not captured") {
  ScenarioConfig cfg = base_config();
  cfg.pursuers[0] = pursuer("pa", 0.001, 0.0, "surveil", 2000.0);  // ~111 m out
  const RunRecord rec = run(cfg);
  CHECK(!rec.metrics.pursuers[0].capture_time_s.has_value());
  for (const TickSnapshot& tick : rec.ticks) CHECK(!tick.vessels[1].captured);
}

TEST_CASE("malfunction freezes the vessel permanently") {
  ScenarioConfig cfg = base_config();
  cfg.max_duration_s = 1200.0;
  cfg.pursuers[0] = pursuer("pa", 0.1, 0.0);
  cfg.pursuers[0].max_speed_mps = 0.01;  // effectively a buoy, never captures
  cfg.events.push_back({100.0, "malfunction", "pa", "", 0.0});
  const RunRecord rec = run(cfg);

  CHECK(rec.ticks.size() == 121);  // runs the full horizon
  REQUIRE(rec.metrics.timeline.size() == 1);
  CHECK(rec.metrics.timeline[0].time_s == 100.0);
  CHECK(rec.metrics.timeline[0].text == "malfunction: pa");
  CHECK(rec.metrics.unapplied_events.empty());

  const VesselSnapshot* at_event = nullptr;
  for (const TickSnapshot& tick : rec.ticks) {
    if (tick.time_s < 100.0) continue;
    const VesselSnapshot& row = tick.vessels[1];
    if (!at_event) at_event = &row;
    CHECK(row.lon_deg == at_event->lon_deg);
    CHECK(row.lat_deg == at_event->lat_deg);
    CHECK(row.speed_mps == 0.0);
    CHECK(row.u_x == 0.0);
    CHECK(row.u_y == 0.0);
  }
}

TEST_CASE("set_mission to intercept re-aims the errors at the evader") {
  ScenarioConfig cfg = base_config();
  cfg.max_duration_s = 1000.0;
  cfg.pursuers[0] = pursuer("pa", 0.18, 0.0, "surveil", 5000.0);
  cfg.pursuers[0].max_speed_mps = 0.01;
  cfg.events.push_back({500.0, "set_mission", "pa", "intercept", 0.0});
  const RunRecord rec = run(cfg);

  REQUIRE(rec.metrics.timeline.size() == 1);
  CHECK(rec.metrics.timeline[0].text == "set_mission: pa -> intercept");

  for (const TickSnapshot& tick : rec.ticks) {
    const VesselSnapshot& ev = tick.vessels[0];
    const VesselSnapshot& row = tick.vessels[1];
    const double range = great_circle_distance(pos(row.lon_deg, row.lat_deg),
                                               pos(ev.lon_deg, ev.lat_deg));
    const double err = std::hypot(row.ex_m, row.ey_m);
    if (tick.time_s < 500.0) {
      CHECK(err == doctest::Approx(std::abs(range - 5000.0)).epsilon(0.01));
    } else {
      CHECK(err == doctest::Approx(range).epsilon(0.01));
    }
  }
}

TEST_CASE("simultaneous events apply in list order") {
  ScenarioConfig cfg = base_config();
  cfg.max_duration_s = 200.0;
  cfg.pursuers[0] = pursuer("pa", 0.2, 0.0, "surveil", 1000.0);
  cfg.events.push_back({50.0, "set_mission", "pa", "intercept", 0.0});
  cfg.events.push_back({50.0, "set_mission", "pa", "surveil", 2000.0});
  cfg.events.push_back({50.0, "set_mission", "pa", "idle", 0.0});
  const RunRecord rec = run(cfg);

  REQUIRE(rec.metrics.timeline.size() == 3);
  CHECK(rec.metrics.timeline[0].text == "set_mission: pa -> intercept");
  CHECK(rec.metrics.timeline[1].text == "set_mission: pa -> surveil(2000 m)");
  CHECK(rec.metrics.timeline[2].text == "set_mission: pa -> idle");
  for (const TimelineEntry& e : rec.metrics.timeline) CHECK(e.time_s == 50.0);

  // the idle mission won: zero controls from the event onward
  for (const TickSnapshot& tick : rec.ticks) {
    if (tick.time_s < 50.0) continue;
    CHECK(tick.vessels[1].u_x == 0.0);
    CHECK(tick.vessels[1].u_y == 0.0);
  }
}

TEST_CASE("events the time grid never reaches are reported unapplied") {
  ScenarioConfig cfg = base_config();
  cfg.dt_s = 7.0;
  cfg.max_duration_s = 20.0;  // grid: 0, 7, 14
  cfg.events.push_back({18.0, "malfunction", "pa", "", 0.0});
  const RunRecord rec = run(cfg);
  CHECK(rec.ticks.size() == 3);
  CHECK(rec.metrics.timeline.empty());
  REQUIRE(rec.metrics.unapplied_events.size() == 1);
  CHECK(rec.metrics.unapplied_events[0].find("malfunction") != std::string::npos);
  CHECK(rec.metrics.unapplied_events[0].find("18") != std::string::npos);
}

TEST_CASE("an evader maneuver can reverse the capture order") {
  ScenarioConfig cfg;
  cfg.name = "reversal";
  cfg.seed = 1;
  cfg.dt_s = 10.0;
  cfg.max_duration_s = 12000.0;
  cfg.evader.lon_deg = 0.0;
  cfg.evader.lat_deg = 0.0;
  cfg.evader.speed_mps = 10.0;
  cfg.evader.policy = "waypoints";
  // east past pb, then double back west past pa
  cfg.evader.waypoints_deg = {{0.35, 0.0}, {-0.1, 0.0}};
  cfg.pursuers.push_back(pursuer("pa", -0.01, 0.003));
  cfg.pursuers.push_back(pursuer("pb", 0.3, 0.0));
  for (PursuerSpec& p : cfg.pursuers) p.max_speed_mps = 0.01;

  const double d_pa = great_circle_distance(pos(0.0, 0.0), pos(-0.01, 0.003));
  const double d_pb = great_circle_distance(pos(0.0, 0.0), pos(0.3, 0.0));
  REQUIRE(d_pa < d_pb);  // pa starts closest

  const RunRecord rec = run(cfg);
  REQUIRE(rec.metrics.pursuers[0].capture_time_s.has_value());
  REQUIRE(rec.metrics.pursuers[1].capture_time_s.has_value());
  CHECK(rec.metrics.capture_order == std::vector<std::string>{"pb", "pa"});
  CHECK(*rec.metrics.pursuers[1].capture_time_s <
        *rec.metrics.pursuers[0].capture_time_s);
}

TEST_CASE("derive_metrics agrees with the engine's own metrics") {
  ScenarioConfig cfg = base_config();
  cfg.max_duration_s = 2000.0;
  cfg.pursuers[0] = pursuer("pa", 0.02, 0.0);
  cfg.pursuers.push_back(pursuer("pb", -0.05, 0.01, "surveil", 3000.0));
  const RunRecord rec = run(cfg);
  const RunMetrics re = derive_metrics(rec);

  REQUIRE(re.pursuers.size() == rec.metrics.pursuers.size());
  for (std::size_t i = 0; i < re.pursuers.size(); ++i) {
    CHECK(re.pursuers[i].vessel_id == rec.metrics.pursuers[i].vessel_id);
    CHECK(re.pursuers[i].capture_time_s == rec.metrics.pursuers[i].capture_time_s);
    CHECK(re.pursuers[i].min_distance_m ==
          doctest::Approx(rec.metrics.pursuers[i].min_distance_m).epsilon(1e-9));
  }
  CHECK(re.capture_order == rec.metrics.capture_order);
  CHECK(re.timeline.size() == rec.metrics.timeline.size());
}

TEST_CASE("derive_metrics orders captures by first flagged tick") {
  RunRecord rec;
  const double dt = 10.0;
  for (int k = 0; k <= 25; ++k) {
    TickSnapshot tick;
    tick.time_s = k * dt;
    VesselSnapshot ev;
    ev.vessel_id = "evader";
    tick.vessels.push_back(ev);
    const struct {
      const char* id;
      double lon;
      int captured_from;
    } rows[] = {{"p1", 0.1, 10}, {"p2", 0.2, 5}, {"p3", 0.3, 20}};
    for (const auto& r : rows) {
      VesselSnapshot row;
      row.vessel_id = r.id;
      row.lon_deg = r.lon;
      row.captured = k >= r.captured_from;
      tick.vessels.push_back(row);
    }
    rec.ticks.push_back(tick);
  }

  const RunMetrics m = derive_metrics(rec);
  REQUIRE(m.pursuers.size() == 3);
  CHECK(*m.pursuers[0].capture_time_s == 100.0);
  CHECK(*m.pursuers[1].capture_time_s == 50.0);
  CHECK(*m.pursuers[2].capture_time_s == 200.0);
  CHECK(m.capture_order == std::vector<std::string>{"p2", "p1", "p3"});
  CHECK(m.pursuers[0].min_distance_m ==
        doctest::Approx(great_circle_distance(pos(0.0, 0.0), pos(0.1, 0.0))));

  SUBCASE("no flags means no capture times") {
    RunRecord quiet = rec;
    for (TickSnapshot& tick : quiet.ticks)
      for (VesselSnapshot& row : tick.vessels) row.captured = false;
    const RunMetrics qm = derive_metrics(quiet);
    for (const PursuerMetrics& p : qm.pursuers) {
      CHECK(!p.capture_time_s.has_value());
      CHECK(std::isfinite(p.min_distance_m));
    }
    CHECK(qm.capture_order.empty());
  }
}

TEST_CASE("pole-bound trajectories fail with the tick index") {
  ScenarioConfig cfg = base_config();
  cfg.max_duration_s = 5000.0;
  cfg.evader.lat_deg = 89.5;
  cfg.evader.heading_deg = 90.0;  // due north
  cfg.evader.speed_mps = 200.0;
  cfg.pursuers[0] = pursuer("pa", 0.0, 89.0);
  try {
    run(cfg);
    FAIL_CHECK("expected SimulationError");
  } catch (const SimulationError& err) {
    const std::string what = err.what();
    CHECK(what.find("tick") != std::string::npos);
    CHECK(what.find("pole") != std::string::npos);
  }
}
