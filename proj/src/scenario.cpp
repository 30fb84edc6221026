#include "pursuitsim/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pursuitsim/errors.hpp"
#include "toml_lite.hpp"

namespace pursuitsim {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ValidationError(field + ": " + why);
}

// --- typed field readers -------------------------------------------------

const toml::Value* find(const toml::Table& t, const std::string& key) {
  auto it = t.entries.find(key);
  return it == t.entries.end() ? nullptr : &it->second;
}

double need_number(const toml::Table& t, const std::string& key,
                   const std::string& field) {
  const toml::Value* v = find(t, key);
  if (!v) bad_field(field, "missing required field");
  if (v->kind != toml::Value::Kind::kInt && v->kind != toml::Value::Kind::kFloat)
    bad_field(field, "must be a number");
  return v->as_number();
}

double opt_number(const toml::Table& t, const std::string& key,
                  const std::string& field, double fallback) {
  return find(t, key) ? need_number(t, key, field) : fallback;
}

long long need_int(const toml::Table& t, const std::string& key,
                   const std::string& field) {
  const toml::Value* v = find(t, key);
  if (!v) bad_field(field, "missing required field");
  if (v->kind != toml::Value::Kind::kInt) bad_field(field, "must be an integer");
  return v->i;
}

long long opt_int(const toml::Table& t, const std::string& key,
                  const std::string& field, long long fallback) {
  return find(t, key) ? need_int(t, key, field) : fallback;
}

std::string need_string(const toml::Table& t, const std::string& key,
                        const std::string& field) {
  const toml::Value* v = find(t, key);
  if (!v) bad_field(field, "missing required field");
  if (v->kind != toml::Value::Kind::kString) bad_field(field, "must be a string");
  return v->s;
}

std::string opt_string(const toml::Table& t, const std::string& key,
                       const std::string& field, const std::string& fallback) {
  return find(t, key) ? need_string(t, key, field) : fallback;
}

void reject_unknown(const toml::Table& t, const std::string& section,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : t.entries) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok)
      throw ParseError("line " + std::to_string(value.line) + ": unknown key '" +
                       key + "' in section [" + section + "]");
  }
}

// --- section mappers ------------------------------------------------------

void read_simulation(const toml::Table& t, ScenarioConfig& cfg) {
  reject_unknown(t, "simulation",
                 {"seed", "dt_s", "max_duration_s", "capture_radius_m"});
  const long long seed = opt_int(t, "seed", "simulation.seed", 0);
  if (seed < 0) bad_field("simulation.seed", "must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.dt_s = opt_number(t, "dt_s", "simulation.dt_s", cfg.dt_s);
  cfg.max_duration_s =
      opt_number(t, "max_duration_s", "simulation.max_duration_s", cfg.max_duration_s);
  cfg.capture_radius_m = opt_number(t, "capture_radius_m",
                                    "simulation.capture_radius_m", cfg.capture_radius_m);
}

void read_learning(const toml::Table& t, LearningSpec& l) {
  reject_unknown(t, "learning",
                 {"delta", "q_scale", "r", "alpha_a", "alpha_c", "conv_threshold",
                  "window_l", "max_iters", "init_scale"});
  l.delta = opt_number(t, "delta", "learning.delta", l.delta);
  l.q_scale = opt_number(t, "q_scale", "learning.q_scale", l.q_scale);
  l.r = opt_number(t, "r", "learning.r", l.r);
  l.alpha_a = opt_number(t, "alpha_a", "learning.alpha_a", l.alpha_a);
  l.alpha_c = opt_number(t, "alpha_c", "learning.alpha_c", l.alpha_c);
  l.conv_threshold =
      opt_number(t, "conv_threshold", "learning.conv_threshold", l.conv_threshold);
  l.window_l = static_cast<int>(opt_int(t, "window_l", "learning.window_l", l.window_l));
  l.max_iters = opt_int(t, "max_iters", "learning.max_iters", l.max_iters);
  l.init_scale = opt_number(t, "init_scale", "learning.init_scale", l.init_scale);
}

void read_evader(const toml::Table& t, ScenarioConfig& cfg, bool& saw_maneuver_seed) {
  reject_unknown(t, "evader",
                 {"id", "lon_deg", "lat_deg", "speed_mps", "heading_deg", "policy",
                  "waypoints", "turn_rate_bound_deg_s", "maneuver_seed"});
  EvaderSpec& e = cfg.evader;
  e.id = opt_string(t, "id", "evader.id", e.id);
  e.lon_deg = need_number(t, "lon_deg", "evader.lon_deg");
  e.lat_deg = need_number(t, "lat_deg", "evader.lat_deg");
  e.speed_mps = need_number(t, "speed_mps", "evader.speed_mps");
  e.heading_deg = opt_number(t, "heading_deg", "evader.heading_deg", 0.0);
  e.policy = opt_string(t, "policy", "evader.policy", e.policy);

  if (const toml::Value* wp = find(t, "waypoints")) {
    if (e.policy != "waypoints")
      bad_field("evader.waypoints", "only valid with policy = \"waypoints\"");
    if (wp->kind != toml::Value::Kind::kArray)
      bad_field("evader.waypoints", "must be an array of [lon_deg, lat_deg] pairs");
    for (const toml::Value& item : wp->items) {
      if (item.kind != toml::Value::Kind::kArray || item.items.size() != 2 ||
          item.items[0].kind == toml::Value::Kind::kArray ||
          item.items[1].kind == toml::Value::Kind::kArray)
        bad_field("evader.waypoints", "each waypoint is [lon_deg, lat_deg]");
      e.waypoints_deg.push_back(
          {item.items[0].as_number(), item.items[1].as_number()});
    }
  } else if (e.policy == "waypoints") {
    bad_field("evader.waypoints", "missing required field");
  }

  if (find(t, "turn_rate_bound_deg_s") && e.policy != "random_maneuver")
    bad_field("evader.turn_rate_bound_deg_s",
              "only valid with policy = \"random_maneuver\"");
  if (find(t, "maneuver_seed") && e.policy != "random_maneuver")
    bad_field("evader.maneuver_seed", "only valid with policy = \"random_maneuver\"");
  if (e.policy == "random_maneuver") {
    e.turn_rate_bound_deg_s = need_number(t, "turn_rate_bound_deg_s",
                                          "evader.turn_rate_bound_deg_s");
    if (find(t, "maneuver_seed")) {
      const long long ms = need_int(t, "maneuver_seed", "evader.maneuver_seed");
      if (ms < 0) bad_field("evader.maneuver_seed", "must be >= 0");
      e.maneuver_seed = static_cast<std::uint64_t>(ms);
      saw_maneuver_seed = true;
    }
  }
}

PursuerSpec read_pursuer(const toml::Table& t, std::size_t index) {
  const std::string prefix = "pursuers[" + std::to_string(index) + "]";
  reject_unknown(t, "pursuers",
                 {"id", "lon_deg", "lat_deg", "speed_mps", "heading_deg",
                  "max_speed_mps", "mission", "standoff_m"});
  PursuerSpec p;
  p.id = need_string(t, "id", prefix + ".id");
  p.lon_deg = need_number(t, "lon_deg", prefix + ".lon_deg");
  p.lat_deg = need_number(t, "lat_deg", prefix + ".lat_deg");
  p.speed_mps = opt_number(t, "speed_mps", prefix + ".speed_mps", 0.0);
  p.heading_deg = opt_number(t, "heading_deg", prefix + ".heading_deg", 0.0);
  p.max_speed_mps = opt_number(t, "max_speed_mps", prefix + ".max_speed_mps", 15.0);
  p.mission = opt_string(t, "mission", prefix + ".mission", "intercept");
  p.standoff_m = opt_number(t, "standoff_m", prefix + ".standoff_m", 0.0);
  return p;
}

EventSpec read_event(const toml::Table& t, std::size_t index) {
  const std::string prefix = "events[" + std::to_string(index) + "]";
  reject_unknown(t, "events", {"time_s", "kind", "vessel", "mission", "standoff_m"});
  EventSpec ev;
  ev.time_s = need_number(t, "time_s", prefix + ".time_s");
  ev.kind = need_string(t, "kind", prefix + ".kind");
  ev.vessel = need_string(t, "vessel", prefix + ".vessel");
  ev.mission = opt_string(t, "mission", prefix + ".mission", "");
  ev.standoff_m = opt_number(t, "standoff_m", prefix + ".standoff_m", 0.0);
  return ev;
}

// --- serialization --------------------------------------------------------

// Shortest representation that parses back to the same double.
std::string fmt(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  const toml::Document doc = toml::parse(text);
  ScenarioConfig cfg;

  bool saw_evader = false;
  bool saw_maneuver_seed = false;
  std::size_t pursuer_idx = 0, event_idx = 0;
  for (const toml::Table& t : doc.tables) {
    if (t.name.empty()) {
      reject_unknown(t, "<root>", {"name"});
      cfg.name = opt_string(t, "name", "name", cfg.name);
    } else if (t.name == "simulation") {
      read_simulation(t, cfg);
    } else if (t.name == "learning") {
      read_learning(t, cfg.learning);
    } else if (t.name == "evader") {
      read_evader(t, cfg, saw_maneuver_seed);
      saw_evader = true;
    } else if (t.name == "pursuers") {
      cfg.pursuers.push_back(read_pursuer(t, pursuer_idx++));
    } else if (t.name == "events") {
      cfg.events.push_back(read_event(t, event_idx++));
    } else {
      throw ParseError("line " + std::to_string(t.line) + ": unknown section [" +
                       t.name + "]");
    }
  }
  if (!saw_evader) bad_field("evader", "missing required section");
  if (cfg.evader.policy == "random_maneuver" && !saw_maneuver_seed)
    cfg.evader.maneuver_seed = cfg.seed;

  validate_config(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  ScenarioConfig cfg = parse_scenario(buf.str());
  if (cfg.name == "scenario") cfg.name = path.stem().string();
  return cfg;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "name = " << quote(cfg.name) << "\n\n";

  os << "[simulation]\n";
  os << "seed = " << cfg.seed << "\n";
  os << "dt_s = " << fmt(cfg.dt_s) << "\n";
  os << "max_duration_s = " << fmt(cfg.max_duration_s) << "\n";
  os << "capture_radius_m = " << fmt(cfg.capture_radius_m) << "\n\n";

  const LearningSpec& l = cfg.learning;
  os << "[learning]\n";
  os << "delta = " << fmt(l.delta) << "\n";
  os << "q_scale = " << fmt(l.q_scale) << "\n";
  os << "r = " << fmt(l.r) << "\n";
  os << "alpha_a = " << fmt(l.alpha_a) << "\n";
  os << "alpha_c = " << fmt(l.alpha_c) << "\n";
  os << "conv_threshold = " << fmt(l.conv_threshold) << "\n";
  os << "window_l = " << l.window_l << "\n";
  os << "max_iters = " << l.max_iters << "\n";
  os << "init_scale = " << fmt(l.init_scale) << "\n\n";

  const EvaderSpec& e = cfg.evader;
  os << "[evader]\n";
  os << "id = " << quote(e.id) << "\n";
  os << "lon_deg = " << fmt(e.lon_deg) << "\n";
  os << "lat_deg = " << fmt(e.lat_deg) << "\n";
  os << "speed_mps = " << fmt(e.speed_mps) << "\n";
  os << "heading_deg = " << fmt(e.heading_deg) << "\n";
  os << "policy = " << quote(e.policy) << "\n";
  if (e.policy == "waypoints") {
    os << "waypoints = [";
    for (std::size_t i = 0; i < e.waypoints_deg.size(); ++i) {
      if (i) os << ", ";
      os << "[" << fmt(e.waypoints_deg[i][0]) << ", " << fmt(e.waypoints_deg[i][1])
         << "]";
    }
    os << "]\n";
  }
  if (e.policy == "random_maneuver") {
    os << "turn_rate_bound_deg_s = " << fmt(e.turn_rate_bound_deg_s) << "\n";
    os << "maneuver_seed = " << e.maneuver_seed << "\n";
  }

  for (const PursuerSpec& p : cfg.pursuers) {
    os << "\n[[pursuers]]\n";
    os << "id = " << quote(p.id) << "\n";
    os << "lon_deg = " << fmt(p.lon_deg) << "\n";
    os << "lat_deg = " << fmt(p.lat_deg) << "\n";
    os << "speed_mps = " << fmt(p.speed_mps) << "\n";
    os << "heading_deg = " << fmt(p.heading_deg) << "\n";
    os << "max_speed_mps = " << fmt(p.max_speed_mps) << "\n";
    os << "mission = " << quote(p.mission) << "\n";
    if (p.mission == "surveil") os << "standoff_m = " << fmt(p.standoff_m) << "\n";
  }

  for (const EventSpec& ev : cfg.events) {
    os << "\n[[events]]\n";
    os << "time_s = " << fmt(ev.time_s) << "\n";
    os << "kind = " << quote(ev.kind) << "\n";
    os << "vessel = " << quote(ev.vessel) << "\n";
    if (!ev.mission.empty()) os << "mission = " << quote(ev.mission) << "\n";
    if (ev.mission == "surveil") os << "standoff_m = " << fmt(ev.standoff_m) << "\n";
  }

  return os.str();
}

ScenarioConfig bundled_scenario_config(const std::string& key) {
  for (const BundledScenario& b : bundled_scenarios()) {
    if (key == b.name || key == b.filename) {
      ScenarioConfig cfg = parse_scenario(b.text);
      return cfg;
    }
  }
  // Also accept "1" / "2" / "3".
  if (key.size() == 1 && key[0] >= '1' && key[0] <= '3') {
    const auto& list = bundled_scenarios();
    return parse_scenario(list[key[0] - '1'].text);
  }
  throw ValidationError("unknown bundled scenario '" + key + "'");
}

}  // namespace pursuitsim
