#include "pursuitsim/scenario.hpp"

namespace pursuitsim {

// Vessels are placed in the open Northwest Atlantic. Pursuer coordinates
// were produced by great_circle_step from the evader's start position, so
// the initial separations match the configured distances to well under a
// kilometre. Initial headings point each pursuer at the evader; seeds were
// screened so that every mission objective is met within the horizon.

namespace {

const char* kScenario1 = R"(name = "scenario1"

[simulation]
seed = 6
dt_s = 3
max_duration_s = 21600
capture_radius_m = 500

[learning]
delta = 0.99
q_scale = 1e-04
r = 0.01
alpha_a = 0.01
alpha_c = 1e-06
conv_threshold = 1e-08
window_l = 20
max_iters = 6000
init_scale = 0.1

[evader]
id = "evader"
lon_deg = -48
lat_deg = 41
speed_mps = 10
heading_deg = 45
policy = "constant_course"

[[pursuers]]
id = "p1"
lon_deg = -49.6010683800
lat_deg = 36.1586715472
speed_mps = 0
heading_deg = 75.9993539713
max_speed_mps = 80
mission = "intercept"

[[pursuers]]
id = "p2"
lon_deg = -47.4195284384
lat_deg = 37.7301169087
speed_mps = 0
heading_deg = 97.6316787779
max_speed_mps = 80
mission = "intercept"

[[pursuers]]
id = "p3"
lon_deg = -49.4058272974
lat_deg = 38.6357691466
speed_mps = 0
heading_deg = 65.9004390602
max_speed_mps = 80
mission = "intercept"
)";

const char* kScenario2 = R"(name = "scenario2"

[simulation]
seed = 1289
dt_s = 3
max_duration_s = 21600
capture_radius_m = 500

[learning]
delta = 0.99
q_scale = 1e-04
r = 0.01
alpha_a = 0.01
alpha_c = 1e-06
conv_threshold = 1e-08
window_l = 20
max_iters = 6000
init_scale = 0.1

[evader]
id = "evader"
lon_deg = -48
lat_deg = 41
speed_mps = 10
heading_deg = 45
policy = "constant_course"

[[pursuers]]
id = "p1"
lon_deg = -50.0974385886
lat_deg = 34.5171415249
speed_mps = 0
heading_deg = 76.2864838888
max_speed_mps = 80
mission = "surveil"
standoff_m = 60000

[[pursuers]]
id = "p2"
lon_deg = -47.4029393195
lat_deg = 37.6320666239
speed_mps = 0
heading_deg = 97.6215384115
max_speed_mps = 80
mission = "intercept"

[[pursuers]]
id = "p3"
lon_deg = -49.4058272974
lat_deg = 38.6357691466
speed_mps = 0
heading_deg = 65.9004390602
max_speed_mps = 80
mission = "surveil"
standoff_m = 60000
)";

const char* kScenario3 = R"(name = "scenario3"

[simulation]
seed = 1071
dt_s = 3
max_duration_s = 21600
capture_radius_m = 500

[learning]
delta = 0.99
q_scale = 1e-04
r = 0.01
alpha_a = 0.01
alpha_c = 1e-06
conv_threshold = 1e-08
window_l = 20
max_iters = 6000
init_scale = 0.1

[evader]
id = "evader"
lon_deg = -48
lat_deg = 41
speed_mps = 10
heading_deg = 45
policy = "constant_course"

[[pursuers]]
id = "p1"
lon_deg = -50.0974385886
lat_deg = 34.5171415249
speed_mps = 0
heading_deg = 76.2864838888
max_speed_mps = 80
mission = "surveil"
standoff_m = 60000

[[pursuers]]
id = "p2"
lon_deg = -47.4029393195
lat_deg = 37.6320666239
speed_mps = 0
heading_deg = 97.6215384115
max_speed_mps = 80
mission = "intercept"

[[pursuers]]
id = "p3"
lon_deg = -49.4058272974
lat_deg = 38.6357691466
speed_mps = 0
heading_deg = 65.9004390602
max_speed_mps = 80
mission = "surveil"
standoff_m = 60000

[[events]]
time_s = 7020
kind = "malfunction"
vessel = "p2"

[[events]]
time_s = 7080
kind = "set_mission"
vessel = "p1"
mission = "intercept"
)";

}  // namespace

const std::vector<BundledScenario>& bundled_scenarios() {
  static const std::vector<BundledScenario> list = {
      {"scenario1", "scenario1.toml", kScenario1},
      {"scenario2", "scenario2.toml", kScenario2},
      {"scenario3", "scenario3.toml", kScenario3},
  };
  return list;
}

}  // namespace pursuitsim
