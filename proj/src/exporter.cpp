#include "pursuitsim/exporter.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pursuitsim/errors.hpp"
#include "pursuitsim/scenario.hpp"

namespace pursuitsim {

namespace {

// Fixed decimal, 12 digits after the point.
std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", x);
  return buf;
}

std::string minutes(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", seconds / 60.0);
  return buf;
}

const PursuerSpec* pursuer_spec(const RunRecord& rec, const std::string& id) {
  for (const PursuerSpec& p : rec.config.pursuers)
    if (p.id == id) return &p;
  return nullptr;
}

const PursuerMetrics* pursuer_metrics(const RunRecord& rec, const std::string& id) {
  for (const PursuerMetrics& m : rec.metrics.pursuers)
    if (m.vessel_id == id) return &m;
  return nullptr;
}

std::string vessel_description(const RunRecord& rec, const std::string& id) {
  std::ostringstream os;
  if (const PursuerSpec* p = pursuer_spec(rec, id)) {
    os << "pursuer, mission " << p->mission;
    if (p->mission == "surveil") os << " (standoff " << p->standoff_m << " m)";
    const PursuerMetrics* m = pursuer_metrics(rec, id);
    if (m && m->capture_time_s)
      os << "; captured the evader at t=" << *m->capture_time_s << " s";
  } else {
    os << "evader, policy " << rec.config.evader.policy;
  }
  return os.str();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimulationError("cannot write " + path.string());
  out << content;
  if (!out) throw SimulationError("write failed for " + path.string());
}

}  // namespace

ExportFormat parse_format_name(const std::string& name) {
  if (name == "csv") return ExportFormat::kCsv;
  if (name == "kml") return ExportFormat::kKml;
  if (name == "geojson") return ExportFormat::kGeojson;
  throw ValidationError("unknown export format '" + name +
                        "' (expected csv, kml or geojson)");
}

std::string step_log_csv(const RunRecord& rec) {
  std::string out =
      "time_s,vessel_id,lon_deg,lat_deg,speed_mps,heading_deg,ex_m,ey_m,"
      "e_theta_rad,u_x,u_y,u_v,u_theta,captured,critic_converged,actor_converged\n";
  for (const TickSnapshot& tick : rec.ticks) {
    for (const VesselSnapshot& v : tick.vessels) {
      out += num(tick.time_s);
      out += ',';
      out += v.vessel_id;
      out += ',';
      out += num(v.lon_deg);
      out += ',';
      out += num(v.lat_deg);
      out += ',';
      out += num(v.speed_mps);
      out += ',';
      out += num(v.heading_deg);
      out += ',';
      out += num(v.ex_m);
      out += ',';
      out += num(v.ey_m);
      out += ',';
      out += num(v.e_theta_rad);
      out += ',';
      out += num(v.u_x);
      out += ',';
      out += num(v.u_y);
      out += ',';
      out += num(v.u_v);
      out += ',';
      out += num(v.u_theta);
      out += ',';
      out += v.captured ? '1' : '0';
      out += ',';
      out += v.critic_converged ? '1' : '0';
      out += ',';
      out += v.actor_converged ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

std::string tracks_kml(const RunRecord& rec) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<kml xmlns=\"http://www.opengis.net/kml/2.2\">\n";
  os << "  <Document>\n";
  os << "    <name>" << xml_escape(rec.config.name) << "</name>\n";

  const std::size_t n_vessels = rec.ticks.empty() ? 0 : rec.ticks.front().vessels.size();
  const std::size_t count = rec.ticks.empty()
                                ? rec.config.pursuers.size() + 1
                                : n_vessels;
  for (std::size_t i = 0; i < count; ++i) {
    std::string id;
    if (!rec.ticks.empty()) {
      id = rec.ticks.front().vessels[i].vessel_id;
    } else {
      id = i == 0 ? rec.config.evader.id : rec.config.pursuers[i - 1].id;
    }
    os << "    <Placemark>\n";
    os << "      <name>" << xml_escape(id) << "</name>\n";
    os << "      <description>" << xml_escape(vessel_description(rec, id))
       << "</description>\n";
    os << "      <LineString>\n";
    os << "        <tessellate>1</tessellate>\n";
    os << "        <coordinates>\n";
    for (const TickSnapshot& tick : rec.ticks) {
      const VesselSnapshot& v = tick.vessels[i];
      os << "          " << num(v.lon_deg) << "," << num(v.lat_deg) << ",0\n";
    }
    os << "        </coordinates>\n";
    os << "      </LineString>\n";
    os << "    </Placemark>\n";
  }
  os << "  </Document>\n";
  os << "</kml>\n";
  return os.str();
}

std::string tracks_geojson(const RunRecord& rec) {
  nlohmann::ordered_json root;
  root["type"] = "FeatureCollection";
  root["features"] = nlohmann::ordered_json::array();

  const std::size_t count = rec.ticks.empty() ? rec.config.pursuers.size() + 1
                                              : rec.ticks.front().vessels.size();
  for (std::size_t i = 0; i < count; ++i) {
    std::string id;
    if (!rec.ticks.empty()) {
      id = rec.ticks.front().vessels[i].vessel_id;
    } else {
      id = i == 0 ? rec.config.evader.id : rec.config.pursuers[i - 1].id;
    }

    nlohmann::ordered_json props;
    props["vessel_id"] = id;
    if (const PursuerSpec* p = pursuer_spec(rec, id)) {
      props["role"] = "pursuer";
      props["mission"] = p->mission;
      if (p->mission == "surveil") props["standoff_m"] = p->standoff_m;
      const PursuerMetrics* m = pursuer_metrics(rec, id);
      props["captured"] = m && m->capture_time_s.has_value();
      if (m && m->capture_time_s) props["capture_time_s"] = *m->capture_time_s;
    } else {
      props["role"] = "evader";
      props["policy"] = rec.config.evader.policy;
    }

    nlohmann::ordered_json coords = nlohmann::ordered_json::array();
    for (const TickSnapshot& tick : rec.ticks) {
      const VesselSnapshot& v = tick.vessels[i];
      coords.push_back({v.lon_deg, v.lat_deg});
    }

    nlohmann::ordered_json feature;
    feature["type"] = "Feature";
    feature["properties"] = std::move(props);
    feature["geometry"] = {{"type", "LineString"},
                           {"coordinates", std::move(coords)}};
    root["features"].push_back(std::move(feature));
  }
  return root.dump(2) + "\n";
}

std::string run_summary(const RunRecord& rec) {
  std::ostringstream os;
  os << "# run summary: " << rec.config.name << "\n";
  os << "seed = " << rec.config.seed << "\n";
  os << "ticks = " << rec.ticks.size() << "\n";
  if (!rec.ticks.empty())
    os << "simulated_s = " << rec.ticks.back().time_s << "\n";

  os << "\n## pursuers\n";
  if (rec.metrics.pursuers.empty()) os << "(none)\n";
  for (const PursuerMetrics& m : rec.metrics.pursuers) {
    os << m.vessel_id << ": ";
    if (m.capture_time_s) {
      os << "captured at t=" << *m.capture_time_s << " s ("
         << minutes(*m.capture_time_s) << " min)";
    } else {
      os << "not captured";
    }
    os << ", min distance " << m.min_distance_m << " m\n";
  }

  os << "\n## capture order\n";
  if (rec.metrics.capture_order.empty()) {
    os << "(no captures)\n";
  } else {
    for (std::size_t i = 0; i < rec.metrics.capture_order.size(); ++i) {
      if (i) os << ", ";
      os << rec.metrics.capture_order[i];
    }
    os << "\n";
  }

  os << "\n## timeline\n";
  if (rec.metrics.timeline.empty()) os << "(empty)\n";
  for (const TimelineEntry& e : rec.metrics.timeline)
    os << "t=" << e.time_s << " s  " << e.text << "\n";

  os << "\n## unapplied events\n";
  if (rec.metrics.unapplied_events.empty()) os << "(none)\n";
  for (const std::string& s : rec.metrics.unapplied_events) os << s << "\n";

  os << "\n## config echo\n";
  os << serialize_scenario(rec.config);
  return os.str();
}

std::vector<std::filesystem::path> export_run(const RunRecord& rec,
                                              const std::set<ExportFormat>& formats,
                                              const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  if (formats.count(ExportFormat::kCsv)) {
    const auto p = out_dir / "steps.csv";
    write_file(p, step_log_csv(rec));
    written.push_back(p);
  }
  if (formats.count(ExportFormat::kKml)) {
    const auto p = out_dir / "tracks.kml";
    write_file(p, tracks_kml(rec));
    written.push_back(p);
  }
  if (formats.count(ExportFormat::kGeojson)) {
    const auto p = out_dir / "tracks.geojson";
    write_file(p, tracks_geojson(rec));
    written.push_back(p);
  }
  const auto summary_path = out_dir / "summary.txt";
  write_file(summary_path, run_summary(rec));
  written.push_back(summary_path);
  return written;
}

}  // namespace pursuitsim
