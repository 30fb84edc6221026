#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "pursuitsim/engine.hpp"

namespace pursuitsim {

enum class ExportFormat { kCsv, kKml, kGeojson };

/// Maps "csv" / "kml" / "geojson" to the enum; throws ValidationError on
/// anything else.
ExportFormat parse_format_name(const std::string& name);

/// CSV step log: one row per (tick, vessel), numeric fields in fixed
/// decimal with 9 digits after the point.
std::string step_log_csv(const RunRecord& rec);

/// KML document with one track placemark per vessel, annotated with
/// mission and capture status.
std::string tracks_kml(const RunRecord& rec);

/// GeoJSON FeatureCollection with one LineString per vessel.
std::string tracks_geojson(const RunRecord& rec);

/// Human-readable run summary: per-pursuer metrics, mission timeline, seed
/// and a full config echo.
std::string run_summary(const RunRecord& rec);

/// Writes the step log (csv), requested track formats and the summary into
/// out_dir, creating it if needed. Returns the written paths in a fixed
/// order. Re-exporting the same record is byte-identical.
std::vector<std::filesystem::path> export_run(const RunRecord& rec,
                                              const std::set<ExportFormat>& formats,
                                              const std::filesystem::path& out_dir);

}  // namespace pursuitsim
