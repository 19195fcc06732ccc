#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "trackgen/geometry.hpp"
#include "trackgen/optimizer.hpp"
#include "trackgen/pipeline.hpp"
#include "trackgen/report.hpp"
#include "trackgen/synth.hpp"

namespace trackgen {

/// Missing files, unreadable or malformed documents.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed spec document whose contents violate a field constraint.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Centerline = std::variant<Polyline2D, Polyline3D>;

// Centerline CSV: one header row, then `x,y` or `x,y,z` rows in travel order.
Centerline parse_centerline_text(std::string_view text, const std::string& source = "<text>");
Centerline parse_centerline(const std::filesystem::path& path);
Polyline2D read_planar(const std::filesystem::path& path);
Polyline3D read_spatial(const std::filesystem::path& path);

std::string format_centerline(const Polyline2D& line);
std::string format_centerline(const Polyline3D& line);
void write_centerline(const Polyline2D& line, const std::filesystem::path& path);
void write_centerline(const Polyline3D& line, const std::filesystem::path& path);

TrackSpec parse_spec_text(std::string_view text);
TrackSpec parse_spec(const std::filesystem::path& path);

SynthRecipe parse_recipe_text(std::string_view text);
SynthRecipe parse_recipe(const std::filesystem::path& path);

/// Run metadata written next to a GeometryReport.
struct RunSummary {
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  bool converged = false;
  double final_cost = 0.0;
  std::optional<double> recovered_scale;
  bool scale_clamped = false;
};

std::string format_report(const GeometryReport& report, const std::optional<RunSummary>& run);
void write_report(const GeometryReport& report, const std::optional<RunSummary>& run,
                  const std::filesystem::path& path);
/// Reads the geometric fields of a report; run metadata is ignored.
GeometryReport read_report(const std::filesystem::path& path);

/// Writes height.csv, slope.csv and curvature.csv into `directory`.
void write_series(const SeriesBundle& series, const std::filesystem::path& directory);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace trackgen
