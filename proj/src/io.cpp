#include "trackgen/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace trackgen {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("error reading " + path.string());
  }
  return buffer.str();
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw IoError("error writing " + path.string());
  }
}

// ---------------------------------------------------------------------------
// centerline CSV

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t from = 0;
  while (true) {
    const auto comma = line.find(',', from);
    fields.push_back(trim(line.substr(from, comma - from)));
    if (comma == std::string_view::npos) {
      break;
    }
    from = comma + 1;
  }
  return fields;
}

double parse_field(std::string_view field, const std::string& where) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw IoError(where + ": '" + std::string(field) + "' is not a finite decimal number");
  }
  return value;
}

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") {
    s = "0.000000";
  }
  return s;
}

}  // namespace

Centerline parse_centerline_text(std::string_view text, const std::string& source) {
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool header_seen = false;
  std::vector<std::vector<double>> rows;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) {
      continue;
    }
    const auto fields = split_fields(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (fields.size() != 2 && fields.size() != 3) {
        throw IoError(where + ": header must name 2 or 3 columns (x,y or x,y,z)");
      }
      columns = fields.size();
      header_seen = true;
      continue;
    }
    if (fields.size() != columns) {
      throw IoError(where + ": expected " + std::to_string(columns) + " columns, found " +
                    std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(columns);
    for (auto f : fields) {
      row.push_back(parse_field(f, where));
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) {
    throw IoError(source + ": empty centerline file");
  }
  if (rows.size() < 3) {
    throw IoError(source + ": need at least 3 points, found " + std::to_string(rows.size()));
  }

  if (columns == 2) {
    Polyline2D line;
    line.points.reserve(rows.size());
    for (const auto& r : rows) {
      line.points.push_back({r[0], r[1]});
    }
    return line;
  }
  Polyline3D line;
  line.points.reserve(rows.size());
  for (const auto& r : rows) {
    line.points.push_back({r[0], r[1], r[2]});
  }
  return line;
}

Centerline parse_centerline(const std::filesystem::path& path) {
  return parse_centerline_text(read_text(path), path.string());
}

Polyline2D read_planar(const std::filesystem::path& path) {
  auto parsed = parse_centerline(path);
  if (auto* line = std::get_if<Polyline2D>(&parsed)) {
    return std::move(*line);
  }
  throw IoError(path.string() + ": expected a 2D centerline (x,y), found 3 columns");
}

Polyline3D read_spatial(const std::filesystem::path& path) {
  auto parsed = parse_centerline(path);
  if (auto* line = std::get_if<Polyline3D>(&parsed)) {
    return std::move(*line);
  }
  throw IoError(path.string() + ": expected a 3D centerline (x,y,z), found 2 columns");
}

std::string format_centerline(const Polyline2D& line) {
  if (line.points.empty()) {
    throw IoError("refusing to write an empty centerline");
  }
  std::string out = "x,y\n";
  for (const auto& p : line.points) {
    out += fixed6(p.x) + "," + fixed6(p.y) + "\n";
  }
  return out;
}

std::string format_centerline(const Polyline3D& line) {
  if (line.points.empty()) {
    throw IoError("refusing to write an empty centerline");
  }
  std::string out = "x,y,z\n";
  for (const auto& p : line.points) {
    out += fixed6(p.x) + "," + fixed6(p.y) + "," + fixed6(p.z) + "\n";
  }
  return out;
}

void write_centerline(const Polyline2D& line, const std::filesystem::path& path) {
  write_text(format_centerline(line), path);
}

void write_centerline(const Polyline3D& line, const std::filesystem::path& path) {
  write_text(format_centerline(line), path);
}

// ---------------------------------------------------------------------------
// JSON documents

namespace {

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(what + ": " + e.what());
  }
}

// Walks one JSON object, remembering its path for error messages and
// rejecting keys nobody asked for.
template <typename Error>
class Fields {
 public:
  Fields(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) {
      throw Error(label() + "expected an object");
    }
  }

  [[nodiscard]] std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    seen_.push_back(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out, bool required = false) {
    const json* v = find(key);
    if (v == nullptr) {
      if (required) {
        throw Error(child(key) + ": missing required field");
      }
      return;
    }
    if (!v->is_number()) {
      throw Error(child(key) + ": expected a number");
    }
    out = v->get<double>();
    if (!std::isfinite(out)) {
      throw Error(child(key) + ": expected a finite number");
    }
  }

  template <typename Int>
  void count(const std::string& key, Int& out) {
    const json* v = find(key);
    if (v == nullptr) {
      return;
    }
    if (!v->is_number_integer() || v->get<long long>() < 0) {
      throw Error(child(key) + ": expected a non-negative integer");
    }
    out = static_cast<Int>(v->get<unsigned long long>());
  }

  void flag(const std::string& key, bool& out) {
    const json* v = find(key);
    if (v == nullptr) {
      return;
    }
    if (!v->is_boolean()) {
      throw Error(child(key) + ": expected true or false");
    }
    out = v->get<bool>();
  }

  void finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        throw Error(child(key) + ": unknown field");
      }
    }
  }

 private:
  [[nodiscard]] std::string label() const { return path_.empty() ? "" : path_ + ": "; }

  const json& object_;
  std::string path_;
  std::vector<std::string> seen_;
};

}  // namespace

TrackSpec parse_spec_text(std::string_view text) {
  const json doc = parse_json(text, "spec");
  TrackSpec spec;
  Fields<SpecError> top(doc, "");

  const json* targets = top.find("targets");
  if (targets == nullptr) {
    throw SpecError("targets: missing required section");
  }
  {
    Fields<SpecError> f(*targets, "targets");
    f.number("total_length", spec.targets.total_length, true);
    f.number("height_difference", spec.targets.height_difference, true);
    f.number("average_slope", spec.targets.average_slope, true);
    f.number("slope_min", spec.targets.slope_min);
    f.number("slope_max", spec.targets.slope_max, true);
    f.finish();
  }
  if (const json* w = top.find("weights")) {
    Fields<SpecError> f(*w, "weights");
    f.number("a", spec.weights.a);
    f.number("b", spec.weights.b);
    f.number("c", spec.weights.c);
    f.number("d", spec.weights.d);
    f.finish();
  }
  if (const json* o = top.find("optimizer")) {
    Fields<SpecError> f(*o, "optimizer");
    f.number("learning_rate", spec.optimizer.learning_rate);
    f.number("scale_learning_rate", spec.optimizer.scale_learning_rate);
    f.number("convergence_threshold", spec.optimizer.convergence_threshold);
    f.count("max_iterations", spec.optimizer.max_iterations);
    f.number("secant_epsilon", spec.optimizer.secant_epsilon);
    f.finish();
  }
  if (const json* s = top.find("segmentation")) {
    Fields<SpecError> f(*s, "segmentation");
    f.number("curvature_threshold", spec.segmentation.curvature_threshold);
    f.count("smoothing_window", spec.segmentation.smoothing_window);
    f.finish();
  }
  top.number("resample_spacing", spec.resample_spacing);
  if (top.find("segment_count") != nullptr) {
    std::size_t s = 0;
    top.count("segment_count", s);
    spec.segment_count = s;
  }
  top.flag("scaled", spec.scaled);
  top.number("f_init", spec.f_init);
  top.finish();

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  } catch (const SegmentationError& e) {
    throw SpecError(e.what());
  }
  return spec;
}

TrackSpec parse_spec(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_spec_text(text);
  } catch (const SpecError& e) {
    throw SpecError(path.string() + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

SynthRecipe parse_recipe_text(std::string_view text) {
  const json doc = parse_json(text, "recipe");
  SynthRecipe recipe;
  Fields<RecipeError> top(doc, "");
  double heading_deg = 0.0;
  top.number("start_heading_deg", heading_deg);
  recipe.start_heading = heading_deg * std::numbers::pi / 180.0;

  const json* primitives = top.find("primitives");
  if (primitives == nullptr || !primitives->is_array()) {
    throw RecipeError("primitives: expected an array");
  }
  for (std::size_t i = 0; i < primitives->size(); ++i) {
    const std::string path = "primitives[" + std::to_string(i) + "]";
    Fields<RecipeError> f((*primitives)[i], path);
    const json* type = f.find("type");
    if (type == nullptr || !type->is_string()) {
      throw RecipeError(path + ".type: expected \"line\" or \"arc\"");
    }
    Primitive p;
    if (*type == "line") {
      p.kind = Primitive::Kind::Line;
      f.number("length", p.length, true);
    } else if (*type == "arc") {
      p.kind = Primitive::Kind::Arc;
      double sweep_deg = 0.0;
      f.number("radius", p.radius, true);
      f.number("sweep_deg", sweep_deg, true);
      p.sweep = sweep_deg * std::numbers::pi / 180.0;
    } else {
      throw RecipeError(path + ".type: expected \"line\" or \"arc\"");
    }
    if (f.find("slope") != nullptr) {
      double slope = 0.0;
      f.number("slope", slope);
      p.slope = slope;
    }
    f.finish();
    recipe.primitives.push_back(p);
  }
  top.finish();
  recipe.validate();
  return recipe;
}

SynthRecipe parse_recipe(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_recipe_text(text);
  } catch (const RecipeError& e) {
    throw RecipeError(path.string() + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// reports and series

std::string format_report(const GeometryReport& report, const std::optional<RunSummary>& run) {
  json doc;
  doc["total_length"] = report.total_length;
  doc["height_difference"] = report.height_difference;
  doc["height_variation"] = report.height_variation;
  doc["max_slope"] = report.max_slope;
  doc["average_slope"] = report.average_slope;
  doc["drop_ratio"] = report.drop_ratio;
  doc["slope_within_limits"] = report.slope_within_limits;
  doc["per_segment_slopes"] = report.per_segment_slopes;
  if (run) {
    json r;
    r["seed"] = run->seed;
    r["iterations"] = run->iterations;
    r["converged"] = run->converged;
    r["final_cost"] = run->final_cost;
    if (run->recovered_scale) {
      r["recovered_scale"] = *run->recovered_scale;
      r["scale_clamped"] = run->scale_clamped;
    }
    if (!run->converged) {
      r["warning"] = "did not converge within max_iterations";
    }
    doc["run"] = r;
  }
  return doc.dump(2) + "\n";
}

void write_report(const GeometryReport& report, const std::optional<RunSummary>& run,
                  const std::filesystem::path& path) {
  write_text(format_report(report, run), path);
}

GeometryReport read_report(const std::filesystem::path& path) {
  const json doc = parse_json(read_text(path), path.string());
  if (!doc.is_object()) {
    throw IoError(path.string() + ": expected a JSON object");
  }
  GeometryReport r;
  auto number = [&](const char* key, double& out) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_number()) {
      throw IoError(path.string() + ": " + key + " must be a number");
    }
    out = it->get<double>();
  };
  number("total_length", r.total_length);
  number("height_difference", r.height_difference);
  number("average_slope", r.average_slope);
  if (doc.contains("max_slope")) {
    number("max_slope", r.max_slope);
  }
  if (doc.contains("height_variation")) {
    number("height_variation", r.height_variation);
  }
  if (auto it = doc.find("slope_within_limits"); it != doc.end() && it->is_boolean()) {
    r.slope_within_limits = it->get<bool>();
  }
  if (auto it = doc.find("per_segment_slopes"); it != doc.end() && it->is_array()) {
    r.per_segment_slopes = it->get<std::vector<double>>();
  }
  r.drop_ratio = r.total_length > 0.0 ? r.height_difference / r.total_length : 0.0;
  return r;
}

void write_series(const SeriesBundle& series, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw IoError("cannot create " + directory.string() + ": " + ec.message());
  }
  std::string height = "s,z\n";
  std::string slope = "s,g\n";
  std::string curvature = "s,k_planar,k_spatial\n";
  for (std::size_t k = 0; k < series.distance.size(); ++k) {
    const std::string s = fixed6(series.distance[k]);
    height += s + "," + fixed6(series.height[k]) + "\n";
    slope += s + "," + fixed6(series.slope[k]) + "\n";
    char buf[96];
    std::snprintf(buf, sizeof buf, ",%.9f,%.9f\n", series.planar_curvature[k],
                  series.spatial_curvature[k]);
    curvature += s + buf;
  }
  write_text(height, directory / "height.csv");
  write_text(slope, directory / "slope.csv");
  write_text(curvature, directory / "curvature.csv");
}

}  // namespace trackgen
