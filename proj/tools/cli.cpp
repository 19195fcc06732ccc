#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <optional>

#include <CLI11.hpp>

#include "trackgen/io.hpp"
#include "trackgen/pipeline.hpp"
#include "trackgen/report.hpp"
#include "trackgen/synth.hpp"

namespace trackgen::cli {

namespace fs = std::filesystem;

namespace {

struct GenerateArgs {
  std::string input;
  std::string spec;
  std::string output;
  std::string report;
  std::string history;
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  std::optional<std::size_t> segments;
  bool scaled = false;
};

struct AnalyzeArgs {
  std::string input;
  std::string spec;
  std::optional<std::size_t> segments;
};

struct CompareArgs {
  std::string generated;
  std::string reference;
  std::string spec;
  std::optional<std::size_t> segments;
};

struct PlotArgs {
  std::string input;
  std::string spec;
  std::string outdir;
  std::optional<std::size_t> segments;
};

struct SynthArgs {
  std::string recipe;
  std::string output;
  std::string truth;
  double spacing = kDefaultSpacing;
  double scale = 1.0;
};

fs::path with_run_suffix(const fs::path& path, std::size_t run, std::size_t runs) {
  if (runs == 1) {
    return path;
  }
  fs::path out = path;
  out.replace_filename(path.stem().string() + "_run" + std::to_string(run) +
                       path.extension().string());
  return out;
}

std::string format_history(const std::vector<double>& history) {
  std::string out = "iteration,cost\n";
  char buf[64];
  for (std::size_t i = 0; i < history.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, history[i]);
    out += buf;
  }
  return out;
}

// A centerline that is already sampled (a generated 3D track) is segmented
// as-is; resampling would move its points away from their elevations.
SegmentPartition partition_of(const Polyline3D& line, const TrackSpec& spec,
                              const CurvatureProfile& k2d) {
  const Polyline2D planar = project_xy(line);
  SegmentPartition part = segment_line(planar, k2d, spec.segmentation);
  if (spec.segment_count) {
    part = adjust_partition_count(part, planar, *spec.segment_count);
  }
  return part;
}

TrackSpec load_spec(const std::string& path, std::optional<std::size_t> segments) {
  TrackSpec spec = parse_spec(path);
  if (segments) {
    spec.segment_count = segments;
  }
  return spec;
}

GeometryReport analyze_file(const std::string& path, const TrackSpec& spec) {
  const Polyline3D line = read_spatial(path);
  const auto k2d = curvature_2d(project_xy(line));
  return geometry_report(line, partition_of(line, spec, k2d), spec.targets);
}

int generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  TrackSpec spec = load_spec(a.spec, a.segments);
  if (a.scaled) {
    spec.scaled = true;
  }
  const Polyline2D raw = read_planar(a.input);
  const PreparedLine prepared = prepare_line(raw, spec);

  std::vector<std::future<RunResult>> pending;
  pending.reserve(a.runs);
  for (std::size_t r = 0; r < a.runs; ++r) {
    pending.push_back(std::async(std::launch::async, [&prepared, &spec, seed = a.seed + r] {
      return run_generation(prepared, spec, seed);
    }));
  }
  std::vector<RunResult> results;
  results.reserve(a.runs);
  for (auto& f : pending) {
    results.push_back(f.get());
  }

  const fs::path report_base =
      a.report.empty() ? fs::path(a.output).replace_extension(".json") : fs::path(a.report);
  for (std::size_t r = 0; r < a.runs; ++r) {
    const RunResult& res = results[r];
    const std::size_t k = r + 1;
    const GeometryReport report = geometry_report(res.centerline, res.partition, spec.targets);
    RunSummary summary{a.seed + r, res.iterations, res.converged, res.final_cost.total,
                       res.recovered_scale, res.scale_clamped};

    const fs::path centerline_path = with_run_suffix(a.output, k, a.runs);
    write_centerline(res.centerline, centerline_path);
    write_report(report, summary, with_run_suffix(report_base, k, a.runs));
    if (!a.history.empty()) {
      write_text(format_history(res.cost_history), with_run_suffix(a.history, k, a.runs));
    }

    char line[256];
    std::snprintf(line, sizeof line,
                  "run %zu seed %llu: %zu iterations, J = %.6f, L = %.2f m, H = %.2f m, "
                  "mean slope = %.4f",
                  k, static_cast<unsigned long long>(summary.seed), res.iterations,
                  res.final_cost.total, report.total_length, report.height_difference,
                  report.average_slope);
    out << line;
    if (res.recovered_scale) {
      std::snprintf(line, sizeof line, ", f = %.4f", *res.recovered_scale);
      out << line;
    }
    out << " -> " << centerline_path.string() << "\n";
    if (!res.converged) {
      err << "warning: run " << k << " did not converge within "
          << spec.optimizer.max_iterations << " iterations\n";
    }
    if (res.scale_clamped) {
      err << "warning: run " << k << " clamped the scale factor at " << kMinScale << "\n";
    }
  }
  return kExitOk;
}

int analyze(const AnalyzeArgs& a, std::ostream& out) {
  const TrackSpec spec = load_spec(a.spec, a.segments);
  out << format_report(analyze_file(a.input, spec), std::nullopt);
  return kExitOk;
}

GeometryReport load_any(const std::string& path, const std::optional<TrackSpec>& spec) {
  if (fs::path(path).extension() == ".json") {
    return read_report(path);
  }
  if (!spec) {
    throw SpecError("--spec is required to analyze centerline " + path);
  }
  return analyze_file(path, *spec);
}

int compare(const CompareArgs& a, std::ostream& out) {
  std::optional<TrackSpec> spec;
  if (!a.spec.empty()) {
    spec = load_spec(a.spec, a.segments);
  }
  const GeometryReport gen = load_any(a.generated, spec);
  const GeometryReport ref = load_any(a.reference, spec);
  const ComparisonReport cmp = compare_reports(gen, ref);

  char line[256];
  std::snprintf(line, sizeof line, "%-16s %18s %22s %18s\n", "Track", "Total Length (m)",
                "Height Difference (m)", "Average Slope (%)");
  out << line;
  std::snprintf(line, sizeof line, "%-16s %18.1f %22.1f %18.2f\n", "Generated",
                gen.total_length, gen.height_difference, 100.0 * gen.average_slope);
  out << line;
  std::snprintf(line, sizeof line, "%-16s %18.1f %22.1f %18.2f\n", "Reference",
                ref.total_length, ref.height_difference, 100.0 * ref.average_slope);
  out << line;
  std::snprintf(line, sizeof line, "%-16s %17.2f%% %21.2f%% %17.2f%%\n", "Relative error",
                100.0 * cmp.total_length, 100.0 * cmp.height_difference,
                100.0 * cmp.average_slope);
  out << line;
  return kExitOk;
}

int plot_data(const PlotArgs& a, std::ostream& out) {
  const TrackSpec spec = load_spec(a.spec, a.segments);
  const Polyline3D line = read_spatial(a.input);
  const auto k2d = curvature_2d(project_xy(line));
  const auto series = export_series(line, partition_of(line, spec, k2d), k2d);
  write_series(series, a.outdir);
  out << "wrote height.csv, slope.csv, curvature.csv (" << series.distance.size()
      << " rows each) to " << a.outdir << "\n";
  return kExitOk;
}

int synth(const SynthArgs& a, std::ostream& out) {
  const SynthRecipe recipe = parse_recipe(a.recipe);
  SynthTrack track = synth_track(recipe, a.spacing);
  if (a.scale != 1.0) {
    track.planar = scale_xy(track.planar, a.scale);
  }
  write_centerline(track.planar, a.output);
  char line[160];
  std::snprintf(line, sizeof line, "%zu points, planar length %.3f m", track.planar.size(),
                total_length_2d(track.planar));
  out << line;
  if (!a.truth.empty()) {
    if (!track.truth) {
      throw RecipeError("--truth needs a slope on every primitive");
    }
    if (a.scale != 1.0) {
      throw RecipeError("--truth cannot be combined with --scale");
    }
    write_centerline(*track.truth, a.truth);
    std::snprintf(line, sizeof line, ", true drop %.3f m", track.net_drop);
    out << line;
  }
  out << " -> " << a.output << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate and verify 3D sliding-track centerlines from 2D layouts", "trackgen"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "optimize elevations for a 2D centerline");
  g->add_option("--input", gen.input, "2D centerline CSV")->required();
  g->add_option("--spec", gen.spec, "spec JSON")->required();
  g->add_option("--output", gen.output, "3D centerline CSV to write")->required();
  g->add_option("--seed", gen.seed, "seed of the first run");
  g->add_option("--runs", gen.runs, "number of runs (seeds N, N+1, ...)")
      ->check(CLI::PositiveNumber);
  g->add_option("--segments", gen.segments, "segment count override")->check(CLI::PositiveNumber);
  g->add_flag("--scaled", gen.scaled, "also optimize a uniform xy scale factor");
  g->add_option("--report", gen.report, "report JSON (default: output with .json)");
  g->add_option("--history", gen.history, "cost history CSV");

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "measure a 3D centerline");
  a->add_option("--input", an.input, "3D centerline CSV")->required();
  a->add_option("--spec", an.spec, "spec JSON")->required();
  a->add_option("--segments", an.segments, "segment count override")->check(CLI::PositiveNumber);

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "relative errors of a track against a reference");
  c->add_option("--generated", cmp.generated, "3D centerline CSV or report JSON")->required();
  c->add_option("--reference", cmp.reference, "3D centerline CSV or report JSON")->required();
  c->add_option("--spec", cmp.spec, "spec JSON (needed for CSV inputs)");
  c->add_option("--segments", cmp.segments, "segment count override")
      ->check(CLI::PositiveNumber);

  PlotArgs pl;
  auto* p = app.add_subcommand("plot-data", "write height, slope and curvature series");
  p->add_option("--input", pl.input, "3D centerline CSV")->required();
  p->add_option("--spec", pl.spec, "spec JSON")->required();
  p->add_option("--outdir", pl.outdir, "output directory")->required();
  p->add_option("--segments", pl.segments, "segment count override")->check(CLI::PositiveNumber);

  SynthArgs sy;
  auto* s = app.add_subcommand("synth", "sample a line/arc recipe into a 2D centerline");
  s->add_option("--recipe", sy.recipe, "recipe JSON")->required();
  s->add_option("--output", sy.output, "2D centerline CSV to write")->required();
  s->add_option("--truth", sy.truth, "ground-truth 3D CSV (recipes with slopes)");
  s->add_option("--spacing", sy.spacing, "sample spacing in m")->check(CLI::PositiveNumber);
  s->add_option("--scale", sy.scale, "uniform xy scale applied after sampling")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitIo;
  }

  try {
    if (*g) {
      return generate(gen, out, err);
    }
    if (*a) {
      return analyze(an, out);
    }
    if (*c) {
      return compare(cmp, out);
    }
    if (*p) {
      return plot_data(pl, out);
    }
    return synth(sy, out);
  } catch (const SpecError& e) {
    err << "invalid spec: " << e.what() << "\n";
    return kExitInvalidSpec;
  } catch (const RecipeError& e) {
    err << "invalid recipe: " << e.what() << "\n";
    return kExitInvalidSpec;
  } catch (const OptimizerError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitInvalidSpec;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace trackgen::cli
