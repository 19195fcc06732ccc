#include "trackgen/pipeline.hpp"

namespace trackgen {

void TrackSpec::validate() const {
  targets.validate();
  weights.validate();
  optimizer.validate();
  segmentation.validate();
  if (!(resample_spacing > 0.0)) {
    throw OptimizerError("resample_spacing must be positive");
  }
  if (segment_count && *segment_count < 1) {
    throw OptimizerError("segment_count must be at least 1");
  }
  if (!(f_init > 0.0)) {
    throw OptimizerError("f_init must be positive");
  }
}

PreparedLine prepare_line(const Polyline2D& raw, const TrackSpec& spec) {
  PreparedLine out;
  out.line = resample_uniform(raw, spec.resample_spacing);
  out.planar_curvature = curvature_2d(out.line);
  out.partition = segment_line(out.line, out.planar_curvature, spec.segmentation);
  if (spec.segment_count) {
    out.partition = adjust_partition_count(out.partition, out.line, *spec.segment_count);
  }
  return out;
}

RunResult run_generation(const PreparedLine& prepared, const TrackSpec& spec, std::uint64_t seed) {
  OptimizerConfig config = spec.optimizer;
  config.seed = seed;
  if (spec.scaled) {
    return optimize_with_scale(prepared.line, prepared.partition, spec.targets, spec.weights,
                               config, spec.f_init);
  }
  return optimize(prepared.line, prepared.partition, spec.targets, spec.weights, config);
}

}  // namespace trackgen
