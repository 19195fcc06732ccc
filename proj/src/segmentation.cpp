#include "trackgen/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace trackgen {

void SegmentationConfig::validate() const {
  if (!(curvature_threshold > 0.0) || !std::isfinite(curvature_threshold)) {
    throw SegmentationError("segmentation.curvature_threshold must be positive");
  }
  if (smoothing_window < 3 || smoothing_window % 2 == 0) {
    throw SegmentationError("segmentation.smoothing_window must be odd and >= 3");
  }
}

double SegmentPartition::total_planar_length() const {
  double sum = 0.0;
  for (double d : planar_lengths) {
    sum += d;
  }
  return sum;
}

std::vector<std::size_t> SegmentPartition::owner_of_points() const {
  std::vector<std::size_t> owner(point_count, 0);
  for (std::size_t m = 0; m < segment_count(); ++m) {
    std::fill(owner.begin() + static_cast<std::ptrdiff_t>(start(m)),
              owner.begin() + static_cast<std::ptrdiff_t>(end(m)), m);
  }
  return owner;
}

void SegmentPartition::validate() const {
  const std::size_t j = segment_count();
  if (j == 0) {
    throw SegmentationError("partition has no segments");
  }
  if (kinds.size() != j || planar_lengths.size() != j) {
    throw SegmentationError("partition field sizes disagree");
  }
  if (starts.front() != 0) {
    throw SegmentationError("first segment must start at point 0");
  }
  for (std::size_t m = 0; m < j; ++m) {
    if (end(m) <= start(m) || points_in(m) < 2) {
      throw SegmentationError("segment " + std::to_string(m) + " has fewer than 2 points");
    }
    if (!(planar_lengths[m] > 0.0)) {
      throw SegmentationError("segment " + std::to_string(m) + " has non-positive length");
    }
  }
}

std::vector<SegmentKind> classify_points(const CurvatureProfile& profile,
                                         const SegmentationConfig& config) {
  std::vector<SegmentKind> labels;
  labels.reserve(profile.size());
  for (double k : profile.values) {
    labels.push_back(k < config.curvature_threshold ? SegmentKind::Straight
                                                     : SegmentKind::Curved);
  }
  return labels;
}

namespace {

std::vector<SegmentKind> majority_pass(const std::vector<SegmentKind>& labels,
                                       const CurvatureProfile& profile,
                                       const SegmentationConfig& config) {
  const std::size_t n = labels.size();
  const std::size_t half = config.smoothing_window / 2;
  std::vector<SegmentKind> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k >= half ? k - half : 0;
    const std::size_t hi = std::min(n - 1, k + half);
    std::size_t straight = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      straight += labels[i] == SegmentKind::Straight ? 1 : 0;
    }
    const bool majority_straight = 2 * straight > hi - lo + 1;
    const bool own_straight = profile.values[k] < config.curvature_threshold;
    out[k] = majority_straight && own_straight ? SegmentKind::Straight : SegmentKind::Curved;
  }
  return out;
}

// A run of length one takes the label of the run(s) around it.
void absorb_singletons(std::vector<SegmentKind>& labels) {
  const std::size_t n = labels.size();
  if (n < 2) {
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const bool differs_left = k == 0 || labels[k - 1] != labels[k];
    const bool differs_right = k + 1 == n || labels[k + 1] != labels[k];
    if (differs_left && differs_right) {
      labels[k] = k == 0 ? labels[1] : labels[k - 1];
    }
  }
}

}  // namespace

std::vector<SegmentKind> smooth_labels(const std::vector<SegmentKind>& labels,
                                       const CurvatureProfile& profile,
                                       const SegmentationConfig& config) {
  config.validate();
  if (labels.size() != profile.size()) {
    throw SegmentationError("smooth_labels: label and profile sizes differ");
  }
  if (config.smoothing_window > labels.size()) {
    throw SegmentationError("smooth_labels: window larger than label count");
  }
  // Each pass votes and then absorbs single-point runs; the result is a fixed
  // point of that pass, which makes smoothing idempotent. The cap guards
  // against labelings that cycle.
  std::vector<SegmentKind> current = labels;
  for (std::size_t pass = 0; pass <= labels.size(); ++pass) {
    auto next = majority_pass(current, profile, config);
    absorb_singletons(next);
    if (next == current) {
      break;
    }
    current = std::move(next);
  }
  return current;
}

namespace {

double range_length(const Polyline2D& line, std::size_t begin, std::size_t end) {
  double sum = 0.0;
  for (std::size_t k = std::max<std::size_t>(begin, 1); k < end; ++k) {
    sum += planar_step(line.points[k - 1], line.points[k]);
  }
  return sum;
}

void recompute_lengths(SegmentPartition& part, const Polyline2D& line) {
  part.planar_lengths.resize(part.segment_count());
  for (std::size_t m = 0; m < part.segment_count(); ++m) {
    part.planar_lengths[m] = range_length(line, part.start(m), part.end(m));
  }
}

}  // namespace

SegmentPartition build_partition(const std::vector<SegmentKind>& labels, const Polyline2D& line) {
  if (labels.size() != line.size()) {
    throw SegmentationError("build_partition: " + std::to_string(labels.size()) +
                            " labels for " + std::to_string(line.size()) + " points");
  }
  if (labels.empty()) {
    throw SegmentationError("build_partition: empty line");
  }
  SegmentPartition part;
  part.point_count = labels.size();
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (k == 0 || labels[k] != labels[k - 1]) {
      part.starts.push_back(k);
      part.kinds.push_back(labels[k]);
    }
  }
  recompute_lengths(part, line);
  for (std::size_t m = 0; m < part.segment_count(); ++m) {
    if (part.points_in(m) < 2) {
      throw SegmentationError("build_partition: segment " + std::to_string(m) +
                              " starting at point " + std::to_string(part.start(m)) +
                              " has a single point");
    }
  }
  part.validate();
  return part;
}

SegmentPartition with_planar_lengths(const SegmentPartition& part, const Polyline2D& line) {
  if (line.size() != part.point_count) {
    throw SegmentationError("with_planar_lengths: point count mismatch");
  }
  SegmentPartition out = part;
  recompute_lengths(out, line);
  return out;
}

namespace {

void split_longest(SegmentPartition& part, const Polyline2D& line) {
  std::size_t best = part.segment_count();
  for (std::size_t m = 0; m < part.segment_count(); ++m) {
    if (part.points_in(m) < 4) {
      continue;
    }
    if (best == part.segment_count() || part.planar_lengths[m] > part.planar_lengths[best]) {
      best = m;
    }
  }
  if (best == part.segment_count()) {
    throw SegmentationError("adjust_partition_count: no segment long enough to split");
  }
  const std::size_t s = part.start(best);
  const std::size_t e = part.end(best);
  const double half = part.planar_lengths[best] / 2.0;

  // children [s, b) and [b, e), each with at least two points
  std::size_t split = s + 2;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t b = s + 2; b + 2 <= e; ++b) {
    const double gap = std::abs(range_length(line, s, b) - half);
    if (gap < best_gap) {
      best_gap = gap;
      split = b;
    }
  }
  const auto at = static_cast<std::ptrdiff_t>(best + 1);
  part.starts.insert(part.starts.begin() + at, split);
  part.kinds.insert(part.kinds.begin() + at, part.kinds[best]);
  part.planar_lengths.insert(part.planar_lengths.begin() + at, 0.0);
  part.planar_lengths[best] = range_length(line, s, split);
  part.planar_lengths[best + 1] = range_length(line, split, e);
}

void merge_shortest(SegmentPartition& part, const Polyline2D& line) {
  const std::size_t j = part.segment_count();
  std::size_t shortest = 0;
  for (std::size_t m = 1; m < j; ++m) {
    if (part.planar_lengths[m] < part.planar_lengths[shortest]) {
      shortest = m;
    }
  }
  std::size_t left = 0;  // the lower of the two merged segments
  if (shortest == 0) {
    left = 0;
  } else if (shortest + 1 == j) {
    left = shortest - 1;
  } else {
    left = part.planar_lengths[shortest - 1] <= part.planar_lengths[shortest + 1] ? shortest - 1
                                                                                 : shortest;
  }
  const bool curved =
      part.kinds[left] == SegmentKind::Curved || part.kinds[left + 1] == SegmentKind::Curved;
  const std::size_t begin = part.start(left);
  const std::size_t end = part.end(left + 1);
  const auto at = static_cast<std::ptrdiff_t>(left + 1);
  part.starts.erase(part.starts.begin() + at);
  part.kinds.erase(part.kinds.begin() + at);
  part.planar_lengths.erase(part.planar_lengths.begin() + at);
  part.kinds[left] = curved ? SegmentKind::Curved : SegmentKind::Straight;
  part.planar_lengths[left] = range_length(line, begin, end);
}

}  // namespace

SegmentPartition adjust_partition_count(const SegmentPartition& part, const Polyline2D& line,
                                        std::size_t count) {
  if (line.size() != part.point_count) {
    throw SegmentationError("adjust_partition_count: point count mismatch");
  }
  if (count < 1 || count > part.point_count / 2) {
    throw SegmentationError("adjust_partition_count: segment count " + std::to_string(count) +
                            " outside [1, " + std::to_string(part.point_count / 2) + "]");
  }
  SegmentPartition out = part;
  while (out.segment_count() < count) {
    split_longest(out, line);
  }
  while (out.segment_count() > count) {
    merge_shortest(out, line);
  }
  out.validate();
  return out;
}

SegmentPartition segment_line(const Polyline2D& line, const CurvatureProfile& profile,
                              const SegmentationConfig& config) {
  const auto raw = classify_points(profile, config);
  const auto smoothed = smooth_labels(raw, profile, config);
  return build_partition(smoothed, line);
}

}  // namespace trackgen
