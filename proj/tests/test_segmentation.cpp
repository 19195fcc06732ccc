#include <doctest.h>

#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "trackgen/segmentation.hpp"
#include "trackgen/synth.hpp"

using namespace trackgen;
using std::numbers::pi;

namespace {

constexpr auto S = SegmentKind::Straight;
constexpr auto C = SegmentKind::Curved;

CurvatureProfile profile_of(std::vector<double> v) { return CurvatureProfile{std::move(v)}; }

void check_invariants(const SegmentPartition& part, const Polyline2D& line) {
  REQUIRE_NOTHROW(part.validate());
  CHECK(part.point_count == line.size());
  std::size_t covered = 0;
  for (std::size_t m = 0; m < part.segment_count(); ++m) {
    CHECK(part.points_in(m) >= 2);
    CHECK(part.planar_lengths[m] > 0.0);
    covered += part.points_in(m);
  }
  CHECK(covered == line.size());
  const double total = total_length_2d(line);
  CHECK(std::abs(part.total_planar_length() - total) / total < 1e-6);
}

}  // namespace

TEST_CASE("classify_points") {
  const SegmentationConfig cfg;
  CHECK(classify_points(profile_of(std::vector<double>(7, 0.0)), cfg) ==
        std::vector<SegmentKind>(7, S));
  CHECK(classify_points(profile_of(std::vector<double>(7, 0.1)), cfg) ==
        std::vector<SegmentKind>(7, C));
  CHECK(classify_points(profile_of({0, 0, 0.1, 0, 0}), cfg) ==
        std::vector<SegmentKind>{S, S, C, S, S});
}

TEST_CASE("smooth_labels") {
  const SegmentationConfig cfg;
  SUBCASE("a mislabelled point below threshold rejoins the straight") {
    const auto profile = profile_of({0, 0, 0.004, 0, 0});
    CHECK(smooth_labels({S, S, C, S, S}, profile, cfg) == std::vector<SegmentKind>(5, S));
  }
  SUBCASE("all curved is a fixed point") {
    const auto profile = profile_of(std::vector<double>(9, 0.05));
    CHECK(smooth_labels(std::vector<SegmentKind>(9, C), profile, cfg) ==
          std::vector<SegmentKind>(9, C));
  }
  SUBCASE("isolated spikes on a straight are absorbed") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> low(0.0, 0.0045);
    std::vector<double> k(300);
    for (auto& v : k) {
      v = low(rng);
    }
    for (std::size_t i = 3; i < k.size(); i += 7) {
      k[i] = 0.006;
    }
    const auto profile = profile_of(k);
    const auto out = smooth_labels(classify_points(profile, cfg), profile, cfg);
    CHECK(out == std::vector<SegmentKind>(k.size(), S));
  }
  SUBCASE("idempotent on random profiles") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 0.01);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> k(60);
      for (auto& v : k) {
        v = u(rng);
      }
      const auto profile = profile_of(k);
      const auto once = smooth_labels(classify_points(profile, cfg), profile, cfg);
      CHECK(smooth_labels(once, profile, cfg) == once);
    }
  }
  SUBCASE("window larger than the input") {
    CHECK_THROWS_AS(smooth_labels({S, S, S}, profile_of({0, 0, 0}), cfg), SegmentationError);
  }
}

TEST_CASE("build_partition") {
  SUBCASE("run-length encoding") {
    const auto line = fixtures::straight(8, 1.0);
    const auto part = build_partition({S, S, S, C, C, C, S, S}, line);
    REQUIRE(part.segment_count() == 3);
    CHECK(part.points_in(0) == 3);
    CHECK(part.points_in(1) == 3);
    CHECK(part.points_in(2) == 2);
    CHECK(part.kinds == std::vector<SegmentKind>{S, C, S});
    check_invariants(part, line);
  }
  SUBCASE("single run") {
    const auto line = fixtures::straight(11, 1.0);
    const auto part = build_partition(std::vector<SegmentKind>(11, S), line);
    REQUIRE(part.segment_count() == 1);
    CHECK(part.planar_lengths[0] == doctest::Approx(10.0));
  }
  SUBCASE("a single-point run is rejected") {
    const auto line = fixtures::straight(5, 1.0);
    CHECK_THROWS_AS(build_partition({S, S, C, S, S}, line), SegmentationError);
  }
  SUBCASE("line-arc-line fixture") {
    const SynthRecipe recipe{{Primitive::line(50), Primitive::arc(30, pi / 2), Primitive::line(50)}};
    const auto track = synth_track(recipe, 1.0);
    const auto k = curvature_2d(track.planar);
    const auto part = segment_line(track.planar, k, SegmentationConfig{});
    REQUIRE(part.segment_count() == 3);
    CHECK(part.kinds == std::vector<SegmentKind>{S, C, S});
    const double arc = 30 * pi / 2;
    CHECK(std::abs(part.planar_lengths[0] - 50) / 50 < 0.02);
    CHECK(std::abs(part.planar_lengths[1] - arc) / arc < 0.02);
    CHECK(std::abs(part.planar_lengths[2] - 50) / 50 < 0.02);
    // tangency points sit at arc length 50 and 50 + 15 pi
    const double h = track.planar.spacing;
    CHECK(std::abs(static_cast<double>(part.start(1)) - 50 / h) <= 2.0);
    CHECK(std::abs(static_cast<double>(part.start(2)) - (50 + arc) / h) <= 2.0);
    check_invariants(part, track.planar);
  }
}

TEST_CASE("adjust_partition_count") {
  const SynthRecipe recipe{{Primitive::line(60), Primitive::arc(25, pi / 2), Primitive::line(40),
                            Primitive::arc(35, -pi / 3), Primitive::line(30),
                            Primitive::arc(20, pi / 2), Primitive::line(45)}};
  const auto track = synth_track(recipe, 1.0);
  const auto k = curvature_2d(track.planar);
  const auto base = segment_line(track.planar, k, SegmentationConfig{});
  REQUIRE(base.segment_count() == 7);

  SUBCASE("same count is the identity") {
    const auto same = adjust_partition_count(base, track.planar, 7);
    CHECK(same.starts == base.starts);
    CHECK(same.kinds == base.kinds);
  }
  SUBCASE("one 100 m segment split in two") {
    const auto line = fixtures::straight(101, 1.0);
    const auto one = build_partition(std::vector<SegmentKind>(101, S), line);
    const auto two = adjust_partition_count(one, line, 2);
    REQUIRE(two.segment_count() == 2);
    CHECK(std::abs(two.planar_lengths[0] - 50) <= 1.0);
    CHECK(std::abs(two.planar_lengths[1] - 50) <= 1.0);
  }
  SUBCASE("growing to 15 conserves length") {
    const auto grown = adjust_partition_count(base, track.planar, 15);
    CHECK(grown.segment_count() == 15);
    check_invariants(grown, track.planar);
  }
  SUBCASE("any reachable count is exact and length-preserving") {
    for (std::size_t s : {1u, 2u, 3u, 5u, 9u, 12u, 21u, 29u, 40u}) {
      const auto adjusted = adjust_partition_count(base, track.planar, s);
      CHECK(adjusted.segment_count() == s);
      check_invariants(adjusted, track.planar);
    }
  }
  SUBCASE("merged kind is curved if either side was") {
    const auto merged = adjust_partition_count(base, track.planar, 1);
    CHECK(merged.kinds == std::vector<SegmentKind>{C});
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(adjust_partition_count(base, track.planar, 0), SegmentationError);
    CHECK_THROWS_AS(adjust_partition_count(base, track.planar, track.planar.size()),
                    SegmentationError);
  }
}

TEST_CASE("with_planar_lengths follows a rescaled line") {
  const auto line = fixtures::straight(21, 1.0);
  const auto part = build_partition(std::vector<SegmentKind>(21, S), line);
  const auto scaled = with_planar_lengths(part, scale_xy(line, 2.0));
  CHECK(scaled.planar_lengths[0] == doctest::Approx(40.0));
  CHECK(scaled.starts == part.starts);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS((SegmentationConfig{0.0, 5}.validate()), SegmentationError);
  CHECK_THROWS_AS((SegmentationConfig{0.005, 4}.validate()), SegmentationError);
  CHECK_THROWS_AS((SegmentationConfig{0.005, 1}.validate()), SegmentationError);
  CHECK_NOTHROW((SegmentationConfig{0.005, 3}.validate()));
}
