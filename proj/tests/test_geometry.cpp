#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "trackgen/geometry.hpp"

using namespace trackgen;
using std::numbers::pi;

namespace {

double max_gap_deviation(const Polyline2D& line) {
  double worst = 0.0;
  for (std::size_t k = 1; k < line.size(); ++k) {
    const double gap = planar_step(line.points[k - 1], line.points[k]);
    worst = std::max(worst, std::abs(gap - line.spacing) / line.spacing);
  }
  return worst;
}

}  // namespace

TEST_CASE("planar and spatial steps") {
  CHECK(planar_step({0, 0}, {3, 4}) == 5.0);
  CHECK(planar_step({2, 2}, {2, 2}) == 0.0);
  CHECK(planar_step({1, 1}, {4, 5}) == 5.0);
  CHECK(spatial_step({0, 0, 0}, {3, 4, 12}) == 13.0);
  CHECK(spatial_step({0, 0, 0}, {1, 2, 2}) == 3.0);
  CHECK(spatial_step({1, 2, 7}, {4, 6, 7}) == planar_step({1, 2}, {4, 6}));
}

TEST_CASE("spatial step never shorter than its projection") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const Point3D a{u(rng), u(rng), u(rng)};
    const Point3D b{u(rng), u(rng), u(rng)};
    CHECK(spatial_step(a, b) >= planar_step({a.x, a.y}, {b.x, b.y}));
  }
}

TEST_CASE("total 3D length") {
  Polyline3D line;
  for (int k = 0; k <= 10; ++k) {
    line.points.push_back({static_cast<double>(k), 0, 0});
  }
  CHECK(total_length_3d(line) == doctest::Approx(10.0).epsilon(1e-12));

  Polyline3D ramp;
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    ramp.points.push_back({30 * t, 40 * t, 120 * t});
  }
  CHECK(total_length_3d(ramp) == doctest::Approx(130.0).epsilon(1e-12));

  const auto circle = fixtures::lift(fixtures::arc(10.0, 0.2, 2 * pi), 0.0);
  CHECK(std::abs(total_length_3d(circle) - 2 * pi * 10) / (2 * pi * 10) < 1e-3);

  Polyline3D single;
  single.points.push_back({0, 0, 0});
  CHECK_THROWS_AS(total_length_3d(single), GeometryError);
}

TEST_CASE("resample_uniform") {
  SUBCASE("straight line at unit spacing") {
    Polyline2D raw{{{0, 0}, {10, 0}}};
    const auto out = resample_uniform(raw, 1.0);
    REQUIRE(out.size() == 11);
    for (std::size_t k = 0; k < out.size(); ++k) {
      CHECK(out.points[k].x == doctest::Approx(static_cast<double>(k)));
      CHECK(out.points[k].y == 0.0);
    }
  }
  SUBCASE("diagonal segment interpolates linearly") {
    Polyline2D raw{{{0, 0}, {3, 4}}};
    const auto out = resample_uniform(raw, 2.5);
    REQUIRE(out.size() == 3);
    CHECK(out.points[1].x == doctest::Approx(1.5));
    CHECK(out.points[1].y == doctest::Approx(2.0));
    CHECK(out.points[2] == Point2D{3, 4});
  }
  SUBCASE("quarter circle of radius 100") {
    Polyline2D raw;
    for (int k = 0; k <= 20000; ++k) {
      const double t = pi / 2 * k / 20000.0;
      raw.points.push_back({100 * std::cos(t), 100 * std::sin(t)});
    }
    const auto out = resample_uniform(raw, 1.0);
    CHECK(out.size() == 158);
    CHECK(max_gap_deviation(out) < 0.01);
    CHECK(out.points.front() == raw.points.front());
    CHECK(out.points.back() == raw.points.back());
  }
  SUBCASE("idempotent at the same spacing") {
    const auto once = resample_uniform(fixtures::arc(30.0, 0.37, pi), 1.0);
    const auto twice = resample_uniform(once, 1.0);
    CHECK(twice.size() == once.size());
    CHECK(max_gap_deviation(twice) < 0.01);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(resample_uniform(Polyline2D{{{0, 0}}}, 1.0), GeometryError);
    CHECK_THROWS_AS(resample_uniform(Polyline2D{{{0, 0}, {10, 0}}}, 0.0), GeometryError);
    CHECK_THROWS_AS(resample_uniform(Polyline2D{{{0, 0}, {10, 0}}}, 6.0), GeometryError);
  }
}

TEST_CASE("first and second differences") {
  SUBCASE("linear series") {
    const std::vector<double> s{0, 1, 2, 3};
    const auto d = first_second_differences(s, 1.0);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(d.first[k] == doctest::Approx(1.0));
      CHECK(d.second[k] == doctest::Approx(0.0));
    }
  }
  SUBCASE("quadratic series") {
    const std::vector<double> s{0, 1, 4, 9};
    const auto d = first_second_differences(s, 1.0);
    CHECK(d.first[1] == doctest::Approx(2.0));
    CHECK(d.first[2] == doctest::Approx(4.0));
    CHECK(d.second[1] == doctest::Approx(2.0));
    CHECK(d.second[2] == doctest::Approx(2.0));
    // one-sided stencils are exact on quadratics too
    CHECK(d.first[0] == doctest::Approx(0.0));
    CHECK(d.first[3] == doctest::Approx(6.0));
  }
  SUBCASE("sine against analytic derivatives") {
    const double h = 0.01;
    std::vector<double> s(1000);
    for (std::size_t k = 0; k < s.size(); ++k) {
      s[k] = std::sin(h * static_cast<double>(k));
    }
    const auto d = first_second_differences(s, h);
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double t = h * static_cast<double>(k);
      CHECK(std::abs(d.first[k] - std::cos(t)) < 1e-4);
      CHECK(std::abs(d.second[k] + std::sin(t)) < 1e-3);
    }
  }
  SUBCASE("too short") {
    const std::vector<double> s{1, 2};
    CHECK_THROWS_AS(first_second_differences(s, 1.0), GeometryError);
  }
}

TEST_CASE("planar curvature") {
  SUBCASE("straight lines have zero curvature") {
    for (double angle : {0.0, 0.3, 1.2, -2.0}) {
      const auto k = curvature_2d(fixtures::straight(50, 0.7, angle));
      for (double v : k.values) {
        CHECK(v <= 1e-9);
      }
    }
  }
  SUBCASE("circles") {
    for (auto [r, h] : {std::pair{10.0, 0.5}, std::pair{33.0, 1.0}, std::pair{100.0, 5.0}}) {
      const auto k = curvature_2d(fixtures::arc(r, h, 1.5 * pi));
      for (std::size_t i = 1; i + 1 < k.size(); ++i) {
        CHECK(std::abs(k[i] - 1.0 / r) * r < 0.01);
      }
    }
  }
  SUBCASE("degenerate point is reported by index") {
    Polyline2D line{{{0, 0}, {0, 0}, {0, 0}, {1, 0}}};
    line.spacing = 1.0;
    CHECK_THROWS_WITH_AS(curvature_2d(line), doctest::Contains("point 0"), GeometryError);
  }
}

TEST_CASE("space curvature") {
  SUBCASE("planar circle lifted to constant height") {
    const auto planar = fixtures::arc(10.0, 0.5, pi);
    const auto k2 = curvature_2d(planar);
    const auto k3 = curvature_3d(fixtures::lift(planar, 42.0));
    for (std::size_t i = 0; i < k2.size(); ++i) {
      CHECK(std::abs(k2[i] - k3[i]) < 1e-6);
    }
  }
  SUBCASE("helix") {
    const double r = 10.0;
    const double c = 1.0;
    const auto k = curvature_3d(fixtures::helix(r, c, 0.01, 800));
    const double expected = r / (r * r + c * c);
    for (std::size_t i = 1; i + 1 < k.size(); ++i) {
      CHECK(std::abs(k[i] - expected) / expected < 0.01);
    }
  }
  SUBCASE("straight ramp") {
    Polyline3D ramp;
    for (int i = 0; i < 20; ++i) {
      ramp.points.push_back({0.8 * i, 0.6 * i, -0.1 * i});
    }
    ramp.spacing = 1.0;
    for (double v : curvature_3d(ramp).values) {
      CHECK(v <= 1e-9);
    }
  }
  SUBCASE("vanishing first derivative") {
    Polyline3D line;
    line.spacing = 1.0;
    line.points = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    CHECK_THROWS_AS(curvature_3d(line), GeometryError);
  }
}

TEST_CASE("scale_xy") {
  const auto circle = fixtures::arc(10.0, 0.5, pi);
  SUBCASE("identity") {
    const auto same = scale_xy(circle, 1.0);
    CHECK(same.points == circle.points);
  }
  SUBCASE("inverse composition") {
    const auto back = scale_xy(scale_xy(circle, 0.9), 1.0 / 0.9);
    for (std::size_t i = 0; i < circle.size(); ++i) {
      CHECK(std::abs(back.points[i].x - circle.points[i].x) < 1e-9);
      CHECK(std::abs(back.points[i].y - circle.points[i].y) < 1e-9);
    }
  }
  SUBCASE("curvature and length scaling laws") {
    for (double f : {0.5, 2.0, 1.7}) {
      const auto scaled = scale_xy(circle, f);
      const auto k0 = curvature_2d(circle);
      const auto k1 = curvature_2d(scaled);
      for (std::size_t i = 1; i + 1 < k0.size(); ++i) {
        CHECK(std::abs(k1[i] * f - k0[i]) / k0[i] < 0.01);
      }
      CHECK(std::abs(total_length_2d(scaled) - f * total_length_2d(circle)) < 1e-9);
    }
  }
  SUBCASE("non-positive factor") {
    CHECK_THROWS_AS(scale_xy(circle, 0.0), GeometryError);
    CHECK_THROWS_AS(scale_xy(circle, -1.0), GeometryError);
  }
}
