#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <tuple>

#include "shapebench/genset.hpp"
#include "shapebench/md5.hpp"
#include "shapebench/render.hpp"

using namespace shapebench;
namespace fs = std::filesystem;

namespace {

ShapeInstance make(ShapeKind kind, PixelPoint c, std::array<int, 2> extents,
                   int rot = 0, ColorName color = ColorName::Red) {
  ShapeInstance s;
  s.kind = kind;
  s.color = color;
  s.center = c;
  s.size.extents = extents;
  s.rotation_deg = rot;
  return s;
}

std::size_t count_color(const RgbImage& img, Rgb c) {
  std::size_t n = 0;
  for (const Rgb& p : img.pixels()) n += p == c;
  return n;
}

// Corners of the outline in image coordinates, counter-clockwise on screen.
std::vector<std::pair<double, double>> polygon(const ShapeInstance& s) {
  std::vector<std::pair<double, double>> local;
  const auto& e = s.size.extents;
  if (s.kind == ShapeKind::Triangle) {
    const double r = e[0];
    local = {{0, r}, {-r * std::sqrt(3.0) / 2, -r / 2}, {r * std::sqrt(3.0) / 2, -r / 2}};
  } else {
    const double hx = s.kind == ShapeKind::Square ? e[0] / 2.0 : e[0];
    const double hy = s.kind == ShapeKind::Square ? e[0] / 2.0 : e[1];
    local = {{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}};
  }
  const double t = s.rotation_deg * std::numbers::pi / 180.0;
  std::vector<std::pair<double, double>> out;
  for (auto [x, y] : local) {
    const double rx = x * std::cos(t) - y * std::sin(t);
    const double ry = x * std::sin(t) + y * std::cos(t);
    out.emplace_back(s.center.x + rx, s.center.y - ry);
  }
  return out;
}

// Same-side-of-every-edge test, tolerant of points on an edge.
bool inside_polygon(const std::vector<std::pair<double, double>>& poly, double x, double y) {
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    auto [ax, ay] = poly[i];
    auto [bx, by] = poly[(i + 1) % poly.size()];
    const double cross = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
    if (cross > 1e-6) ++pos;
    if (cross < -1e-6) ++neg;
  }
  return pos == 0 || neg == 0;
}

}  // namespace

TEST_CASE("palette") {
  CHECK(color_value(ColorName::Red) == Rgb{255, 0, 0});
  CHECK(color_value(ColorName::Blue) == Rgb{0, 0, 255});
  std::set<std::tuple<int, int, int>> distinct;
  for (ColorName c : kAllColors) {
    const Rgb v = color_value(c);
    CHECK_FALSE(v == kWhite);
    distinct.insert({v.r, v.g, v.b});
  }
  CHECK(distinct.size() == kAllColors.size());
}

TEST_CASE("empty scene renders all white") {
  const SceneConfig scene(Canvas{}, {});
  const RgbImage img = rasterize(scene);
  CHECK(img.width() == 224);
  CHECK(img.height() == 224);
  CHECK(count_color(img, kWhite) == 224u * 224u);
}

TEST_CASE("circle pixels are exactly the lattice points within the radius") {
  const auto c = make(ShapeKind::Circle, {100, 100}, {10, 0});
  const RgbImage img = rasterize(SceneConfig(Canvas{}, {c}));
  std::size_t expected = 0;
  for (int y = 0; y < 224; ++y) {
    for (int x = 0; x < 224; ++x) {
      const int dx = x - 100, dy = y - 100;
      const bool in = dx * dx + dy * dy <= 100;
      expected += in;
      CHECK((img.at(x, y) == color_value(ColorName::Red)) == in);
    }
  }
  CHECK(expected == 317);  // Gauss circle count N(10)
}

TEST_CASE("shape_contains agrees with a point-in-polygon oracle") {
  for (ShapeKind kind : {ShapeKind::Square, ShapeKind::Rectangle, ShapeKind::Triangle}) {
    for (int rot : {0, 15, 30, 45, 72}) {
      const auto s = make(kind, {112, 112}, {33, 18}, rot);
      const auto poly = polygon(s);
      int disagreements = 0;
      for (int y = 60; y < 165; ++y) {
        for (int x = 60; x < 165; ++x) {
          disagreements += shape_contains(s, x, y) != inside_polygon(poly, x, y);
        }
      }
      CAPTURE(to_string(kind));
      CAPTURE(rot);
      CHECK(disagreements == 0);
    }
  }
}

TEST_CASE("ellipse containment matches the quadratic form") {
  const auto s = make(ShapeKind::Ellipse, {112, 112}, {30, 12}, 30);
  const double t = 30 * std::numbers::pi / 180.0;
  for (int y = 70; y < 155; ++y) {
    for (int x = 70; x < 155; ++x) {
      const double dx = x - 112.0, dy = 112.0 - y;
      const double u = (dx * std::cos(t) + dy * std::sin(t)) / 30.0;
      const double v = (-dx * std::sin(t) + dy * std::cos(t)) / 12.0;
      const double q = u * u + v * v;
      if (std::abs(q - 1.0) < 1e-6) continue;
      CHECK(shape_contains(s, x, y) == (q < 1.0));
    }
  }
}

TEST_CASE("every filled pixel lies inside the bounding box") {
  for (ShapeKind kind : kAllShapeKinds) {
    for (int rot : {0, 15, 45, 72}) {
      const auto s = make(kind, {112, 112}, {34, 21}, kind == ShapeKind::Circle ? 0 : rot);
      const AABB box = bounding_box(s);
      const RgbImage img = rasterize(SceneConfig(Canvas{}, {s}));
      for (int y = 0; y < 224; ++y) {
        for (int x = 0; x < 224; ++x) {
          if (img.at(x, y) == kWhite) continue;
          CHECK(x >= box.min_x);
          CHECK(x <= box.max_x);
          CHECK(y >= box.min_y);
          CHECK(y <= box.max_y);
        }
      }
    }
  }
}

TEST_CASE("rotated fills stay within 2% of the exact area") {
  const double pi = std::numbers::pi;
  const std::vector<std::pair<ShapeKind, double>> cases = {
      {ShapeKind::Square, 40.0 * 40.0},
      {ShapeKind::Rectangle, 80.0 * 50.0},
      {ShapeKind::Ellipse, pi * 40.0 * 25.0},
      {ShapeKind::Triangle, 3.0 * std::sqrt(3.0) / 4.0 * 40.0 * 40.0}};
  for (auto [kind, area] : cases) {
    for (int rot : {15, 30, 45, 72}) {
      const auto s = make(kind, {112, 112}, {40, 25}, rot);
      const double filled =
          double(count_color(rasterize(SceneConfig(Canvas{}, {s})), color_value(s.color)));
      CAPTURE(to_string(kind));
      CAPTURE(rot);
      CHECK(std::abs(filled - area) / area <= 0.02);
    }
  }
}

TEST_CASE("later shapes paint over earlier ones") {
  const auto under = make(ShapeKind::Square, {100, 100}, {40, 0}, 0, ColorName::Blue);
  const auto over = make(ShapeKind::Circle, {100, 100}, {10, 0}, 0, ColorName::Yellow);
  const RgbImage a = rasterize(SceneConfig(Canvas{}, {under, over}));
  CHECK(a.at(100, 100) == color_value(ColorName::Yellow));
  CHECK(a.at(85, 85) == color_value(ColorName::Blue));
  const RgbImage b = rasterize(SceneConfig(Canvas{}, {over, under}));
  CHECK(b.at(100, 100) == color_value(ColorName::Blue));
  CHECK(count_color(b, color_value(ColorName::Yellow)) == 0);
}

TEST_CASE("png round trip is lossless and byte-stable") {
  const fs::path dir = fs::temp_directory_path() / "shapebench_render_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  SplitSpec spec = builtin_split_spec("od_composition");
  spec.n_samples = 5;
  const auto scenes = generate_split(spec, GenerationConfig{}, {});
  for (const auto& g : scenes) {
    const RgbImage img = rasterize(g.scene);
    const fs::path p1 = dir / (g.id + "_a.png");
    const fs::path p2 = dir / (g.id + "_b.png");
    write_png(img, p1);
    write_png(rasterize(g.scene), p2);
    CHECK(read_png(p1) == img);
    CHECK(md5_file_hex(p1) == md5_file_hex(p2));
  }
  fs::remove_all(dir);
}

TEST_CASE("png i/o failures") {
  const RgbImage img(4, 4);
  const fs::path missing = fs::temp_directory_path() / "shapebench_no_such_dir" / "x.png";
  fs::remove_all(missing.parent_path());
  CHECK_THROWS_AS(write_png(img, missing), ImageIoError);
  CHECK_FALSE(fs::exists(missing.parent_path()));

  const fs::path junk = fs::temp_directory_path() / "shapebench_junk.png";
  {
    std::ofstream f(junk, std::ios::binary);
    f << "definitely not a png";
  }
  CHECK_THROWS_AS(read_png(junk), ImageIoError);
  fs::remove(junk);
  CHECK_THROWS_AS(read_png(junk), ImageIoError);
}
