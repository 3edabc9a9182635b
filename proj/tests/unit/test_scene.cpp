#include <doctest.h>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "oracles.hpp"
#include "shapebench/genset.hpp"
#include "shapebench/md5.hpp"
#include "shapebench/scene.hpp"

using namespace shapebench;

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

}  // namespace

TEST_CASE("vocabularies have the expected sizes and names") {
  CHECK(kAllShapeKinds.size() == 5);
  CHECK(kAllColors.size() == 6);
  CHECK(kAllQuadrants.size() == 4);
  CHECK(to_string(ShapeKind::Ellipse) == "ellipse");
  CHECK(parse_color("MAGENTA") == ColorName::Magenta);
  CHECK_FALSE(parse_color("blurple").has_value());
  CHECK_FALSE(parse_shape_kind("hexagon").has_value());
}

TEST_CASE("bounding_box") {
  SUBCASE("circle") {
    const AABB b = bounding_box(make(ShapeKind::Circle, {100, 100}, {20, 0}));
    CHECK(b == AABB{80, 80, 120, 120});
  }
  SUBCASE("axis-aligned square") {
    const AABB b = bounding_box(make(ShapeKind::Square, {112, 112}, {40, 0}));
    CHECK(b == AABB{92, 92, 132, 132});
  }
  SUBCASE("square at 45 degrees") {
    const auto s = make(ShapeKind::Square, {112, 112}, {40, 0}, 45);
    // Corner oracle: half-extent 20*sqrt(2) = 28.28, rounded outward.
    const auto o = oracle::outline_box(s);
    CHECK(o.min_x == 83);
    CHECK(o.max_x == 141);
    CHECK(bounding_box(s) == AABB{83, 83, 141, 141});
  }
  SUBCASE("triangle apex is up at 0 degrees") {
    const AABB b = bounding_box(make(ShapeKind::Triangle, {100, 100}, {20, 0}));
    CHECK(b.min_y == 80);   // apex at y - R
    CHECK(b.max_y == 110);  // base at y + R/2
    CHECK(b.min_x == 82);   // half-base R*sqrt(3)/2 = 17.32
    CHECK(b.max_x == 118);
  }
}

TEST_CASE("bounding_box agrees with the matrix-form oracle for every kind and angle") {
  for (ShapeKind kind : kAllShapeKinds) {
    for (int rot : {0, 15, 30, 45, 72}) {
      const auto s = make(kind, {112, 112}, {31, 17}, kind == ShapeKind::Circle ? 0 : rot);
      const AABB b = bounding_box(s);
      const auto o = oracle::outline_box(s);
      CAPTURE(to_string(kind));
      CAPTURE(rot);
      CHECK(b == AABB{o.min_x, o.min_y, o.max_x, o.max_y});
    }
  }
}

TEST_CASE("bounding_box at rotation 0 is the analytic unrotated box") {
  const PixelPoint c{100, 90};
  CHECK(bounding_box(make(ShapeKind::Rectangle, c, {30, 12})) == AABB{70, 78, 130, 102});
  CHECK(bounding_box(make(ShapeKind::Ellipse, c, {30, 12})) == AABB{70, 78, 130, 102});
  CHECK(bounding_box(make(ShapeKind::Square, c, {24, 0})) == AABB{88, 78, 112, 102});
  CHECK(bounding_box(make(ShapeKind::Circle, c, {9, 0})) == AABB{91, 81, 109, 99});
}

TEST_CASE("relaxed_overlap") {
  CHECK_FALSE(relaxed_overlap({0, 0, 10, 10}, {50, 50, 60, 60}, 0.05));
  CHECK(relaxed_overlap({0, 0, 10, 10}, {0, 0, 10, 10}, 0.05));

  // One-pixel corner overlap disappears once both boxes are shrunk.
  const AABB a{0, 0, 10, 10}, b{9, 9, 20, 20};
  CHECK(oracle::relaxed_intersection_area({0, 0, 10, 10}, {9, 9, 20, 20}, 0.0) == 1.0);
  CHECK(oracle::relaxed_intersection_area({0, 0, 10, 10}, {9, 9, 20, 20}, 0.05) == 0.0);
  CHECK(relaxed_overlap(a, b, 0.0));
  CHECK_FALSE(relaxed_overlap(a, b, 0.05));

  CHECK_THROWS_AS(relaxed_overlap(a, b, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(relaxed_overlap(a, b, -0.1), std::invalid_argument);
}

TEST_CASE("occlusion_flags") {
  const auto lone = make(ShapeKind::Circle, {50, 50}, {10, 0});
  CHECK(occlusion_flags(std::vector{lone}, 0.05) == std::vector<bool>{false});

  const auto inner = make(ShapeKind::Square, {50, 50}, {10, 0});
  CHECK(occlusion_flags(std::vector{lone, inner}, 0.05) == std::vector<bool>{true, true});

  const std::vector<ShapeInstance> three = {
      make(ShapeKind::Circle, {40, 40}, {20, 0}),
      make(ShapeKind::Circle, {60, 50}, {20, 0}),
      make(ShapeKind::Circle, {180, 180}, {20, 0})};
  // Pairwise oracle: only (0, 1) intersect after relaxation.
  const auto b0 = oracle::outline_box(three[0]), b1 = oracle::outline_box(three[1]),
             b2 = oracle::outline_box(three[2]);
  REQUIRE(oracle::relaxed_intersection_area(b0, b1, 0.05) > 0);
  REQUIRE(oracle::relaxed_intersection_area(b0, b2, 0.05) == 0);
  REQUIRE(oracle::relaxed_intersection_area(b1, b2, 0.05) == 0);
  CHECK(occlusion_flags(three, 0.05) == std::vector<bool>{true, true, false});
  CHECK(overlap_component_sizes(three, 0.05) == std::vector<int>{2, 1});
}

TEST_CASE("occlusion flags follow a permutation of the shapes") {
  const GenerationConfig gen;
  const SplitSpec spec = builtin_split_spec("od_spatial");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const SceneConfig scene = sample_scene(rng, spec, gen);
    std::vector<std::size_t> perm(scene.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rng shuffle(seed + 1000);
    for (std::size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(shuffle.uniform_int(0, i - 1))]);
    }
    std::vector<ShapeInstance> permuted;
    for (std::size_t p : perm) permuted.push_back(scene.shapes()[p]);
    const auto flags = occlusion_flags(permuted, gen.relax_fraction);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      CHECK(flags[i] == scene.occluded()[perm[i]]);
    }
  }
}

TEST_CASE("quadrant") {
  const Canvas canvas;
  CHECK(quadrant({56, 56}, canvas) == QuadrantLabel::Second);
  CHECK(quadrant({168, 56}, canvas) == QuadrantLabel::First);
  CHECK(quadrant({112, 112}, canvas) == QuadrantLabel::Third);
  CHECK(quadrant({168, 168}, canvas) == QuadrantLabel::Fourth);
  CHECK(quadrant({56, 168}, canvas) == QuadrantLabel::Third);
}

TEST_CASE("quadrant partitions the canvas into four blocks") {
  const Canvas canvas;
  std::map<QuadrantLabel, int> counts;
  for (int y = 0; y < canvas.height; ++y) {
    for (int x = 0; x < canvas.width; ++x) ++counts[quadrant({x, y}, canvas)];
  }
  // x <= 112 holds 113 columns, x > 112 holds 111; y < 112 holds 112 rows.
  CHECK(counts[QuadrantLabel::First] == 111 * 112);
  CHECK(counts[QuadrantLabel::Second] == 113 * 112);
  CHECK(counts[QuadrantLabel::Third] == 113 * 112);
  CHECK(counts[QuadrantLabel::Fourth] == 111 * 112);
}

TEST_CASE("relative_positions") {
  const auto self = make(ShapeKind::Square, {50, 50}, {20, 0}, 0, ColorName::Blue);
  const auto other = make(ShapeKind::Circle, {150, 150}, {20, 0}, 0, ColorName::Red);
  CHECK(relative_positions(std::vector{self}, 0) == "none");
  CHECK(relative_positions(std::vector{self, other}, 0) ==
        "left of and above the red circle");
  CHECK(relative_positions(std::vector{self, other}, 1) ==
        "right of and below the blue square");

  const auto below = make(ShapeKind::Triangle, {50, 90}, {20, 0}, 0, ColorName::Green);
  CHECK(relative_positions(std::vector{self, below}, 0) ==
        "aligned with and above the green triangle");
  const auto level = make(ShapeKind::Ellipse, {10, 50}, {20, 10}, 0, ColorName::Yellow);
  CHECK(relative_positions(std::vector{self, below, level}, 0) ==
        "aligned with and above the green triangle; "
        "right of and level with the yellow ellipse");
  CHECK_THROWS_AS(relative_positions(std::vector{self}, 1), std::out_of_range);
}

TEST_CASE("md5 reference vectors") {
  CHECK(md5_hex("") == "d41d8cd98f00b204e9800998ecf8427e");
  CHECK(md5_hex("a") == "0cc175b9c0f1b6a831c399e269772661");
  CHECK(md5_hex("abc") == "900150983cd24fb0d6963f7d28e17f72");
  CHECK(md5_hex("message digest") == "f96b697d7cb7938d525a2f31aaf161d0");
}

TEST_CASE("canonical serialization and hash") {
  const std::vector<ShapeInstance> shapes = {
      make(ShapeKind::Circle, {56, 56}, {20, 0}),
      make(ShapeKind::Rectangle, {150, 140}, {30, 15}, 15, ColorName::Blue)};
  const SceneConfig scene(Canvas{}, shapes);
  CHECK(canonical_string(scene) == "circle|red|56,56|20|0;rectangle|blue|150,140|30,15|15");
  CHECK(canonical_hash(scene) == md5_hex(canonical_string(scene)));
  CHECK(canonical_hash(scene) == canonical_hash(SceneConfig(Canvas{}, shapes)));

  auto rotated = shapes;
  rotated[1].rotation_deg = 30;
  const SceneConfig other(Canvas{}, rotated);
  CHECK(canonical_string(other) != canonical_string(scene));
  CHECK(canonical_hash(other) != canonical_hash(scene));
}

TEST_CASE("canonical_hash is collision-free over 10k generated scenes") {
  SplitSpec spec = builtin_split_spec("train");
  spec.n_samples = 10000;
  const GenerationConfig gen;
  std::unordered_set<std::string> strings, digests;
  for (std::size_t i = 0; i < spec.n_samples; ++i) {
    Rng rng(sample_seed(99, "hash-check", i));
    const SceneConfig scene = sample_scene(rng, spec, gen);
    strings.insert(canonical_string(scene));
    digests.insert(canonical_hash(scene));
  }
  CHECK(digests.size() == strings.size());
}

TEST_CASE("scene derived attributes are recomputed from shapes") {
  const std::vector<ShapeInstance> shapes = {
      make(ShapeKind::Circle, {56, 56}, {20, 0}),
      make(ShapeKind::Square, {60, 60}, {30, 0}, 15, ColorName::Green)};
  const SceneConfig scene(Canvas{}, shapes);
  REQUIRE(scene.size() == 2);
  CHECK(scene.occluded() == std::vector<bool>{true, true});
  CHECK(scene.quadrants() ==
        std::vector<QuadrantLabel>{QuadrantLabel::Second, QuadrantLabel::Second});
  CHECK(scene.relative_position()[0] == "left of and above the green square");
}
