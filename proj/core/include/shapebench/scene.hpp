#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shapebench {

enum class ShapeKind : std::uint8_t { Circle, Rectangle, Ellipse, Triangle, Square };
enum class ColorName : std::uint8_t { Orange, Red, Blue, Green, Yellow, Magenta };

/// Quadrants of the canvas as seen with y pointing up: first is top-right,
/// then counter-clockwise.
enum class QuadrantLabel : std::uint8_t { First, Second, Third, Fourth };

inline constexpr std::array<ShapeKind, 5> kAllShapeKinds = {
    ShapeKind::Circle, ShapeKind::Rectangle, ShapeKind::Ellipse,
    ShapeKind::Triangle, ShapeKind::Square};
inline constexpr std::array<ColorName, 6> kAllColors = {
    ColorName::Orange, ColorName::Red,    ColorName::Blue,
    ColorName::Green,  ColorName::Yellow, ColorName::Magenta};
inline constexpr std::array<QuadrantLabel, 4> kAllQuadrants = {
    QuadrantLabel::First, QuadrantLabel::Second, QuadrantLabel::Third,
    QuadrantLabel::Fourth};

inline constexpr double kDefaultRelaxFraction = 0.05;

// Lowercase names as they appear in serialized text.
std::string_view to_string(ShapeKind kind);
std::string_view to_string(ColorName color);
std::string_view to_string(QuadrantLabel label);

// Case-insensitive; anything outside the vocabulary yields nullopt.
std::optional<ShapeKind> parse_shape_kind(std::string_view token);
std::optional<ColorName> parse_color(std::string_view token);
std::optional<QuadrantLabel> parse_quadrant(std::string_view token);

struct PixelPoint {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const PixelPoint&, const PixelPoint&) = default;
};

struct Canvas {
  int width = 224;
  int height = 224;

  PixelPoint midpoint() const { return {width / 2, height / 2}; }
  bool contains(PixelPoint p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }
  friend bool operator==(const Canvas&, const Canvas&) = default;
};

struct Rational {
  int num = 1;
  int den = 1;
  double value() const { return static_cast<double>(num) / den; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Per-kind extents in pixels, already multiplied by `scale`.
///   circle:              {radius}
///   square:              {side}
///   triangle:            {circumradius} (equilateral, apex up at 0 degrees)
///   rectangle, ellipse:  {half_width, half_height}
struct SizeSpec {
  std::array<int, 2> extents{};
  Rational scale{};

  friend bool operator==(const SizeSpec&, const SizeSpec&) = default;
};

/// Number of meaningful entries in SizeSpec::extents for a kind.
int extent_count(ShapeKind kind);

struct ShapeInstance {
  ShapeKind kind = ShapeKind::Circle;
  ColorName color = ColorName::Red;
  PixelPoint center;
  SizeSpec size;
  int rotation_deg = 0;  // counter-clockwise, y-up view

  friend bool operator==(const ShapeInstance&, const ShapeInstance&) = default;
};

struct AABB {
  int min_x = 0;
  int min_y = 0;
  int max_x = 0;
  int max_y = 0;

  int width() const { return max_x - min_x; }
  int height() const { return max_y - min_y; }
  friend bool operator==(const AABB&, const AABB&) = default;
};

/// Tight box of the rotated outline, rounded outward to whole pixels.
AABB bounding_box(const ShapeInstance& shape);

/// True iff the boxes still intersect with positive area after each is
/// shrunk toward its own center by `relax_fraction` of its size per side.
bool relaxed_overlap(const AABB& a, const AABB& b, double relax_fraction);

std::vector<bool> occlusion_flags(std::span<const ShapeInstance> shapes,
                                  double relax_fraction);

/// Sizes of the connected components of the relaxed-overlap graph, one entry
/// per component, in order of each component's lowest shape index.
std::vector<int> overlap_component_sizes(std::span<const ShapeInstance> shapes,
                                         double relax_fraction);

QuadrantLabel quadrant(PixelPoint center, const Canvas& canvas);

/// "<left of|right of|aligned with> and <above|below|level with> the <color>
/// <kind>" for every other shape, joined by "; ". "none" when alone.
std::string relative_positions(std::span<const ShapeInstance> shapes,
                               std::size_t index);

/// Ground truth for one image. Derived attributes are computed from the shape
/// list on construction and cannot be set independently.
class SceneConfig {
 public:
  SceneConfig() = default;
  SceneConfig(Canvas canvas, std::vector<ShapeInstance> shapes,
              double relax_fraction = kDefaultRelaxFraction);

  const Canvas& canvas() const { return canvas_; }
  const std::vector<ShapeInstance>& shapes() const { return shapes_; }
  std::size_t size() const { return shapes_.size(); }
  double relax_fraction() const { return relax_fraction_; }

  const std::vector<bool>& occluded() const { return occluded_; }
  const std::vector<QuadrantLabel>& quadrants() const { return quadrant_; }
  const std::vector<std::string>& relative_position() const {
    return relative_position_;
  }

 private:
  Canvas canvas_;
  std::vector<ShapeInstance> shapes_;
  double relax_fraction_ = kDefaultRelaxFraction;
  std::vector<bool> occluded_;
  std::vector<QuadrantLabel> quadrant_;
  std::vector<std::string> relative_position_;
};

/// `kind|color|cx,cy|extents|rot` per shape, joined by ';'.
std::string canonical_string(const SceneConfig& scene);

/// Lowercase hex MD5 of canonical_string(scene).
std::string canonical_hash(const SceneConfig& scene);

}  // namespace shapebench
