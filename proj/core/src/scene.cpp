#include "shapebench/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "shapebench/md5.hpp"

namespace shapebench {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view token,
                               const std::array<Enum, N>& all) {
  for (Enum e : all) {
    if (iequals(token, to_string(e))) return e;
  }
  return std::nullopt;
}

struct Vec2 {
  double x;
  double y;
};

// Outline vertices in the shape's local y-up frame, before rotation.
std::vector<Vec2> local_vertices(const ShapeInstance& s) {
  const auto& e = s.size.extents;
  switch (s.kind) {
    case ShapeKind::Rectangle: {
      const double w = e[0], h = e[1];
      return {{-w, -h}, {w, -h}, {w, h}, {-w, h}};
    }
    case ShapeKind::Square: {
      const double h = e[0] / 2.0;
      return {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
    }
    case ShapeKind::Triangle: {
      const double r = e[0];
      std::vector<Vec2> v;
      for (double deg : {90.0, 210.0, 330.0}) {
        const double a = deg * std::numbers::pi / 180.0;
        v.push_back({r * std::cos(a), r * std::sin(a)});
      }
      return v;
    }
    case ShapeKind::Circle:
    case ShapeKind::Ellipse:
      break;
  }
  return {};
}

// Half extents of the rotated outline along image x and y.
void rotated_half_extents(const ShapeInstance& s, double& lo_x, double& hi_x,
                          double& lo_y, double& hi_y) {
  const double theta = s.rotation_deg * std::numbers::pi / 180.0;
  const double c = std::cos(theta), sn = std::sin(theta);
  const auto& e = s.size.extents;
  if (s.kind == ShapeKind::Circle) {
    lo_x = lo_y = -e[0];
    hi_x = hi_y = e[0];
    return;
  }
  if (s.kind == ShapeKind::Ellipse) {
    const double a = e[0], b = e[1];
    const double ex = std::sqrt(a * a * c * c + b * b * sn * sn);
    const double ey = std::sqrt(a * a * sn * sn + b * b * c * c);
    lo_x = -ex;
    hi_x = ex;
    lo_y = -ey;
    hi_y = ey;
    return;
  }
  lo_x = lo_y = std::numeric_limits<double>::infinity();
  hi_x = hi_y = -std::numeric_limits<double>::infinity();
  for (const Vec2& v : local_vertices(s)) {
    const double rx = v.x * c - v.y * sn;
    const double ry = v.x * sn + v.y * c;
    // image y grows downward
    lo_x = std::min(lo_x, rx);
    hi_x = std::max(hi_x, rx);
    lo_y = std::min(lo_y, -ry);
    hi_y = std::max(hi_y, -ry);
  }
}

constexpr double kRoundingSlack = 1e-9;

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Rectangle: return "rectangle";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::Triangle: return "triangle";
    case ShapeKind::Square: return "square";
  }
  return "?";
}

std::string_view to_string(ColorName color) {
  switch (color) {
    case ColorName::Orange: return "orange";
    case ColorName::Red: return "red";
    case ColorName::Blue: return "blue";
    case ColorName::Green: return "green";
    case ColorName::Yellow: return "yellow";
    case ColorName::Magenta: return "magenta";
  }
  return "?";
}

std::string_view to_string(QuadrantLabel label) {
  switch (label) {
    case QuadrantLabel::First: return "first";
    case QuadrantLabel::Second: return "second";
    case QuadrantLabel::Third: return "third";
    case QuadrantLabel::Fourth: return "fourth";
  }
  return "?";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view token) {
  return parse_enum(token, kAllShapeKinds);
}
std::optional<ColorName> parse_color(std::string_view token) {
  return parse_enum(token, kAllColors);
}
std::optional<QuadrantLabel> parse_quadrant(std::string_view token) {
  return parse_enum(token, kAllQuadrants);
}

int extent_count(ShapeKind kind) {
  return (kind == ShapeKind::Rectangle || kind == ShapeKind::Ellipse) ? 2 : 1;
}

AABB bounding_box(const ShapeInstance& shape) {
  double lo_x, hi_x, lo_y, hi_y;
  rotated_half_extents(shape, lo_x, hi_x, lo_y, hi_y);
  const double cx = shape.center.x, cy = shape.center.y;
  return AABB{
      static_cast<int>(std::floor(cx + lo_x + kRoundingSlack)),
      static_cast<int>(std::floor(cy + lo_y + kRoundingSlack)),
      static_cast<int>(std::ceil(cx + hi_x - kRoundingSlack)),
      static_cast<int>(std::ceil(cy + hi_y - kRoundingSlack)),
  };
}

bool relaxed_overlap(const AABB& a, const AABB& b, double relax_fraction) {
  if (!(relax_fraction >= 0.0 && relax_fraction < 0.5)) {
    throw std::invalid_argument("relax_fraction must lie in [0, 0.5)");
  }
  auto shrink = [relax_fraction](int lo, int hi, double& out_lo,
                                 double& out_hi) {
    const double margin = relax_fraction * (hi - lo);
    out_lo = lo + margin;
    out_hi = hi - margin;
  };
  double ax0, ax1, ay0, ay1, bx0, bx1, by0, by1;
  shrink(a.min_x, a.max_x, ax0, ax1);
  shrink(a.min_y, a.max_y, ay0, ay1);
  shrink(b.min_x, b.max_x, bx0, bx1);
  shrink(b.min_y, b.max_y, by0, by1);
  const double ix = std::min(ax1, bx1) - std::max(ax0, bx0);
  const double iy = std::min(ay1, by1) - std::max(ay0, by0);
  return ix > 0.0 && iy > 0.0;
}

namespace {

std::vector<std::vector<bool>> overlap_matrix(
    std::span<const ShapeInstance> shapes, double relax_fraction) {
  std::vector<AABB> boxes;
  boxes.reserve(shapes.size());
  for (const auto& s : shapes) boxes.push_back(bounding_box(s));
  const std::size_t n = shapes.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (relaxed_overlap(boxes[i], boxes[j], relax_fraction)) {
        adj[i][j] = adj[j][i] = true;
      }
    }
  }
  return adj;
}

}  // namespace

std::vector<bool> occlusion_flags(std::span<const ShapeInstance> shapes,
                                  double relax_fraction) {
  const auto adj = overlap_matrix(shapes, relax_fraction);
  std::vector<bool> flags(shapes.size(), false);
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    flags[i] = std::find(adj[i].begin(), adj[i].end(), true) != adj[i].end();
  }
  return flags;
}

std::vector<int> overlap_component_sizes(std::span<const ShapeInstance> shapes,
                                         double relax_fraction) {
  const auto adj = overlap_matrix(shapes, relax_fraction);
  const std::size_t n = shapes.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adj[i][j]) {
        const int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<int> sizes;
  std::vector<int> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const int root = find(static_cast<int>(i));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(sizes.size());
      sizes.push_back(0);
    }
    ++sizes[slot[root]];
  }
  return sizes;
}

QuadrantLabel quadrant(PixelPoint center, const Canvas& canvas) {
  const PixelPoint mid = canvas.midpoint();
  const bool right = center.x > mid.x;
  const bool top = center.y < mid.y;
  if (top) return right ? QuadrantLabel::First : QuadrantLabel::Second;
  return right ? QuadrantLabel::Fourth : QuadrantLabel::Third;
}

std::string relative_positions(std::span<const ShapeInstance> shapes,
                               std::size_t index) {
  if (index >= shapes.size()) {
    throw std::out_of_range("relative_positions: shape index out of range");
  }
  const ShapeInstance& self = shapes[index];
  std::string out;
  for (std::size_t j = 0; j < shapes.size(); ++j) {
    if (j == index) continue;
    const ShapeInstance& other = shapes[j];
    if (!out.empty()) out += "; ";
    if (self.center.x < other.center.x) {
      out += "left of";
    } else if (self.center.x > other.center.x) {
      out += "right of";
    } else {
      out += "aligned with";
    }
    out += " and ";
    if (self.center.y < other.center.y) {
      out += "above";
    } else if (self.center.y > other.center.y) {
      out += "below";
    } else {
      out += "level with";
    }
    out += " the ";
    out += to_string(other.color);
    out += ' ';
    out += to_string(other.kind);
  }
  return out.empty() ? std::string("none") : out;
}

SceneConfig::SceneConfig(Canvas canvas, std::vector<ShapeInstance> shapes,
                         double relax_fraction)
    : canvas_(canvas),
      shapes_(std::move(shapes)),
      relax_fraction_(relax_fraction) {
  occluded_ = occlusion_flags(shapes_, relax_fraction_);
  quadrant_.reserve(shapes_.size());
  relative_position_.reserve(shapes_.size());
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    quadrant_.push_back(quadrant(shapes_[i].center, canvas_));
    relative_position_.push_back(relative_positions(shapes_, i));
  }
}

std::string canonical_string(const SceneConfig& scene) {
  std::string out;
  for (std::size_t i = 0; i < scene.shapes().size(); ++i) {
    const ShapeInstance& s = scene.shapes()[i];
    if (i > 0) out += ';';
    out += to_string(s.kind);
    out += '|';
    out += to_string(s.color);
    out += '|';
    out += std::to_string(s.center.x);
    out += ',';
    out += std::to_string(s.center.y);
    out += '|';
    for (int k = 0; k < extent_count(s.kind); ++k) {
      if (k > 0) out += ',';
      out += std::to_string(s.size.extents[k]);
    }
    out += '|';
    out += std::to_string(s.rotation_deg);
  }
  return out;
}

std::string canonical_hash(const SceneConfig& scene) {
  return md5_hex(canonical_string(scene));
}

}  // namespace shapebench
