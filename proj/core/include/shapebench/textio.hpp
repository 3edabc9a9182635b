#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shapebench/scene.hpp"

namespace shapebench {

enum class OutputFormat { Sentence, Tuple };

std::string_view to_string(OutputFormat fmt);
std::optional<OutputFormat> parse_output_format(std::string_view name);

/// Attribute record for one shape. Each std::nullopt field is the NA
/// placeholder; use attribute_equal() rather than == to compare fields, since
/// NA must never match anything, NA included.
struct ParsedShape {
  std::optional<ShapeKind> shape;
  std::optional<ColorName> color;
  std::optional<QuadrantLabel> quadrant;
  std::optional<PixelPoint> center;
  std::optional<std::string> relative_position;  // normalized
  std::optional<int> rotation_deg;
  std::optional<bool> occluded;
  std::string raw_segment;
  bool malformed = false;

  bool complete() const {
    return shape && color && quadrant && center && relative_position &&
           rotation_deg && occluded;
  }
};

template <typename T>
bool attribute_equal(const std::optional<T>& a, const std::optional<T>& b) {
  return a.has_value() && b.has_value() && *a == *b;
}

/// Ground-truth attributes of shape `index`.
ParsedShape attributes_of(const SceneConfig& scene, std::size_t index);

/// One shape rendered through the Sentence or Tuple template. Every field
/// of `attrs` must be concrete.
std::string serialize_shape(const ParsedShape& attrs, OutputFormat fmt);

/// Per-shape segments of serialize_scene, in scene order.
std::vector<std::string> serialize_segments(const SceneConfig& scene,
                                            OutputFormat fmt);

/// Segments joined by a single space.
std::string serialize_scene(const SceneConfig& scene, OutputFormat fmt);

struct Segment {
  std::string text;
  bool malformed = false;
};

/// Sentence: cut after each '.' followed by whitespace or end of text.
/// Tuple: top-level balanced parenthesis groups. Leftover text becomes a
/// final segment marked malformed.
std::vector<Segment> split_segments(std::string_view text, OutputFormat fmt);

/// Case-insensitive pattern extraction; unmatched or out-of-vocabulary
/// attributes come back as NA and set `malformed`.
ParsedShape parse_shape(std::string_view segment, OutputFormat fmt);

/// split_segments followed by parse_shape on every segment.
std::vector<ParsedShape> parse_prediction(std::string_view text,
                                          OutputFormat fmt);

/// Lowercase, whitespace runs collapsed to one space, trimmed.
std::string normalize(std::string_view text);

}  // namespace shapebench
