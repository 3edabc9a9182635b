#include "shapebench/textio.hpp"

#include <cctype>
#include <charconv>
#include <regex>
#include <stdexcept>

namespace shapebench {
namespace {

// libstdc++'s regex matcher recurses per character; segments longer than
// this are cut before extraction.
constexpr std::size_t kMaxSegmentForRegex = 4096;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

constexpr auto kFlags = std::regex::ECMAScript | std::regex::icase;

struct SentencePatterns {
  std::regex lead{R"(^\s*an?\s+(\S+)\s+(\S+))", kFlags};
  std::regex quadrant{R"(located\s+in\s+the\s+(\S+)\s+quadrant)", kFlags};
  std::regex center{R"(coordinates\s*\(\s*([-+]?\d+)\s*,\s*([-+]?\d+)\s*\))",
                    kFlags};
  std::regex relative{R"(described\s+as\s+(.*?)\s*,\s*rotated\b)", kFlags};
  std::regex rotation{R"(rotated\s+by\s+([-+]?\d+)\s*degree)", kFlags};
  std::regex occlusion{R"(\bis\s+(not\s+)?occluded\b)", kFlags};
};

struct TuplePatterns {
  std::regex kind{R"(^\s*\(\s*([^,()]*?)\s*,)", kFlags};
  std::regex quadrant{R"(\bquadrant\s*=\s*([^,()\s]+))", kFlags};
  std::regex center{
      R"(center_coordinates\s*=\s*\(\s*([-+]?\d+)\s*,\s*([-+]?\d+)\s*\))",
      kFlags};
  std::regex relative{R"(relative_position\s*=\s*(.*?)\s*,\s*rotation\s*=)",
                      kFlags};
  std::regex rotation{R"(\brotation\s*=\s*([-+]?\d+))", kFlags};
  std::regex occlusion{R"(\bocclusion\s*=\s*(yes|no)\b)", kFlags};
  std::regex color{R"(\bcolor\s*=\s*([^,()\s]+))", kFlags};
};

const SentencePatterns& sentence_patterns() {
  static const SentencePatterns p;
  return p;
}

const TuplePatterns& tuple_patterns() {
  static const TuplePatterns p;
  return p;
}

std::optional<std::string> capture(const std::string& text, const std::regex& re,
                                   int group = 1) {
  std::smatch m;
  if (!std::regex_search(text, m, re) || !m[group].matched) return std::nullopt;
  return m[group].str();
}

std::optional<PixelPoint> capture_point(const std::string& text,
                                        const std::regex& re) {
  std::smatch m;
  if (!std::regex_search(text, m, re)) return std::nullopt;
  auto x = to_int(m[1].str());
  auto y = to_int(m[2].str());
  if (!x || !y) return std::nullopt;
  return PixelPoint{*x, *y};
}

std::optional<std::string> relative_value(std::optional<std::string> raw) {
  if (!raw) return std::nullopt;
  std::string norm = normalize(*raw);
  if (norm.empty()) return std::nullopt;
  return norm;
}

template <typename T, typename Parser>
std::optional<T> token(const std::optional<std::string>& raw, Parser parse) {
  if (!raw) return std::nullopt;
  return parse(*raw);
}

ParsedShape parse_sentence(const std::string& s) {
  const auto& p = sentence_patterns();
  ParsedShape out;
  std::smatch m;
  if (std::regex_search(s, m, p.lead)) {
    out.color = parse_color(m[1].str());
    out.shape = parse_shape_kind(m[2].str());
  }
  out.quadrant = token<QuadrantLabel>(capture(s, p.quadrant), parse_quadrant);
  out.center = capture_point(s, p.center);
  out.relative_position = relative_value(capture(s, p.relative));
  out.rotation_deg = token<int>(capture(s, p.rotation), to_int);
  if (std::regex_search(s, m, p.occlusion)) out.occluded = !m[1].matched;
  return out;
}

ParsedShape parse_tuple(const std::string& s) {
  const auto& p = tuple_patterns();
  ParsedShape out;
  out.shape = token<ShapeKind>(capture(s, p.kind), parse_shape_kind);
  out.quadrant = token<QuadrantLabel>(capture(s, p.quadrant), parse_quadrant);
  out.center = capture_point(s, p.center);
  out.relative_position = relative_value(capture(s, p.relative));
  out.rotation_deg = token<int>(capture(s, p.rotation), to_int);
  if (auto occ = capture(s, p.occlusion)) {
    out.occluded = normalize(*occ) == "yes";
  }
  out.color = token<ColorName>(capture(s, p.color), parse_color);
  return out;
}

}  // namespace

std::string_view to_string(OutputFormat fmt) {
  return fmt == OutputFormat::Sentence ? "sentence" : "tuple";
}

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  const std::string n = normalize(name);
  if (n == "sentence") return OutputFormat::Sentence;
  if (n == "tuple") return OutputFormat::Tuple;
  return std::nullopt;
}

ParsedShape attributes_of(const SceneConfig& scene, std::size_t index) {
  const ShapeInstance& s = scene.shapes().at(index);
  ParsedShape a;
  a.shape = s.kind;
  a.color = s.color;
  a.quadrant = scene.quadrants()[index];
  a.center = s.center;
  a.relative_position = normalize(scene.relative_position()[index]);
  a.rotation_deg = s.rotation_deg;
  a.occluded = static_cast<bool>(scene.occluded()[index]);
  return a;
}

std::string serialize_shape(const ParsedShape& a, OutputFormat fmt) {
  if (!a.complete()) {
    throw std::invalid_argument("serialize_shape: attribute record has NA fields");
  }
  const std::string x = std::to_string(a.center->x);
  const std::string y = std::to_string(a.center->y);
  const std::string rot = std::to_string(*a.rotation_deg);
  std::string out;
  if (fmt == OutputFormat::Sentence) {
    out.append("A ").append(to_string(*a.color)).append(" ")
        .append(to_string(*a.shape)).append(" is located in the ")
        .append(to_string(*a.quadrant))
        .append(" quadrant, centred at coordinates (")
        .append(x).append(", ").append(y)
        .append("), with relative positions described as ")
        .append(*a.relative_position).append(", rotated by ").append(rot)
        .append(" degrees, and is ")
        .append(*a.occluded ? "occluded." : "not occluded.");
  } else {
    out.append("(").append(to_string(*a.shape))
        .append(", quadrant=").append(to_string(*a.quadrant))
        .append(", center_coordinates=(").append(x).append(", ").append(y)
        .append("), relative_position=").append(*a.relative_position)
        .append(", rotation=").append(rot)
        .append(", occlusion=").append(*a.occluded ? "Yes" : "No")
        .append(", color=").append(to_string(*a.color)).append(")");
  }
  return out;
}

std::vector<std::string> serialize_segments(const SceneConfig& scene,
                                            OutputFormat fmt) {
  std::vector<std::string> out;
  out.reserve(scene.size());
  for (std::size_t i = 0; i < scene.size(); ++i) {
    out.push_back(serialize_shape(attributes_of(scene, i), fmt));
  }
  return out;
}

std::string serialize_scene(const SceneConfig& scene, OutputFormat fmt) {
  std::string out;
  for (const auto& seg : serialize_segments(scene, fmt)) {
    if (!out.empty()) out += ' ';
    out += seg;
  }
  return out;
}

std::vector<Segment> split_segments(std::string_view text, OutputFormat fmt) {
  std::vector<Segment> out;
  auto emit = [&out](std::string_view piece, bool malformed) {
    piece = trim(piece);
    if (!piece.empty()) out.push_back({std::string(piece), malformed});
  };

  if (fmt == OutputFormat::Sentence) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '.') continue;
      if (i + 1 == text.size() || is_space(text[i + 1])) {
        emit(text.substr(start, i + 1 - start), false);
        start = i + 1;
      }
    }
    emit(text.substr(start), true);
    return out;
  }

  int depth = 0;
  std::size_t group_start = 0;
  std::size_t loose_start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') {
      if (depth == 0) {
        emit(text.substr(loose_start, i - loose_start), true);
        group_start = i;
      }
      ++depth;
    } else if (c == ')' && depth > 0) {
      if (--depth == 0) {
        emit(text.substr(group_start, i + 1 - group_start), false);
        loose_start = i + 1;
      }
    }
  }
  if (depth > 0) {
    emit(text.substr(group_start), true);
  } else {
    emit(text.substr(loose_start), true);
  }
  return out;
}

ParsedShape parse_shape(std::string_view segment, OutputFormat fmt) {
  const std::string text(segment.substr(0, kMaxSegmentForRegex));
  ParsedShape out =
      fmt == OutputFormat::Sentence ? parse_sentence(text) : parse_tuple(text);
  out.raw_segment = std::string(segment);
  out.malformed = !out.complete();
  return out;
}

std::vector<ParsedShape> parse_prediction(std::string_view text,
                                          OutputFormat fmt) {
  std::vector<ParsedShape> out;
  for (const Segment& seg : split_segments(text, fmt)) {
    ParsedShape p = parse_shape(seg.text, fmt);
    p.malformed = p.malformed || seg.malformed;
    out.push_back(std::move(p));
  }
  return out;
}

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace shapebench
