#include <doctest.h>

#include "shapebench/genset.hpp"
#include "shapebench/textio.hpp"

using namespace shapebench;

namespace {

ParsedShape red_circle() {
  ParsedShape a;
  a.shape = ShapeKind::Circle;
  a.color = ColorName::Red;
  a.quadrant = QuadrantLabel::Second;
  a.center = PixelPoint{56, 56};
  a.relative_position = "none";
  a.rotation_deg = 0;
  a.occluded = false;
  return a;
}

const char* kSentence =
    "A red circle is located in the second quadrant, centred at coordinates (56, 56), "
    "with relative positions described as none, rotated by 0 degrees, and is not occluded.";
const char* kTuple =
    "(circle, quadrant=second, center_coordinates=(56, 56), relative_position=none, "
    "rotation=0, occlusion=No, color=red)";

void check_same_attributes(const ParsedShape& a, const ParsedShape& b) {
  CHECK(a.shape == b.shape);
  CHECK(a.color == b.color);
  CHECK(a.quadrant == b.quadrant);
  CHECK(a.center == b.center);
  CHECK(a.relative_position == b.relative_position);
  CHECK(a.rotation_deg == b.rotation_deg);
  CHECK(a.occluded == b.occluded);
}

}  // namespace

TEST_CASE("templates") {
  CHECK(serialize_shape(red_circle(), OutputFormat::Sentence) == kSentence);
  CHECK(serialize_shape(red_circle(), OutputFormat::Tuple) == kTuple);

  auto a = red_circle();
  a.occluded = true;
  CHECK(serialize_shape(a, OutputFormat::Tuple).find("occlusion=Yes") != std::string::npos);
  CHECK(serialize_shape(a, OutputFormat::Sentence).ends_with("and is occluded."));

  a.color.reset();
  CHECK_THROWS_AS(serialize_shape(a, OutputFormat::Sentence), std::invalid_argument);
}

TEST_CASE("format names") {
  CHECK(parse_output_format("Tuple") == OutputFormat::Tuple);
  CHECK(parse_output_format("sentence") == OutputFormat::Sentence);
  CHECK_FALSE(parse_output_format("json").has_value());
  CHECK(to_string(OutputFormat::Tuple) == "tuple");
}

TEST_CASE("parse exact templates") {
  const auto s = parse_shape(kSentence, OutputFormat::Sentence);
  CHECK(s.complete());
  CHECK_FALSE(s.malformed);
  check_same_attributes(s, red_circle());

  const auto t = parse_shape(kTuple, OutputFormat::Tuple);
  CHECK(t.complete());
  check_same_attributes(t, red_circle());
}

TEST_CASE("parsing is case and whitespace tolerant") {
  const auto t = parse_shape(
      "( CIRCLE ,quadrant = Second, center_coordinates=( 56 ,56 ), relative_position=None, "
      "rotation = 0, occlusion=no, color=RED )",
      OutputFormat::Tuple);
  CHECK(t.complete());
  check_same_attributes(t, red_circle());

  const auto s = parse_shape(
      "an Orange   TRIANGLE is located in the first quadrant, centred at coordinates "
      "(150, 40), with relative positions described as right of and above the red circle, "
      "rotated by 15 degrees, and is occluded.",
      OutputFormat::Sentence);
  CHECK(s.complete());
  CHECK(s.shape == ShapeKind::Triangle);
  CHECK(s.color == ColorName::Orange);
  CHECK(s.relative_position == "right of and above the red circle");
  CHECK(s.rotation_deg == 15);
  CHECK(s.occluded == true);
}

TEST_CASE("out-of-vocabulary and missing attributes become NA") {
  std::string text = kTuple;
  text.replace(text.find("color=red"), 9, "color=blurple");
  const auto t = parse_shape(text, OutputFormat::Tuple);
  CHECK_FALSE(t.color.has_value());
  CHECK(t.malformed);
  CHECK(t.shape == ShapeKind::Circle);

  const auto junk = parse_shape("a dog sat on the mat.", OutputFormat::Sentence);
  CHECK(junk.malformed);
  CHECK_FALSE(junk.quadrant.has_value());
  CHECK_FALSE(junk.center.has_value());
  CHECK_FALSE(junk.occluded.has_value());

  const auto empty = parse_shape("", OutputFormat::Tuple);
  CHECK(empty.malformed);
  CHECK_FALSE(empty.shape.has_value());
}

TEST_CASE("NA never compares equal") {
  const std::optional<int> na, one = 1;
  CHECK_FALSE(attribute_equal(na, na));
  CHECK_FALSE(attribute_equal(na, one));
  CHECK(attribute_equal(one, one));
}

TEST_CASE("split_segments") {
  SUBCASE("sentence") {
    const auto segs = split_segments(
        std::string(kSentence) + " " + kSentence + "  trailing words", OutputFormat::Sentence);
    REQUIRE(segs.size() == 3);
    CHECK(segs[0].text == kSentence);
    CHECK(segs[1].text == kSentence);
    CHECK(segs[2].text == "trailing words");
    // The decimal point inside "1.5" is not a boundary.
    const auto d = split_segments("value 1.5 here. next.", OutputFormat::Sentence);
    REQUIRE(d.size() == 2);
    CHECK(d[0].text == "value 1.5 here.");
  }
  SUBCASE("tuple") {
    const auto segs =
        split_segments(std::string(kTuple) + " " + kTuple, OutputFormat::Tuple);
    REQUIRE(segs.size() == 2);
    CHECK(segs[1].text == kTuple);
    CHECK_FALSE(segs[1].malformed);
  }
  SUBCASE("unbalanced tuple leaves one malformed segment") {
    const auto segs = split_segments("(circle, quadrant=second", OutputFormat::Tuple);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].malformed);
  }
  SUBCASE("empty and blank input") {
    CHECK(split_segments("", OutputFormat::Tuple).empty());
    CHECK(split_segments("   \n", OutputFormat::Sentence).empty());
  }
}

TEST_CASE("normalize") {
  CHECK(normalize("  Left of\tAND   above ") == "left of and above");
  CHECK(normalize("") == "");
}

TEST_CASE("serialize, split and parse round trip on generated scenes") {
  const GenerationConfig gen;
  for (const auto& name : builtin_split_names()) {
    SplitSpec spec = builtin_split_spec(name);
    spec.n_samples = 40;
    for (const auto& g : generate_split(spec, gen, {})) {
      for (OutputFormat fmt : {OutputFormat::Sentence, OutputFormat::Tuple}) {
        const auto parsed = parse_prediction(serialize_scene(g.scene, fmt), fmt);
        REQUIRE(parsed.size() == g.scene.size());
        for (std::size_t i = 0; i < parsed.size(); ++i) {
          CHECK(parsed[i].complete());
          CHECK_FALSE(parsed[i].malformed);
          check_same_attributes(parsed[i], attributes_of(g.scene, i));
        }
      }
    }
  }
}

TEST_CASE("sentence and tuple carry the same information") {
  SplitSpec spec = builtin_split_spec("od_spatial");
  spec.n_samples = 30;
  for (const auto& g : generate_split(spec, GenerationConfig{}, {})) {
    const auto s = parse_prediction(serialize_scene(g.scene, OutputFormat::Sentence),
                                    OutputFormat::Sentence);
    const auto t =
        parse_prediction(serialize_scene(g.scene, OutputFormat::Tuple), OutputFormat::Tuple);
    REQUIRE(s.size() == t.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      check_same_attributes(s[i], t[i]);
      CHECK(serialize_shape(s[i], OutputFormat::Tuple) ==
            serialize_segments(g.scene, OutputFormat::Tuple)[i]);
    }
  }
}

TEST_CASE("oversized input does not hang the parser") {
  const std::string huge(200000, '(');
  const auto segs = split_segments(huge, OutputFormat::Tuple);
  CHECK(segs.size() == 1);
  const auto p = parse_shape(std::string(100000, 'a'), OutputFormat::Sentence);
  CHECK(p.malformed);
}
