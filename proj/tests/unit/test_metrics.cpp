#include <doctest.h>

#include <algorithm>
#include <random>

#include "shapebench/metrics.hpp"

using namespace shapebench;

namespace {

ParsedShape shape(ShapeKind k, ColorName c = ColorName::Red, PixelPoint p = {50, 50},
                  int rot = 0) {
  ParsedShape s;
  s.shape = k;
  s.color = c;
  s.quadrant = QuadrantLabel::Second;
  s.center = p;
  s.relative_position = "none";
  s.rotation_deg = rot;
  s.occluded = false;
  return s;
}

Assignment identity(std::size_t n) {
  Assignment a;
  for (std::size_t i = 0; i < n; ++i) a.pairs.emplace_back(i, i);
  return a;
}

std::vector<Label> labels(std::initializer_list<const char*> xs) {
  std::vector<Label> out;
  for (const char* x : xs) out.push_back(x ? Label{x} : std::nullopt);
  return out;
}

}  // namespace

TEST_CASE("sama_sample") {
  const std::vector<ParsedShape> gt = {shape(ShapeKind::Circle), shape(ShapeKind::Square)};
  CHECK(sama_sample(gt, gt, identity(2)) == 1.0);

  auto one_wrong = gt;
  one_wrong[1].color = ColorName::Blue;
  CHECK(sama_sample(gt, one_wrong, identity(2)) == doctest::Approx(0.9).epsilon(1e-12));

  const std::vector<ParsedShape> half = {gt[0]};
  CHECK(sama_sample(gt, half, identity(1)) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(sama_sample(gt, {}, Assignment{}) == 0.0);

  // NA in a prediction never matches.
  auto na = gt;
  na[0].occluded.reset();
  CHECK(sama_sample(gt, na, identity(2)) == doctest::Approx(0.9));

  CHECK_THROWS_AS(sama_sample({}, gt, Assignment{}), EmptyGroundTruth);
}

TEST_CASE("sama per-attribute detail") {
  const std::vector<ParsedShape> gt = {shape(ShapeKind::Circle), shape(ShapeKind::Square)};
  auto pred = gt;
  pred[0].quadrant = QuadrantLabel::First;
  const auto d = sama_sample_detail(gt, pred, identity(2));
  CHECK(d.per_attribute[0] == 1.0);
  CHECK(d.per_attribute[2] == 0.5);
  CHECK(d.accuracy == doctest::Approx(0.9));
}

TEST_CASE("sama_dataset is the mean over samples") {
  SampleScore a, b;
  a.accuracy = 1.0;
  b.accuracy = 0.5;
  a.per_attribute.fill(1.0);
  b.per_attribute.fill(0.0);
  const auto r = sama_dataset({a, b});
  CHECK(r.mean_accuracy == 0.75);
  CHECK(r.per_attribute_accuracy[3] == 0.5);
  CHECK_THROWS_AS(sama_dataset({}), std::invalid_argument);
}

TEST_CASE("frequency precision and recall on the shape example") {
  const auto gt = labels({"circle", "circle", "triangle"});
  const auto pt = labels({"square", "triangle", "circle"});
  const auto classes =
      labels({"circle", "rectangle", "ellipse", "triangle", "square", nullptr});
  CHECK(frequency_vector(gt, classes) == std::vector<std::size_t>{2, 0, 0, 1, 0, 0});
  CHECK(frequency_vector(pt, classes) == std::vector<std::size_t>{1, 0, 0, 1, 1, 0});

  const FreqPRF r = freq_pr(gt, pt);
  CHECK(r.total_correct == 2);
  CHECK(r.true_total == 3);
  CHECK(r.pred_total == 3);
  CHECK(std::abs(r.precision - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(r.recall - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(r.f1 - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("frequency precision and recall edge cases") {
  const FreqPRF empty_pred = freq_pr(labels({"circle"}), {});
  CHECK(empty_pred.precision == 0.0);
  CHECK(empty_pred.recall == 0.0);
  CHECK(empty_pred.f1 == 0.0);

  // NA predictions are dropped from the predicted total.
  const FreqPRF na = freq_pr(labels({"circle", "square"}), labels({"circle", nullptr}));
  CHECK(na.pred_total == 1);
  CHECK(na.precision == 1.0);
  CHECK(na.recall == 0.5);

  const FreqPRF from = prf_from_counts(3, 4, 6);
  CHECK(from.precision == 0.5);
  CHECK(from.recall == 0.75);
  CHECK(from.f1 == doctest::Approx(0.6));
}

TEST_CASE("frequency precision and recall properties") {
  std::mt19937_64 rng(3);
  const std::vector<const char*> vocab = {"a", "b", "c", "d"};
  std::uniform_int_distribution<int> len(0, 8), pick(0, 4);
  auto draw = [&] {
    std::vector<Label> v(static_cast<std::size_t>(len(rng)));
    for (auto& x : v) {
      const int k = pick(rng);
      x = k == 4 ? std::nullopt : Label{vocab[static_cast<std::size_t>(k)]};
    }
    return v;
  };
  for (int i = 0; i < 500; ++i) {
    auto gt = draw(), pt = draw();
    const FreqPRF r = freq_pr(gt, pt);
    CHECK(r.precision >= 0.0);
    CHECK(r.precision <= 1.0);
    CHECK(r.recall >= 0.0);
    CHECK(r.recall <= 1.0);
    // Order within either list does not matter.
    std::shuffle(pt.begin(), pt.end(), rng);
    const FreqPRF s = freq_pr(gt, pt);
    CHECK(s.total_correct == r.total_correct);
    // Swapping roles swaps precision and recall.
    const FreqPRF w = freq_pr(pt, gt);
    CHECK(w.precision == r.recall);
    CHECK(w.recall == r.precision);
  }
}

TEST_CASE("rmse over matched pairs") {
  const std::vector<ParsedShape> gt = {shape(ShapeKind::Circle, ColorName::Red, {100, 100}, 30)};
  const std::vector<ParsedShape> pred = {shape(ShapeKind::Circle, ColorName::Red, {103, 104}, 0)};
  const auto c = rmse_matched(gt, pred, identity(1), ContinuousAttribute::Center);
  REQUIRE(c.rmse.has_value());
  CHECK(*c.rmse == doctest::Approx(5.0).epsilon(1e-12));
  const auto r = rmse_matched(gt, pred, identity(1), ContinuousAttribute::Rotation);
  CHECK(*r.rmse == doctest::Approx(30.0).epsilon(1e-12));

  auto na = pred;
  na[0].center.reset();
  const auto n = rmse_matched(gt, na, identity(1), ContinuousAttribute::Center);
  CHECK_FALSE(n.rmse.has_value());
  CHECK(n.na_pairs == 1);

  const auto p = rmse_points({{100, 100}}, {{103, 104}}, identity(1));
  CHECK(*p.rmse == doctest::Approx(5.0));
}

TEST_CASE("aggregate_rmse averages per-sample values") {
  const auto agg = aggregate_rmse({SampleRmse{2.0, 1, 0}, SampleRmse{4.0, 2, 0},
                                   SampleRmse{std::nullopt, 0, 1}});
  CHECK(agg.rmse == 3.0);
  CHECK(agg.samples_used == 2);
  CHECK(agg.samples_skipped == 1);
  CHECK(agg.matched_pairs == 3);
  CHECK(agg.na_pairs == 1);
}

TEST_CASE("count_rmse") {
  CHECK(count_rmse({1, 2, 3}, {2, 2, 1}) == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
  CHECK(std::abs(count_rmse({1, 2, 3}, {2, 2, 1}) - 1.2909944487358056) < 1e-9);
  CHECK(count_rmse({4, 4}, {4, 4}) == 0.0);
  CHECK_THROWS_AS(count_rmse({1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(count_rmse({}, {}), std::invalid_argument);
}
