#include "shapebench/evaluate.hpp"

#include <map>
#include <unordered_map>
#include <unordered_set>

#include "shapebench/parallel.hpp"

namespace shapebench {
namespace {

struct SampleResult {
  SampleScore score;
  std::array<FreqPRF, kDiscreteAttributes.size()> prf{};
  SampleRmse center;
  SampleRmse rotation;
  std::size_t segments = 0;
  std::size_t malformed = 0;
};

SampleResult evaluate_sample(const SceneConfig& scene, const std::string& text,
                             OutputFormat fmt) {
  SampleResult out;
  std::vector<ParsedShape> gt;
  for (std::size_t i = 0; i < scene.size(); ++i) gt.push_back(attributes_of(scene, i));
  const std::vector<std::string> gt_text = serialize_segments(scene, fmt);

  const std::vector<ParsedShape> pred = parse_prediction(text, fmt);
  std::vector<std::string> pred_text;
  pred_text.reserve(pred.size());
  for (const auto& p : pred) {
    pred_text.push_back(p.raw_segment);
    if (p.malformed) ++out.malformed;
  }
  out.segments = pred.size();

  const Assignment asg = match_by_edit_distance(gt_text, pred_text);
  out.score = sama_sample_detail(gt, pred, asg);
  for (std::size_t a = 0; a < kDiscreteAttributes.size(); ++a) {
    std::vector<Label> g, p;
    for (const auto& s : gt) g.push_back(attribute_label(s, kDiscreteAttributes[a]));
    for (const auto& s : pred) p.push_back(attribute_label(s, kDiscreteAttributes[a]));
    out.prf[a] = freq_pr(g, p);
  }
  out.center = rmse_matched(gt, pred, asg, ContinuousAttribute::Center);
  out.rotation = rmse_matched(gt, pred, asg, ContinuousAttribute::Rotation);
  return out;
}

Json rmse_json(const RmseAggregate& r) {
  Json j;
  j["rmse"] = r.rmse;
  j["matched_pairs"] = r.matched_pairs;
  j["na_pairs"] = r.na_pairs;
  j["samples_used"] = r.samples_used;
  j["samples_skipped"] = r.samples_skipped;
  return j;
}

Json prf_json(const FreqPRF& p) {
  Json j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  j["total_correct"] = p.total_correct;
  j["true_total"] = p.true_total;
  j["pred_total"] = p.pred_total;
  return j;
}

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "/" + key, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "/" + std::to_string(i), out);
    }
  } else {
    out += prefix;
    out += ',';
    out += j.is_string() ? j.get<std::string>() : j.dump();
    out += '\n';
  }
}

// First record per id, plus bookkeeping about ids the ground truth lacks.
template <typename Record>
std::unordered_map<std::string, const Record*> index_predictions(
    const std::vector<Record>& predictions,
    const std::unordered_set<std::string>& known_ids,
    std::vector<std::string>& unknown_ids, std::size_t& duplicates) {
  std::unordered_map<std::string, const Record*> by_id;
  for (const Record& p : predictions) {
    if (known_ids.count(p.id) == 0) {
      unknown_ids.push_back(p.id);
      continue;
    }
    if (!by_id.emplace(p.id, &p).second) ++duplicates;
  }
  return by_id;
}

}  // namespace

ShapesReport evaluate_shapes(const std::string& split,
                             const std::vector<GeneratedScene>& ground_truth,
                             const std::vector<PredictionRecord>& predictions,
                             OutputFormat fmt, unsigned jobs) {
  ShapesReport report;
  report.split = split;
  report.format = fmt;
  report.n_samples = ground_truth.size();

  std::unordered_set<std::string> known;
  for (const auto& g : ground_truth) known.insert(g.id);
  const auto by_id = index_predictions(predictions, known, report.unknown_ids,
                                       report.duplicate_ids);

  std::vector<SampleResult> results(ground_truth.size());
  parallel_for(ground_truth.size(), jobs, [&](std::size_t i) {
    const auto it = by_id.find(ground_truth[i].id);
    const std::string empty;
    results[i] = evaluate_sample(ground_truth[i].scene,
                                 it == by_id.end() ? empty : it->second->prediction,
                                 fmt);
  });
  report.predictions_missing = ground_truth.size() - by_id.size();
  if (results.empty()) return report;

  std::vector<SampleScore> scores;
  std::vector<SampleRmse> centers, rotations;
  std::array<std::array<std::size_t, 3>, kDiscreteAttributes.size()> pooled{};
  for (const auto& r : results) {
    scores.push_back(r.score);
    centers.push_back(r.center);
    rotations.push_back(r.rotation);
    report.segments_total += r.segments;
    report.segments_malformed += r.malformed;
    if (r.segments == 0) ++report.samples_without_segments;
    for (std::size_t a = 0; a < kDiscreteAttributes.size(); ++a) {
      auto& prf = report.prf[a];
      prf.macro_precision += r.prf[a].precision;
      prf.macro_recall += r.prf[a].recall;
      prf.macro_f1 += r.prf[a].f1;
      pooled[a][0] += r.prf[a].total_correct;
      pooled[a][1] += r.prf[a].true_total;
      pooled[a][2] += r.prf[a].pred_total;
    }
  }
  const double n = static_cast<double>(results.size());
  for (std::size_t a = 0; a < kDiscreteAttributes.size(); ++a) {
    auto& prf = report.prf[a];
    prf.macro_precision /= n;
    prf.macro_recall /= n;
    prf.macro_f1 /= n;
    prf.micro = prf_from_counts(pooled[a][0], pooled[a][1], pooled[a][2]);
  }
  report.sama = sama_dataset(scores);
  report.center = aggregate_rmse(centers);
  report.rotation = aggregate_rmse(rotations);
  return report;
}

Json to_json(const ShapesReport& r) {
  Json j;
  j["mode"] = "shapes";
  j["split"] = r.split;
  j["format"] = to_string(r.format);
  j["n_samples"] = r.n_samples;

  Json sama;
  sama["overall"] = r.sama.mean_accuracy;
  Json per_attr;
  for (std::size_t a = 0; a < kDiscreteAttributes.size(); ++a) {
    per_attr[std::string(to_string(kDiscreteAttributes[a]))] =
        r.sama.per_attribute_accuracy[a];
  }
  sama["per_attribute"] = std::move(per_attr);
  j["sama"] = std::move(sama);

  Json prf;
  for (std::size_t a = 0; a < kDiscreteAttributes.size(); ++a) {
    const auto& p = r.prf[a];
    Json entry;
    entry["macro"] = {{"precision", p.macro_precision},
                      {"recall", p.macro_recall},
                      {"f1", p.macro_f1}};
    entry["micro"] = prf_json(p.micro);
    prf[std::string(to_string(kDiscreteAttributes[a]))] = std::move(entry);
  }
  j["precision_recall_f1"] = std::move(prf);
  j["center_rmse"] = rmse_json(r.center);
  j["rotation_rmse"] = rmse_json(r.rotation);
  j["parse"] = {{"segments_total", r.segments_total},
                {"segments_malformed", r.segments_malformed},
                {"samples_without_segments", r.samples_without_segments},
                {"predictions_missing", r.predictions_missing},
                {"duplicate_ids", r.duplicate_ids},
                {"unknown_ids", r.unknown_ids.size()}};
  return j;
}

CountCenterReport evaluate_count_center(
    const std::vector<CountCenterRecord>& ground_truth,
    const std::vector<CountCenterRecord>& predictions) {
  CountCenterReport report;
  report.n_samples = ground_truth.size();
  std::unordered_set<std::string> known;
  for (const auto& g : ground_truth) known.insert(g.id);
  const auto by_id = index_predictions(predictions, known, report.unknown_ids,
                                       report.duplicate_ids);

  std::vector<int> gt_counts, pred_counts;
  std::vector<SampleRmse> centers;
  for (const auto& g : ground_truth) {
    const auto it = by_id.find(g.id);
    if (it == by_id.end()) {
      ++report.predictions_missing;
      continue;
    }
    const CountCenterRecord& p = *it->second;
    gt_counts.push_back(g.count);
    pred_counts.push_back(p.count);
    const Assignment asg = match_by_euclidean(g.centers, p.centers);
    centers.push_back(rmse_points(g.centers, p.centers, asg));
  }
  if (!gt_counts.empty()) report.count_rmse = count_rmse(gt_counts, pred_counts);
  report.center = aggregate_rmse(centers);
  return report;
}

Json to_json(const CountCenterReport& r) {
  Json j;
  j["mode"] = "count_center";
  j["n_samples"] = r.n_samples;
  j["count_rmse"] = r.count_rmse;
  j["center_rmse"] = rmse_json(r.center);
  j["parse"] = {{"predictions_missing", r.predictions_missing},
                {"duplicate_ids", r.duplicate_ids},
                {"unknown_ids", r.unknown_ids.size()}};
  return j;
}

std::string report_csv(const Json& report) {
  std::string out = "metric,value\n";
  flatten(report, "", out);
  return out;
}

}  // namespace shapebench
