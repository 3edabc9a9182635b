#include "shapebench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace shapebench {

std::string_view to_string(Attribute attr) {
  switch (attr) {
    case Attribute::Shape: return "shape";
    case Attribute::Color: return "color";
    case Attribute::Quadrant: return "quadrant";
    case Attribute::Occlusion: return "occlusion";
    case Attribute::RelativePosition: return "relative_position";
  }
  return "?";
}

Label attribute_label(const ParsedShape& s, Attribute attr) {
  switch (attr) {
    case Attribute::Shape:
      if (s.shape) return std::string(to_string(*s.shape));
      break;
    case Attribute::Color:
      if (s.color) return std::string(to_string(*s.color));
      break;
    case Attribute::Quadrant:
      if (s.quadrant) return std::string(to_string(*s.quadrant));
      break;
    case Attribute::Occlusion:
      if (s.occluded) return std::string(*s.occluded ? "yes" : "no");
      break;
    case Attribute::RelativePosition:
      if (s.relative_position) return *s.relative_position;
      break;
  }
  return std::nullopt;
}

SampleScore sama_sample_detail(const std::vector<ParsedShape>& gt,
                               const std::vector<ParsedShape>& pred,
                               const Assignment& asg) {
  if (gt.empty()) throw EmptyGroundTruth();
  SampleScore score;
  std::size_t hits = 0;
  for (const auto& [r, c] : asg.pairs) {
    if (r >= gt.size() || c >= pred.size()) {
      throw std::out_of_range("assignment does not fit the attribute lists");
    }
    for (std::size_t a = 0; a < kDiscreteAttributes.size(); ++a) {
      if (attribute_equal(attribute_label(gt[r], kDiscreteAttributes[a]),
                          attribute_label(pred[c], kDiscreteAttributes[a]))) {
        score.per_attribute[a] += 1.0;
        ++hits;
      }
    }
  }
  const double n = static_cast<double>(gt.size());
  for (double& v : score.per_attribute) v /= n;
  score.accuracy =
      static_cast<double>(hits) / (kDiscreteAttributes.size() * n);
  return score;
}

double sama_sample(const std::vector<ParsedShape>& gt,
                   const std::vector<ParsedShape>& pred, const Assignment& asg) {
  return sama_sample_detail(gt, pred, asg).accuracy;
}

SamaResult sama_dataset(const std::vector<SampleScore>& samples) {
  if (samples.empty()) throw std::invalid_argument("sama_dataset: no samples");
  SamaResult out;
  out.per_sample_accuracy.reserve(samples.size());
  double total = 0.0;
  for (const auto& s : samples) {
    out.per_sample_accuracy.push_back(s.accuracy);
    total += s.accuracy;
    for (std::size_t a = 0; a < s.per_attribute.size(); ++a) {
      out.per_attribute_accuracy[a] += s.per_attribute[a];
    }
  }
  const double n = static_cast<double>(samples.size());
  out.mean_accuracy = total / n;
  for (double& v : out.per_attribute_accuracy) v /= n;
  return out;
}

std::vector<std::size_t> frequency_vector(const std::vector<Label>& values,
                                          const std::vector<Label>& classes) {
  std::vector<std::size_t> counts(classes.size(), 0);
  for (const Label& v : values) {
    const auto it = std::find(classes.begin(), classes.end(), v);
    if (it != classes.end()) ++counts[static_cast<std::size_t>(it - classes.begin())];
  }
  return counts;
}

FreqPRF prf_from_counts(std::size_t total_correct, std::size_t true_total,
                        std::size_t pred_total) {
  FreqPRF out;
  out.total_correct = total_correct;
  out.true_total = true_total;
  out.pred_total = pred_total;
  out.precision = pred_total > 0
                      ? static_cast<double>(total_correct) / pred_total
                      : 0.0;
  out.recall = true_total > 0
                   ? static_cast<double>(total_correct) / true_total
                   : 0.0;
  const double denom = out.precision + out.recall;
  out.f1 = denom > 0.0 ? 2.0 * out.precision * out.recall / denom : 0.0;
  return out;
}

FreqPRF freq_pr(const std::vector<Label>& gt, const std::vector<Label>& pred) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> hist;
  std::size_t true_total = 0, pred_total = 0;
  for (const Label& v : gt) {
    if (!v) continue;
    ++hist[*v].first;
    ++true_total;
  }
  for (const Label& v : pred) {
    if (!v) continue;
    ++hist[*v].second;
    ++pred_total;
  }
  std::size_t correct = 0;
  for (const auto& [label, counts] : hist) {
    correct += std::min(counts.first, counts.second);
  }
  return prf_from_counts(correct, true_total, pred_total);
}

SampleRmse rmse_matched(const std::vector<ParsedShape>& gt,
                        const std::vector<ParsedShape>& pred,
                        const Assignment& asg, ContinuousAttribute attr) {
  SampleRmse out;
  double sum_sq = 0.0;
  for (const auto& [r, c] : asg.pairs) {
    const ParsedShape& g = gt.at(r);
    const ParsedShape& p = pred.at(c);
    if (attr == ContinuousAttribute::Center) {
      if (!g.center) throw std::invalid_argument("ground-truth center is NA");
      if (!p.center) {
        ++out.na_pairs;
        continue;
      }
      const double dx = g.center->x - p.center->x;
      const double dy = g.center->y - p.center->y;
      sum_sq += dx * dx + dy * dy;
    } else {
      if (!g.rotation_deg) throw std::invalid_argument("ground-truth rotation is NA");
      if (!p.rotation_deg) {
        ++out.na_pairs;
        continue;
      }
      const double d = static_cast<double>(*g.rotation_deg) - *p.rotation_deg;
      sum_sq += d * d;
    }
    ++out.matched_pairs;
  }
  if (out.matched_pairs > 0) {
    out.rmse = std::sqrt(sum_sq / static_cast<double>(out.matched_pairs));
  }
  return out;
}

SampleRmse rmse_points(const std::vector<PixelPoint>& gt,
                       const std::vector<PixelPoint>& pred,
                       const Assignment& asg) {
  SampleRmse out;
  double sum_sq = 0.0;
  for (const auto& [r, c] : asg.pairs) {
    const double dx = gt.at(r).x - pred.at(c).x;
    const double dy = gt.at(r).y - pred.at(c).y;
    sum_sq += dx * dx + dy * dy;
    ++out.matched_pairs;
  }
  if (out.matched_pairs > 0) {
    out.rmse = std::sqrt(sum_sq / static_cast<double>(out.matched_pairs));
  }
  return out;
}

RmseAggregate aggregate_rmse(const std::vector<SampleRmse>& samples) {
  RmseAggregate out;
  double total = 0.0;
  for (const auto& s : samples) {
    out.matched_pairs += s.matched_pairs;
    out.na_pairs += s.na_pairs;
    if (s.rmse) {
      total += *s.rmse;
      ++out.samples_used;
    } else {
      ++out.samples_skipped;
    }
  }
  if (out.samples_used > 0) out.rmse = total / static_cast<double>(out.samples_used);
  return out;
}

double count_rmse(const std::vector<int>& gt_counts,
                  const std::vector<int>& pred_counts) {
  if (gt_counts.size() != pred_counts.size()) {
    throw std::invalid_argument("count_rmse: length mismatch");
  }
  if (gt_counts.empty()) throw std::invalid_argument("count_rmse: empty input");
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < gt_counts.size(); ++i) {
    const double d = static_cast<double>(gt_counts[i]) - pred_counts[i];
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq / static_cast<double>(gt_counts.size()));
}

}  // namespace shapebench
