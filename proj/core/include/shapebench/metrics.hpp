#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shapebench/assign.hpp"
#include "shapebench/textio.hpp"

namespace shapebench {

/// Discrete attributes scored by SAMA and by frequency precision/recall.
/// Center and rotation are continuous and go through RMSE instead.
enum class Attribute { Shape, Color, Quadrant, Occlusion, RelativePosition };

inline constexpr std::array<Attribute, 5> kDiscreteAttributes = {
    Attribute::Shape, Attribute::Color, Attribute::Quadrant,
    Attribute::Occlusion, Attribute::RelativePosition};

std::string_view to_string(Attribute attr);

/// Class label of `attr` as a string, or NA.
using Label = std::optional<std::string>;
Label attribute_label(const ParsedShape& shape, Attribute attr);

class EmptyGroundTruth : public std::invalid_argument {
 public:
  EmptyGroundTruth() : std::invalid_argument("ground truth has no shapes") {}
};

struct SampleScore {
  double accuracy = 0.0;
  std::array<double, kDiscreteAttributes.size()> per_attribute{};
};

/// Fraction of (GT shape, discrete attribute) slots whose matched prediction
/// agrees. Unmatched GT shapes score zero on every attribute.
SampleScore sama_sample_detail(const std::vector<ParsedShape>& gt,
                               const std::vector<ParsedShape>& pred,
                               const Assignment& asg);

double sama_sample(const std::vector<ParsedShape>& gt,
                   const std::vector<ParsedShape>& pred, const Assignment& asg);

struct SamaResult {
  std::vector<double> per_sample_accuracy;
  double mean_accuracy = 0.0;
  std::array<double, kDiscreteAttributes.size()> per_attribute_accuracy{};
};

/// Arithmetic means over samples; throws std::invalid_argument when empty.
SamaResult sama_dataset(const std::vector<SampleScore>& samples);

struct FreqPRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t total_correct = 0;
  std::size_t true_total = 0;
  std::size_t pred_total = 0;
};

/// Counts of each class in `values`. NA entries are counted only when NA is
/// itself listed in `classes`.
std::vector<std::size_t> frequency_vector(const std::vector<Label>& values,
                                          const std::vector<Label>& classes);

/// Precision/recall from class-frequency overlap: correct is the elementwise
/// minimum of the GT and prediction histograms; NA is left out of every total.
/// Ratios with a zero denominator are 0, and so is F1 when P + R == 0.
FreqPRF freq_pr(const std::vector<Label>& gt, const std::vector<Label>& pred);

FreqPRF prf_from_counts(std::size_t total_correct, std::size_t true_total,
                        std::size_t pred_total);

enum class ContinuousAttribute { Center, Rotation };

struct SampleRmse {
  std::optional<double> rmse;  // nullopt when no matched pair was usable
  std::size_t matched_pairs = 0;
  std::size_t na_pairs = 0;
};

/// RMSE over matched pairs. Center pools both axes as
/// sqrt(mean(dx^2 + dy^2)); rotation uses raw degree differences.
SampleRmse rmse_matched(const std::vector<ParsedShape>& gt,
                        const std::vector<ParsedShape>& pred,
                        const Assignment& asg, ContinuousAttribute attr);

/// Same, over plain points matched by position.
SampleRmse rmse_points(const std::vector<PixelPoint>& gt,
                       const std::vector<PixelPoint>& pred,
                       const Assignment& asg);

struct RmseAggregate {
  double rmse = 0.0;  // mean of per-sample RMSEs
  std::size_t samples_used = 0;
  std::size_t samples_skipped = 0;
  std::size_t matched_pairs = 0;
  std::size_t na_pairs = 0;
};

RmseAggregate aggregate_rmse(const std::vector<SampleRmse>& samples);

/// sqrt(mean((gt - pred)^2)). Throws std::invalid_argument on length mismatch
/// or empty input.
double count_rmse(const std::vector<int>& gt_counts,
                  const std::vector<int>& pred_counts);

}  // namespace shapebench
