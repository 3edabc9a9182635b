#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "shapebench/dataset_io.hpp"
#include "shapebench/metrics.hpp"

namespace shapebench {

struct AttributePrf {
  FreqPRF micro;  // counts pooled over the split
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

/// Split-level result of the shapes protocol: segment, parse, match by edit
/// distance, then SAMA, frequency P/R/F1 and matched RMSE.
struct ShapesReport {
  std::string split;
  OutputFormat format = OutputFormat::Sentence;
  std::size_t n_samples = 0;
  SamaResult sama;
  std::array<AttributePrf, kDiscreteAttributes.size()> prf{};
  RmseAggregate center;
  RmseAggregate rotation;
  std::size_t predictions_missing = 0;
  std::vector<std::string> unknown_ids;
  std::size_t duplicate_ids = 0;
  std::size_t segments_total = 0;
  std::size_t segments_malformed = 0;
  std::size_t samples_without_segments = 0;
};

/// Ground-truth samples without a prediction are scored as empty output.
/// Prediction ids absent from the ground truth are listed and ignored; of
/// duplicated ids the first record is used.
ShapesReport evaluate_shapes(const std::string& split,
                             const std::vector<GeneratedScene>& ground_truth,
                             const std::vector<PredictionRecord>& predictions,
                             OutputFormat fmt, unsigned jobs = 1);

Json to_json(const ShapesReport& report);

/// Count/center protocol: Euclidean matching of centers, then count RMSE and
/// matched center RMSE.
struct CountCenterReport {
  std::size_t n_samples = 0;
  double count_rmse = 0.0;
  RmseAggregate center;
  std::size_t predictions_missing = 0;
  std::vector<std::string> unknown_ids;
  std::size_t duplicate_ids = 0;
};

CountCenterReport evaluate_count_center(
    const std::vector<CountCenterRecord>& ground_truth,
    const std::vector<CountCenterRecord>& predictions);

Json to_json(const CountCenterReport& report);

/// "key,value" rows with '/'-joined keys for every scalar leaf of `report`.
std::string report_csv(const Json& report);

}  // namespace shapebench
