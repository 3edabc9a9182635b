#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shapebench/scene.hpp"

namespace shapebench {

/// Dense row-major matrix of non-negative finite costs. Rows are
/// ground-truth items, columns are predicted items.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  /// Throws std::invalid_argument for negative or non-finite values.
  void set(std::size_t r, std::size_t c, double value);

  CostMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col), by row
  std::vector<std::size_t> unmatched_rows;
  std::vector<std::size_t> unmatched_cols;
  double total_cost = 0.0;
};

/// Levenshtein distance over Unicode scalar values (UTF-8 input; invalid
/// bytes count as one replacement character each).
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Minimum-cost matching of size min(rows, cols), solved with the
/// Jonker-Volgenant shortest augmenting path method on the rectangular matrix
/// directly. Rows are augmented in index order and equal reduced costs resolve
/// to the lowest column index, so the result is fully deterministic. An empty
/// dimension yields an empty assignment with cost 0.
Assignment solve_lap_jv(const CostMatrix& cost);

/// Cost is edit_distance(normalize(gt[i]), normalize(pred[j])).
Assignment match_by_edit_distance(const std::vector<std::string>& gt_segments,
                                  const std::vector<std::string>& pred_segments);

/// Cost is the Euclidean distance between points.
Assignment match_by_euclidean(const std::vector<PixelPoint>& gt_points,
                              const std::vector<PixelPoint>& pred_points);

}  // namespace shapebench
