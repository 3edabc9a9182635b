#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace shapebench {

/// Which vocabulary tokens count as numeric for loss weighting.
class NumericTokenSpec {
 public:
  /// Plain base-10 digit strings (no sign, no leading zero) whose value lies
  /// in [min, max].
  static NumericTokenSpec value_range(std::uint64_t min, std::uint64_t max);
  /// Exact membership in a non-empty token set.
  static NumericTokenSpec explicit_set(std::set<std::string> tokens);

  bool is_numeric(std::string_view token) const;
  std::string describe() const;

 private:
  struct Range {
    std::uint64_t min;
    std::uint64_t max;
  };
  explicit NumericTokenSpec(std::variant<Range, std::set<std::string>> mode)
      : mode_(std::move(mode)) {}

  std::variant<Range, std::set<std::string>> mode_;
};

/// Numeric vocabularies of the two tokenizer families the scaling targets.
NumericTokenSpec numeric_tokens_1_to_1000();
NumericTokenSpec numeric_tokens_1_to_10();

inline constexpr std::array<double, 4> kScalePresets = {1.5, 2.0, 2.5, 3.5};

struct WeightMask {
  std::vector<double> weights;
};

/// weight[i] = scale when tokens[i] is numeric under `spec`, else 1.0.
/// Throws std::invalid_argument unless scale is finite and positive.
WeightMask numeric_weight_mask(std::span<const std::string> tokens,
                               const NumericTokenSpec& spec, double scale);

}  // namespace shapebench
