#include "shapebench/lossmask.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace shapebench {

NumericTokenSpec NumericTokenSpec::value_range(std::uint64_t min,
                                               std::uint64_t max) {
  if (min > max) throw std::invalid_argument("numeric token range: min > max");
  return NumericTokenSpec(Range{min, max});
}

NumericTokenSpec NumericTokenSpec::explicit_set(std::set<std::string> tokens) {
  if (tokens.empty()) {
    throw std::invalid_argument("numeric token set must not be empty");
  }
  return NumericTokenSpec(std::move(tokens));
}

bool NumericTokenSpec::is_numeric(std::string_view token) const {
  if (const auto* set = std::get_if<std::set<std::string>>(&mode_)) {
    return set->find(std::string(token)) != set->end();
  }
  const Range& range = std::get<Range>(mode_);
  if (token.empty()) return false;
  if (token.size() > 1 && token.front() == '0') return false;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return false;
  return value >= range.min && value <= range.max;
}

std::string NumericTokenSpec::describe() const {
  if (const auto* set = std::get_if<std::set<std::string>>(&mode_)) {
    return "set of " + std::to_string(set->size()) + " tokens";
  }
  const Range& r = std::get<Range>(mode_);
  return "range " + std::to_string(r.min) + "-" + std::to_string(r.max);
}

NumericTokenSpec numeric_tokens_1_to_1000() {
  return NumericTokenSpec::value_range(1, 1000);
}

NumericTokenSpec numeric_tokens_1_to_10() {
  return NumericTokenSpec::value_range(1, 10);
}

WeightMask numeric_weight_mask(std::span<const std::string> tokens,
                               const NumericTokenSpec& spec, double scale) {
  if (!(std::isfinite(scale) && scale > 0.0)) {
    throw std::invalid_argument("scale must be finite and positive");
  }
  WeightMask mask;
  mask.weights.reserve(tokens.size());
  for (const auto& t : tokens) {
    mask.weights.push_back(spec.is_numeric(t) ? scale : 1.0);
  }
  return mask;
}

}  // namespace shapebench
