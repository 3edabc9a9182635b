#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "shapebench/rng.hpp"
#include "shapebench/scene.hpp"

namespace shapebench {

struct IntRange {
  int min = 0;
  int max = 0;

  bool contains(int v) const { return v >= min && v <= max; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// Constraints for one dataset split.
///
/// `occlusion_limit.max` bounds the size of every connected component of the
/// relaxed-overlap graph. When `occlusion_limit.min > 1` the split also
/// requires at least one component whose size lies inside the range.
/// Circles are always at 0 degrees and are exempt from `rotation_set`.
struct SplitSpec {
  std::string name;
  std::size_t n_samples = 0;
  IntRange shapes_per_image{2, 4};
  IntRange occlusion_limit{1, 3};
  std::vector<int> rotation_set{0, 15, 30};
  Rational size_scale{};
  std::vector<std::string> forbid_hashes_of;

  bool requires_overlap_component() const { return occlusion_limit.min > 1; }

  /// Throws std::invalid_argument when the spec is internally inconsistent.
  void validate() const;
};

struct GenerationConfig {
  std::uint64_t base_seed = 0;
  Canvas canvas{};
  // Unscaled ranges; circle radius, square half-side and rectangle/ellipse
  // half-extents share `half_extent`.
  IntRange half_extent{15, 35};
  IntRange triangle_circumradius{18, 40};
  // Rectangles and ellipses keep |half_width - half_height| at least this
  // large so they stay distinguishable from squares and circles.
  int min_aspect_gap = 5;
  double relax_fraction = kDefaultRelaxFraction;
  std::size_t max_rejections = 20000;

  void validate() const;
};

class RejectionBudgetExhausted : public std::runtime_error {
 public:
  RejectionBudgetExhausted(const std::string& split, std::size_t sample_index,
                           std::size_t attempts);

  const std::string& split() const { return split_; }
  std::size_t sample_index() const { return sample_index_; }

 private:
  std::string split_;
  std::size_t sample_index_;
};

/// Split names in generation order: train, eval, then the five OD sets.
const std::vector<std::string>& builtin_split_names();

/// The seven built-in splits, in builtin_split_names() order.
std::vector<SplitSpec> builtin_split_specs();

/// Looks up a built-in split; throws std::out_of_range for unknown names.
SplitSpec builtin_split_spec(const std::string& name);

/// Seed of the RNG stream for one sample. `attempt` advances only when a
/// sample has to be redrawn because its digest was already taken.
std::uint64_t sample_seed(std::uint64_t base_seed, const std::string& split,
                          std::size_t index, std::uint32_t attempt = 0);

/// Draws one scene satisfying `spec`. Failed placements resample the whole
/// scene; throws RejectionBudgetExhausted (sample index 0) after
/// `gen.max_rejections` failures.
SceneConfig sample_scene(Rng& rng, const SplitSpec& spec,
                         const GenerationConfig& gen);

struct GeneratedScene {
  std::string id;
  std::string split_name;
  std::uint64_t seed = 0;
  std::string md5;
  SceneConfig scene;
};

std::string scene_id(const std::string& split, std::size_t index);

/// Exactly spec.n_samples scenes with pairwise distinct digests, none of them
/// in `forbidden`. Output depends only on (gen.base_seed, spec, gen); `jobs`
/// changes speed, never content.
std::vector<GeneratedScene> generate_split(
    const SplitSpec& spec, const GenerationConfig& gen,
    const std::unordered_set<std::string>& forbidden, unsigned jobs = 1);

}  // namespace shapebench
