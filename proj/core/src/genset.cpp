#include "shapebench/genset.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "shapebench/parallel.hpp"

namespace shapebench {
namespace {

constexpr std::uint32_t kMaxDedupAttempts = 1000;

// Cluster members are offset from their anchor by at most this fraction of
// the summed half-widths, which keeps their relaxed boxes intersecting.
constexpr double kClusterReach = 0.6;

int scaled(int base, const Rational& scale) {
  const long long num = static_cast<long long>(base) * scale.num;
  return static_cast<int>((num + scale.den / 2) / scale.den);
}

SizeSpec draw_size(Rng& rng, ShapeKind kind, const SplitSpec& spec,
                   const GenerationConfig& gen) {
  SizeSpec size;
  size.scale = spec.size_scale;
  auto half = [&] {
    return static_cast<int>(
        rng.uniform_int(gen.half_extent.min, gen.half_extent.max));
  };
  switch (kind) {
    case ShapeKind::Circle:
      size.extents = {scaled(half(), spec.size_scale), 0};
      break;
    case ShapeKind::Square:
      size.extents = {scaled(2 * half(), spec.size_scale), 0};
      break;
    case ShapeKind::Triangle:
      size.extents = {
          scaled(static_cast<int>(rng.uniform_int(gen.triangle_circumradius.min,
                                                  gen.triangle_circumradius.max)),
                 spec.size_scale),
          0};
      break;
    case ShapeKind::Rectangle:
    case ShapeKind::Ellipse: {
      int w = 0, h = 0;
      do {
        w = half();
        h = half();
      } while (std::abs(w - h) < gen.min_aspect_gap);
      size.extents = {scaled(w, spec.size_scale), scaled(h, spec.size_scale)};
      break;
    }
  }
  return size;
}

struct CenterRange {
  int lo_x, hi_x, lo_y, hi_y;
  bool empty() const { return lo_x > hi_x || lo_y > hi_y; }
};

// Centers for which the shape's bounding box stays on the canvas.
CenterRange valid_centers(ShapeInstance shape, const Canvas& canvas) {
  shape.center = {0, 0};
  const AABB box = bounding_box(shape);
  return {-box.min_x, canvas.width - 1 - box.max_x, -box.min_y,
          canvas.height - 1 - box.max_y};
}

bool meets_occlusion(const std::vector<int>& components, const SplitSpec& spec) {
  const int largest = *std::max_element(components.begin(), components.end());
  if (largest > spec.occlusion_limit.max) return false;
  if (!spec.requires_overlap_component()) return true;
  return std::any_of(components.begin(), components.end(), [&](int c) {
    return spec.occlusion_limit.contains(c);
  });
}

std::string format_attempt_message(const std::string& split, std::size_t index,
                                   std::size_t attempts) {
  std::string msg = "rejection budget exhausted after " +
                    std::to_string(attempts) + " attempts";
  if (!split.empty()) {
    msg += " (split " + split + ", sample " + std::to_string(index) + ")";
  }
  return msg;
}

}  // namespace

RejectionBudgetExhausted::RejectionBudgetExhausted(const std::string& split,
                                                   std::size_t sample_index,
                                                   std::size_t attempts)
    : std::runtime_error(format_attempt_message(split, sample_index, attempts)),
      split_(split),
      sample_index_(sample_index) {}

void SplitSpec::validate() const {
  if (name.empty()) throw std::invalid_argument("split name is empty");
  if (shapes_per_image.min < 1 || shapes_per_image.min > shapes_per_image.max) {
    throw std::invalid_argument(name + ": invalid shapes_per_image range");
  }
  if (occlusion_limit.min < 1 || occlusion_limit.min > occlusion_limit.max) {
    throw std::invalid_argument(name + ": invalid occlusion_limit range");
  }
  if (requires_overlap_component() &&
      occlusion_limit.min > shapes_per_image.max) {
    throw std::invalid_argument(
        name + ": required overlap component larger than any scene");
  }
  if (rotation_set.empty()) {
    throw std::invalid_argument(name + ": rotation_set is empty");
  }
  if (size_scale.num <= 0 || size_scale.den <= 0) {
    throw std::invalid_argument(name + ": size_scale must be positive");
  }
}

void GenerationConfig::validate() const {
  if (canvas.width <= 0 || canvas.height <= 0) {
    throw std::invalid_argument("canvas dimensions must be positive");
  }
  if (half_extent.min <= 0 || half_extent.min > half_extent.max ||
      triangle_circumradius.min <= 0 ||
      triangle_circumradius.min > triangle_circumradius.max) {
    throw std::invalid_argument("extent ranges must be positive and ordered");
  }
  if (min_aspect_gap < 0 ||
      min_aspect_gap > half_extent.max - half_extent.min) {
    throw std::invalid_argument("min_aspect_gap does not fit the extent range");
  }
  if (!(relax_fraction >= 0.0 && relax_fraction < 0.5)) {
    throw std::invalid_argument("relax_fraction must lie in [0, 0.5)");
  }
  if (max_rejections == 0) {
    throw std::invalid_argument("max_rejections must be positive");
  }
}

const std::vector<std::string>& builtin_split_names() {
  static const std::vector<std::string> names = {
      "train",        "eval",        "od_composition", "od_spatial",
      "od_occlusion", "od_rotation", "od_size"};
  return names;
}

std::vector<SplitSpec> builtin_split_specs() {
  const IntRange train_shapes{2, 4};
  const IntRange train_occlusion{1, 3};
  const std::vector<int> train_rot{0, 15, 30};
  const std::vector<int> new_rot{45, 72};
  const std::vector<std::string> held_out{"train", "eval"};

  std::vector<SplitSpec> specs;
  specs.push_back({"train", 20000, train_shapes, train_occlusion, train_rot,
                   {1, 1}, {}});
  specs.push_back({"eval", 1000, train_shapes, train_occlusion, train_rot,
                   {1, 1}, {"train"}});
  specs.push_back({"od_composition", 200, {5, 6}, {5, 6}, new_rot, {1, 1},
                   held_out});
  specs.push_back({"od_spatial", 200, {5, 6}, train_occlusion, train_rot,
                   {1, 1}, held_out});
  specs.push_back({"od_occlusion", 200, train_shapes, {4, 5}, train_rot,
                   {1, 1}, held_out});
  specs.push_back({"od_rotation", 200, train_shapes, train_occlusion, new_rot,
                   {1, 1}, held_out});
  specs.push_back({"od_size", 200, train_shapes, train_occlusion, train_rot,
                   {2, 1}, held_out});
  return specs;
}

SplitSpec builtin_split_spec(const std::string& name) {
  for (auto& spec : builtin_split_specs()) {
    if (spec.name == name) return spec;
  }
  throw std::out_of_range("unknown split: " + name);
}

std::uint64_t sample_seed(std::uint64_t base_seed, const std::string& split,
                          std::size_t index, std::uint32_t attempt) {
  std::uint64_t h = mix64(base_seed ^ fnv1a64(split));
  h = mix64(h ^ static_cast<std::uint64_t>(index));
  return mix64(h ^ (static_cast<std::uint64_t>(attempt) << 32));
}

SceneConfig sample_scene(Rng& rng, const SplitSpec& spec,
                         const GenerationConfig& gen) {
  spec.validate();
  gen.validate();
  // Scenes with fewer shapes than the required overlap component can never
  // satisfy the split, so they are not drawn at all.
  const int min_count =
      spec.requires_overlap_component()
          ? std::max(spec.shapes_per_image.min, spec.occlusion_limit.min)
          : spec.shapes_per_image.min;

  for (std::size_t attempt = 0; attempt < gen.max_rejections; ++attempt) {
    const int n = static_cast<int>(
        rng.uniform_int(min_count, spec.shapes_per_image.max));
    int cluster = 0;
    if (spec.requires_overlap_component()) {
      cluster = static_cast<int>(rng.uniform_int(
          spec.occlusion_limit.min, std::min(spec.occlusion_limit.max, n)));
    }

    std::vector<ShapeInstance> shapes(static_cast<std::size_t>(n));
    for (auto& s : shapes) {
      s.kind = rng.pick(kAllShapeKinds);
      s.color = rng.pick(kAllColors);
      s.rotation_deg =
          s.kind == ShapeKind::Circle ? 0 : rng.pick(spec.rotation_set);
      s.size = draw_size(rng, s.kind, spec, gen);
    }

    bool placed = true;
    for (int i = 0; i < n && placed; ++i) {
      ShapeInstance& s = shapes[i];
      const CenterRange range = valid_centers(s, gen.canvas);
      if (range.empty()) {
        placed = false;
        break;
      }
      if (i > 0 && i < cluster) {
        const ShapeInstance& anchor =
            shapes[static_cast<std::size_t>(rng.uniform_int(0, i - 1))];
        const AABB a = bounding_box(anchor);
        ShapeInstance probe = s;
        probe.center = {0, 0};
        const AABB b = bounding_box(probe);
        const int reach_x =
            static_cast<int>(kClusterReach * (a.width() + b.width()) / 2.0);
        const int reach_y =
            static_cast<int>(kClusterReach * (a.height() + b.height()) / 2.0);
        const int x = anchor.center.x +
                      static_cast<int>(rng.uniform_int(-reach_x, reach_x));
        const int y = anchor.center.y +
                      static_cast<int>(rng.uniform_int(-reach_y, reach_y));
        s.center = {std::clamp(x, range.lo_x, range.hi_x),
                    std::clamp(y, range.lo_y, range.hi_y)};
      } else {
        s.center = {static_cast<int>(rng.uniform_int(range.lo_x, range.hi_x)),
                    static_cast<int>(rng.uniform_int(range.lo_y, range.hi_y))};
      }
    }
    if (!placed) continue;

    if (meets_occlusion(overlap_component_sizes(shapes, gen.relax_fraction),
                        spec)) {
      return SceneConfig(gen.canvas, std::move(shapes), gen.relax_fraction);
    }
  }
  throw RejectionBudgetExhausted("", 0, gen.max_rejections);
}

std::string scene_id(const std::string& split, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", index);
  return split + "_" + buf;
}

std::vector<GeneratedScene> generate_split(
    const SplitSpec& spec, const GenerationConfig& gen,
    const std::unordered_set<std::string>& forbidden, unsigned jobs) {
  spec.validate();
  gen.validate();

  auto draw = [&](std::size_t index, std::uint32_t attempt) {
    GeneratedScene g;
    g.id = scene_id(spec.name, index);
    g.split_name = spec.name;
    g.seed = sample_seed(gen.base_seed, spec.name, index, attempt);
    Rng rng(g.seed);
    try {
      g.scene = sample_scene(rng, spec, gen);
    } catch (const RejectionBudgetExhausted&) {
      throw RejectionBudgetExhausted(spec.name, index, gen.max_rejections);
    }
    g.md5 = canonical_hash(g.scene);
    return g;
  };

  std::vector<GeneratedScene> out(spec.n_samples);
  parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = draw(i, 0); });

  // Duplicates are resolved in index order so the result does not depend on
  // thread scheduling.
  std::unordered_set<std::string> seen;
  seen.reserve(out.size() * 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t attempt = 0;
    while (forbidden.count(out[i].md5) != 0 || seen.count(out[i].md5) != 0) {
      if (++attempt > kMaxDedupAttempts) {
        throw RejectionBudgetExhausted(spec.name, i, kMaxDedupAttempts);
      }
      out[i] = draw(i, attempt);
    }
    seen.insert(out[i].md5);
  }
  return out;
}

}  // namespace shapebench
