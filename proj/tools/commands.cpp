#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "shapebench/dataset_io.hpp"
#include "shapebench/evaluate.hpp"
#include "shapebench/lossmask.hpp"
#include "shapebench/md5.hpp"
#include "shapebench/parallel.hpp"
#include "shapebench/render.hpp"

namespace shapebench::cli {
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = normalize(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.size() == 1 && out.front() == "all") out.clear();
  return out;
}

bool ensure_directory(const fs::path& dir, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    log << "error: cannot create output directory " << dir << "\n";
    return false;
  }
  return true;
}

bool known_split(const std::string& name) {
  const auto& names = builtin_split_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Json spec_json(const SplitSpec& s) {
  Json j;
  j["n_samples"] = s.n_samples;
  j["shapes_per_image"] = {s.shapes_per_image.min, s.shapes_per_image.max};
  j["occlusion_limit"] = {s.occlusion_limit.min, s.occlusion_limit.max};
  j["rotation_set"] = s.rotation_set;
  j["size_scale"] = {s.size_scale.num, s.size_scale.den};
  j["forbid_hashes_of"] = s.forbid_hashes_of;
  return j;
}

Json generation_json(const GenerationConfig& g) {
  Json j;
  j["canvas"] = {{"width", g.canvas.width}, {"height", g.canvas.height}};
  j["half_extent"] = {g.half_extent.min, g.half_extent.max};
  j["triangle_circumradius"] = {g.triangle_circumradius.min,
                                g.triangle_circumradius.max};
  j["min_aspect_gap"] = g.min_aspect_gap;
  j["relax_fraction"] = g.relax_fraction;
  j["max_rejections"] = g.max_rejections;
  return j;
}

// Splits to process: the requested ones, or every <split>.jsonl present.
std::vector<std::string> resolve_existing_splits(
    const fs::path& dir, const std::vector<std::string>& requested) {
  if (!requested.empty()) return requested;
  std::vector<std::string> out;
  for (const auto& name : builtin_split_names()) {
    if (fs::exists(dir / (name + ".jsonl"))) out.push_back(name);
  }
  return out;
}

std::vector<std::vector<std::string>> read_token_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    std::vector<std::string> tokens;
    if (first != std::string::npos && line[first] == '[') {
      try {
        const Json arr = Json::parse(line);
        if (!arr.is_array()) throw DataFormatError("expected a JSON array", line_no);
        for (const Json& t : arr) {
          if (!t.is_string()) {
            throw DataFormatError("token arrays must hold strings", line_no);
          }
          tokens.push_back(t.get<std::string>());
        }
      } catch (const nlohmann::json::exception& e) {
        throw DataFormatError(std::string("invalid JSON: ") + e.what(), line_no);
      }
    } else {
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
    }
    out.push_back(std::move(tokens));
  }
  if (in.bad()) throw std::runtime_error("read error on " + path.string());
  return out;
}

NumericTokenSpec parse_token_spec(const std::string& text) {
  if (text.rfind("set:", 0) == 0) {
    std::set<std::string> tokens;
    std::stringstream ss(text.substr(4));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) tokens.insert(tok);
    }
    return NumericTokenSpec::explicit_set(std::move(tokens));
  }
  const auto dash = text.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == text.size()) {
    throw std::invalid_argument("token spec must be MIN-MAX or set:a,b,...");
  }
  std::size_t used_lo = 0, used_hi = 0;
  const std::string lo_text = text.substr(0, dash), hi_text = text.substr(dash + 1);
  const auto lo = std::stoull(lo_text, &used_lo);
  const auto hi = std::stoull(hi_text, &used_hi);
  if (used_lo != lo_text.size() || used_hi != hi_text.size()) {
    throw std::invalid_argument("token spec must be MIN-MAX or set:a,b,...");
  }
  return NumericTokenSpec::value_range(lo, hi);
}

}  // namespace

int cmd_generate(const GenerateOptions& opt, std::ostream& log) {
  try {
    opt.gen.validate();
    for (const auto& name : opt.splits) {
      if (!known_split(name)) {
        log << "error: unknown split '" << name << "'\n";
        return kExitError;
      }
    }
    if (!ensure_directory(opt.out_dir, log)) return kExitError;

    std::set<std::string> selected(opt.splits.begin(), opt.splits.end());
    if (selected.empty()) {
      selected.insert(builtin_split_names().begin(), builtin_split_names().end());
    }
    // Splits whose digests a selected split must avoid are generated too, in
    // memory only, so the output does not depend on the selection.
    std::set<std::string> needed = selected;
    for (const auto& name : selected) {
      for (const auto& dep : builtin_split_spec(name).forbid_hashes_of) {
        needed.insert(dep);
      }
    }

    std::map<std::string, std::unordered_set<std::string>> digests;
    Json manifest;
    manifest["seed"] = opt.gen.base_seed;
    manifest["generation"] = generation_json(opt.gen);
    Json split_entries;
    for (const auto& name : builtin_split_names()) {
      if (!needed.count(name)) continue;
      SplitSpec spec = builtin_split_spec(name);
      if (opt.samples_override) spec.n_samples = *opt.samples_override;
      std::unordered_set<std::string> forbidden;
      for (const auto& dep : spec.forbid_hashes_of) {
        forbidden.insert(digests[dep].begin(), digests[dep].end());
      }
      const auto scenes = generate_split(spec, opt.gen, forbidden, opt.jobs);
      auto& mine = digests[name];
      for (const auto& s : scenes) mine.insert(s.md5);
      if (!selected.count(name)) continue;

      std::vector<Json> rows;
      rows.reserve(scenes.size());
      for (const auto& s : scenes) rows.push_back(scene_to_json(s));
      const fs::path file = opt.out_dir / (name + ".jsonl");
      write_jsonl(file, rows);
      Json entry;
      entry["spec"] = spec_json(spec);
      entry["file"] = file.filename().string();
      entry["md5"] = md5_file_hex(file.string());
      split_entries[name] = std::move(entry);
      log << "generated " << scenes.size() << " scenes -> " << file.string()
          << "\n";
    }
    manifest["splits"] = std::move(split_entries);
    write_text_file(opt.out_dir / "manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_render(const RenderOptions& opt, std::ostream& log) {
  try {
    const auto splits = resolve_existing_splits(opt.data_dir, opt.splits);
    if (splits.empty()) {
      log << "error: no scene files found in " << opt.data_dir << "\n";
      return kExitError;
    }
    for (const auto& name : splits) {
      const fs::path input = opt.data_dir / (name + ".jsonl");
      if (!fs::exists(input)) {
        log << "error: missing input " << input.string() << "\n";
        return kExitError;
      }
      const auto scenes = read_scenes_jsonl(input);
      const fs::path dir = opt.data_dir / name;
      if (!ensure_directory(dir, log)) return kExitError;
      parallel_for(scenes.size(), opt.jobs, [&](std::size_t i) {
        write_png(rasterize(scenes[i].scene), dir / (scenes[i].id + ".png"));
      });
      log << "rendered " << scenes.size() << " images -> " << dir.string() << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_serialize(const SerializeOptions& opt, std::ostream& log) {
  try {
    const auto splits = resolve_existing_splits(opt.data_dir, opt.splits);
    if (splits.empty()) {
      log << "error: no scene files found in " << opt.data_dir << "\n";
      return kExitError;
    }
    for (const auto& name : splits) {
      const fs::path input = opt.data_dir / (name + ".jsonl");
      if (!fs::exists(input)) {
        log << "error: missing input " << input.string() << "\n";
        return kExitError;
      }
      const auto scenes = read_scenes_jsonl(input);
      for (OutputFormat fmt : opt.formats) {
        const fs::path out =
            opt.data_dir / (name + "." + std::string(to_string(fmt)) + ".jsonl");
        write_jsonl(out, target_rows(scenes, fmt));
        log << "wrote " << out.string() << "\n";
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& log) {
  try {
    for (const auto& p : {opt.gt_path, opt.pred_path}) {
      if (!fs::exists(p)) {
        log << "error: missing input " << p.string() << "\n";
        return kExitError;
      }
    }
    if (!ensure_directory(opt.out_dir, log)) return kExitError;

    Json report;
    std::size_t unknown = 0;
    if (opt.mode == EvalMode::Shapes) {
      const auto gt = read_scenes_jsonl(opt.gt_path);
      const auto preds = read_predictions_jsonl(opt.pred_path);
      std::string split = gt.empty() ? std::string() : gt.front().split_name;
      if (split.empty()) split = opt.gt_path.stem().string();
      const ShapesReport r = evaluate_shapes(split, gt, preds, opt.format, opt.jobs);
      unknown = r.unknown_ids.size();
      report = to_json(r);
      if (r.segments_malformed > 0) {
        log << "warning: " << r.segments_malformed << " of " << r.segments_total
            << " predicted segments were malformed\n";
      }
    } else {
      const auto gt = read_count_center_jsonl(opt.gt_path);
      const auto preds = read_count_center_jsonl(opt.pred_path);
      const CountCenterReport r = evaluate_count_center(gt, preds);
      unknown = r.unknown_ids.size();
      report = to_json(r);
    }
    if (unknown > 0) {
      log << "warning: skipped " << unknown
          << " predictions whose id is not in the ground truth\n";
    }
    write_text_file(opt.out_dir / "report.json", report.dump(2) + "\n");
    write_text_file(opt.out_dir / "report.csv", report_csv(report));
    log << "wrote " << (opt.out_dir / "report.json").string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_mask(const MaskOptions& opt, std::ostream& log) {
  try {
    if (!fs::exists(opt.tokens_path)) {
      log << "error: missing input " << opt.tokens_path.string() << "\n";
      return kExitError;
    }
    const NumericTokenSpec spec = parse_token_spec(opt.spec);
    const auto lines = read_token_lines(opt.tokens_path);
    std::vector<Json> rows;
    rows.reserve(lines.size());
    for (const auto& tokens : lines) {
      rows.push_back(numeric_weight_mask(tokens, spec, opt.scale).weights);
    }
    write_jsonl(opt.out_path, rows);
    log << "wrote " << rows.size() << " weight rows -> " << opt.out_path.string()
        << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic 2D-shape benchmark: generate, render, serialize, "
               "evaluate, mask"};
  app.require_subcommand(1);

  GenerateOptions gen_opt;
  std::string gen_splits = "all";
  std::pair<int, int> half_extent{gen_opt.gen.half_extent.min,
                                  gen_opt.gen.half_extent.max};
  std::pair<int, int> tri_radius{gen_opt.gen.triangle_circumradius.min,
                                 gen_opt.gen.triangle_circumradius.max};
  std::size_t samples = 0;
  auto* generate = app.add_subcommand("generate", "Generate scene JSONL files");
  generate->add_option("--seed", gen_opt.gen.base_seed, "Base seed")
      ->capture_default_str();
  generate->add_option("--out", gen_opt.out_dir, "Output directory")->required();
  generate->add_option("--splits", gen_splits, "Comma-separated splits or 'all'")
      ->capture_default_str();
  generate->add_option("--relax", gen_opt.gen.relax_fraction,
                       "Bounding-box relaxation per side")
      ->capture_default_str();
  generate->add_option("--half-extent", half_extent,
                       "Unscaled half-extent range MIN MAX")
      ->capture_default_str();
  generate->add_option("--triangle-radius", tri_radius,
                       "Unscaled triangle circumradius range MIN MAX")
      ->capture_default_str();
  generate->add_option("--max-rejections", gen_opt.gen.max_rejections)
      ->capture_default_str();
  generate->add_option("--samples", samples,
                       "Override the sample count of every split");
  generate->add_option("--jobs", gen_opt.jobs)->check(CLI::PositiveNumber)
      ->capture_default_str();

  RenderOptions render_opt;
  std::string render_splits = "all";
  auto* render = app.add_subcommand("render", "Rasterize scenes to PNG");
  render->add_option("--out", render_opt.data_dir, "Dataset directory")->required();
  render->add_option("--splits", render_splits)->capture_default_str();
  render->add_option("--jobs", render_opt.jobs)->check(CLI::PositiveNumber)
      ->capture_default_str();

  SerializeOptions ser_opt;
  std::string ser_splits = "all";
  std::string ser_format = "both";
  auto* serialize =
      app.add_subcommand("serialize", "Write Sentence/Tuple target text");
  serialize->add_option("--out", ser_opt.data_dir, "Dataset directory")->required();
  serialize->add_option("--splits", ser_splits)->capture_default_str();
  serialize->add_option("--format", ser_format)
      ->check(CLI::IsMember({"sentence", "tuple", "both"}))
      ->capture_default_str();

  EvaluateOptions eval_opt;
  std::string eval_format = "sentence";
  std::string eval_mode = "shapes";
  auto* evaluate = app.add_subcommand("evaluate", "Score a prediction file");
  evaluate->add_option("--gt", eval_opt.gt_path, "Ground-truth JSONL")->required();
  evaluate->add_option("--pred", eval_opt.pred_path, "Predictions JSONL")->required();
  evaluate->add_option("--out", eval_opt.out_dir, "Report directory")->required();
  evaluate->add_option("--format", eval_format)
      ->check(CLI::IsMember({"sentence", "tuple"}))
      ->capture_default_str();
  evaluate->add_option("--mode", eval_mode)
      ->check(CLI::IsMember({"shapes", "count_center"}))
      ->capture_default_str();
  evaluate->add_option("--jobs", eval_opt.jobs)->check(CLI::PositiveNumber)
      ->capture_default_str();

  MaskOptions mask_opt;
  auto* mask = app.add_subcommand("mask", "Numeric-token loss weights");
  mask->add_option("--tokens", mask_opt.tokens_path, "Token file")->required();
  mask->add_option("--out", mask_opt.out_path, "Output JSONL")->required();
  mask->add_option("--spec", mask_opt.spec, "MIN-MAX or set:a,b,...")
      ->capture_default_str();
  mask->add_option("--scale", mask_opt.scale)->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  if (generate->parsed()) {
    gen_opt.splits = split_list(gen_splits);
    gen_opt.gen.half_extent = {half_extent.first, half_extent.second};
    gen_opt.gen.triangle_circumradius = {tri_radius.first, tri_radius.second};
    if (samples > 0) gen_opt.samples_override = samples;
    return cmd_generate(gen_opt, err);
  }
  if (render->parsed()) {
    render_opt.splits = split_list(render_splits);
    return cmd_render(render_opt, err);
  }
  if (serialize->parsed()) {
    ser_opt.splits = split_list(ser_splits);
    if (ser_format != "both") ser_opt.formats = {*parse_output_format(ser_format)};
    return cmd_serialize(ser_opt, err);
  }
  if (evaluate->parsed()) {
    eval_opt.format = *parse_output_format(eval_format);
    eval_opt.mode = eval_mode == "shapes" ? EvalMode::Shapes : EvalMode::CountCenter;
    return cmd_evaluate(eval_opt, err);
  }
  if (mask->parsed()) return cmd_mask(mask_opt, err);
  return kExitError;
}

}  // namespace shapebench::cli
