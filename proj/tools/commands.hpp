#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shapebench/genset.hpp"
#include "shapebench/textio.hpp"

namespace shapebench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 2;

struct GenerateOptions {
  std::filesystem::path out_dir;
  std::vector<std::string> splits;  // empty: all built-in splits
  GenerationConfig gen;
  std::optional<std::size_t> samples_override;
  unsigned jobs = 1;
};

struct RenderOptions {
  std::filesystem::path data_dir;
  std::vector<std::string> splits;  // empty: every <split>.jsonl present
  unsigned jobs = 1;
};

struct SerializeOptions {
  std::filesystem::path data_dir;
  std::vector<std::string> splits;
  std::vector<OutputFormat> formats{OutputFormat::Sentence, OutputFormat::Tuple};
};

enum class EvalMode { Shapes, CountCenter };

struct EvaluateOptions {
  std::filesystem::path gt_path;
  std::filesystem::path pred_path;
  std::filesystem::path out_dir;
  OutputFormat format = OutputFormat::Sentence;
  EvalMode mode = EvalMode::Shapes;
  unsigned jobs = 1;
};

struct MaskOptions {
  std::filesystem::path tokens_path;
  std::filesystem::path out_path;
  std::string spec = "1-1000";
  double scale = 2.0;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& log);
int cmd_render(const RenderOptions& opt, std::ostream& log);
int cmd_serialize(const SerializeOptions& opt, std::ostream& log);
int cmd_evaluate(const EvaluateOptions& opt, std::ostream& log);
int cmd_mask(const MaskOptions& opt, std::ostream& log);

/// Full argv entry point; returns the process exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace shapebench::cli
