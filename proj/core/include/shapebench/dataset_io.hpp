#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shapebench/genset.hpp"
#include "shapebench/textio.hpp"

namespace shapebench {

using Json = nlohmann::ordered_json;

/// Malformed input file. `line()` is 1-based, 0 when not line-specific.
class DataFormatError : public std::runtime_error {
 public:
  DataFormatError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One `<split>.jsonl` record.
Json scene_to_json(const GeneratedScene& g);

/// Inverse of scene_to_json. Derived attributes are recomputed from the
/// shapes and must agree with the stored ones.
GeneratedScene scene_from_json(const Json& j);

/// Calls `fn(record, line_number)` for every non-blank line. Parse errors and
/// exceptions thrown by `fn` surface as DataFormatError carrying the line.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const Json&, std::size_t)>& fn);

/// Writes one compact JSON object per line through a temporary file that is
/// renamed into place.
void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows);

/// Writes `text` through a temporary sibling renamed into place.
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::vector<GeneratedScene> read_scenes_jsonl(const std::filesystem::path& path);

struct PredictionRecord {
  std::string id;
  std::string prediction;
};

/// `{"id": ..., "prediction": ...}` per line.
std::vector<PredictionRecord> read_predictions_jsonl(
    const std::filesystem::path& path);

/// `{"id": ..., "target": ...}` ground-truth text rows for one format.
std::vector<Json> target_rows(const std::vector<GeneratedScene>& scenes,
                              OutputFormat fmt);

/// Count/center annotation: `{"id", "count", "centers": [[x, y], ...]}`.
struct CountCenterRecord {
  std::string id;
  int count = 0;
  std::vector<PixelPoint> centers;
};

std::vector<CountCenterRecord> read_count_center_jsonl(
    const std::filesystem::path& path);

}  // namespace shapebench
