#include "shapebench/dataset_io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

namespace shapebench {
namespace {

template <typename T, typename Parser>
T enum_field(const Json& j, const char* key, Parser parse) {
  const auto value = parse(j.at(key).get<std::string>());
  if (!value) {
    throw DataFormatError(std::string("unknown ") + key + " '" +
                          j.at(key).get<std::string>() + "'");
  }
  return *value;
}

PixelPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw DataFormatError("point must be a two-element array");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

Json shape_to_json(const ShapeInstance& s) {
  Json extents = Json::array();
  for (int k = 0; k < extent_count(s.kind); ++k) extents.push_back(s.size.extents[k]);
  Json j;
  j["kind"] = to_string(s.kind);
  j["color"] = to_string(s.color);
  j["center"] = {s.center.x, s.center.y};
  j["extents"] = std::move(extents);
  j["scale"] = {s.size.scale.num, s.size.scale.den};
  j["rotation_deg"] = s.rotation_deg;
  return j;
}

ShapeInstance shape_from_json(const Json& j) {
  ShapeInstance s;
  s.kind = enum_field<ShapeKind>(j, "kind", parse_shape_kind);
  s.color = enum_field<ColorName>(j, "color", parse_color);
  s.center = point_from_json(j.at("center"));
  const Json& ext = j.at("extents");
  if (!ext.is_array() || ext.size() != static_cast<std::size_t>(extent_count(s.kind))) {
    throw DataFormatError("wrong number of extents for " +
                          std::string(to_string(s.kind)));
  }
  for (std::size_t k = 0; k < ext.size(); ++k) {
    s.size.extents[k] = ext[k].get<int>();
    if (s.size.extents[k] <= 0) throw DataFormatError("extents must be positive");
  }
  if (j.contains("scale")) {
    const Json& sc = j.at("scale");
    s.size.scale = {sc.at(0).get<int>(), sc.at(1).get<int>()};
  }
  s.rotation_deg = j.at("rotation_deg").get<int>();
  return s;
}

void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    body(out);
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move file into place at " + path.string());
  }
}

}  // namespace

DataFormatError::DataFormatError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

Json scene_to_json(const GeneratedScene& g) {
  const SceneConfig& scene = g.scene;
  Json shapes = Json::array();
  for (const auto& s : scene.shapes()) shapes.push_back(shape_to_json(s));
  Json occluded = Json::array(), quadrants = Json::array(), rel = Json::array();
  for (std::size_t i = 0; i < scene.size(); ++i) {
    occluded.push_back(static_cast<bool>(scene.occluded()[i]));
    quadrants.push_back(to_string(scene.quadrants()[i]));
    rel.push_back(scene.relative_position()[i]);
  }
  Json j;
  j["id"] = g.id;
  j["md5"] = g.md5;
  j["canvas"] = {{"width", scene.canvas().width}, {"height", scene.canvas().height}};
  j["shapes"] = std::move(shapes);
  j["occluded"] = std::move(occluded);
  j["quadrant"] = std::move(quadrants);
  j["relative_position"] = std::move(rel);
  j["relax_fraction"] = scene.relax_fraction();
  j["split_name"] = g.split_name;
  j["seed"] = g.seed;
  return j;
}

GeneratedScene scene_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw DataFormatError("record is not a JSON object");
    Canvas canvas{j.at("canvas").at("width").get<int>(),
                  j.at("canvas").at("height").get<int>()};
    std::vector<ShapeInstance> shapes;
    for (const Json& s : j.at("shapes")) shapes.push_back(shape_from_json(s));
    const double relax = j.value("relax_fraction", kDefaultRelaxFraction);

    GeneratedScene g;
    g.id = j.at("id").get<std::string>();
    g.split_name = j.value("split_name", std::string());
    g.seed = j.value("seed", std::uint64_t{0});
    g.scene = SceneConfig(canvas, std::move(shapes), relax);
    g.md5 = canonical_hash(g.scene);
    if (j.contains("md5") && j.at("md5").get<std::string>() != g.md5) {
      throw DataFormatError("md5 does not match the shapes of " + g.id);
    }
    if (j.contains("occluded") || j.contains("quadrant") ||
        j.contains("relative_position")) {
      const Json expected = scene_to_json(g);
      for (const char* key : {"occluded", "quadrant", "relative_position"}) {
        if (j.contains(key) && j.at(key) != expected.at(key)) {
          throw DataFormatError(std::string(key) +
                                " disagrees with the shapes of " + g.id);
        }
      }
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw DataFormatError(e.what());
  } catch (const std::invalid_argument& e) {
    throw DataFormatError(e.what());
  }
}

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const Json&, std::size_t)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataFormatError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    try {
      fn(record, line_no);
    } catch (const DataFormatError& e) {
      if (e.line() != 0) throw;
      throw DataFormatError(e.what(), line_no);
    } catch (const nlohmann::json::exception& e) {
      throw DataFormatError(e.what(), line_no);
    }
  }
  if (in.bad()) throw std::runtime_error("read error on " + path.string());
}

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows) {
  atomic_write(path, [&](std::ostream& out) {
    for (const Json& row : rows) out << row.dump() << '\n';
  });
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  atomic_write(path, [&](std::ostream& out) { out << text; });
}

std::vector<GeneratedScene> read_scenes_jsonl(const std::filesystem::path& path) {
  std::vector<GeneratedScene> out;
  for_each_jsonl(path, [&](const Json& j, std::size_t) {
    out.push_back(scene_from_json(j));
  });
  return out;
}

std::vector<PredictionRecord> read_predictions_jsonl(
    const std::filesystem::path& path) {
  std::vector<PredictionRecord> out;
  for_each_jsonl(path, [&](const Json& j, std::size_t) {
    if (!j.is_object()) throw DataFormatError("record is not a JSON object");
    const Json& text = j.at("prediction");
    out.push_back({j.at("id").get<std::string>(),
                   text.is_null() ? std::string() : text.get<std::string>()});
  });
  return out;
}

std::vector<Json> target_rows(const std::vector<GeneratedScene>& scenes,
                              OutputFormat fmt) {
  std::vector<Json> rows;
  rows.reserve(scenes.size());
  for (const auto& g : scenes) {
    Json j;
    j["id"] = g.id;
    j["target"] = serialize_scene(g.scene, fmt);
    rows.push_back(std::move(j));
  }
  return rows;
}

std::vector<CountCenterRecord> read_count_center_jsonl(
    const std::filesystem::path& path) {
  std::vector<CountCenterRecord> out;
  for_each_jsonl(path, [&](const Json& j, std::size_t) {
    if (!j.is_object()) throw DataFormatError("record is not a JSON object");
    CountCenterRecord r;
    r.id = j.at("id").get<std::string>();
    r.count = j.at("count").get<int>();
    for (const Json& p : j.value("centers", Json::array())) {
      r.centers.push_back(point_from_json(p));
    }
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace shapebench
