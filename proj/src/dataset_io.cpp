#include "qra/dataset_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "csv_format.hpp"

namespace qra {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kJsonFormatTag = "qra-dataset";

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaError, path + ": " + what);
}

const ordered_json& member(const ordered_json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_at(const ordered_json& j, const char* key, const std::string& path) {
  const auto& v = member(j, key, path);
  if (!v.is_string()) schema_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

double number_at(const ordered_json& j, const char* key, const std::string& path) {
  const auto& v = member(j, key, path);
  if (!v.is_number()) schema_error(path + "." + key, "expected a number");
  return v.get<double>();
}

const ordered_json& array_at(const ordered_json& j, const char* key, const std::string& path) {
  const auto& v = member(j, key, path);
  if (!v.is_array()) schema_error(path + "." + key, "expected an array");
  return v;
}

std::optional<std::string> optional_string(const ordered_json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) schema_error(path + "." + key, "expected a string or null");
  return it->get<std::string>();
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DatasetFormat resolve(DatasetFormat format, const std::filesystem::path& path) {
  if (format != DatasetFormat::Auto) return format;
  return path.extension() == ".json" ? DatasetFormat::Json : DatasetFormat::Csv;
}

}  // namespace

std::optional<DatasetFormat> parse_dataset_format(std::string_view text) noexcept {
  if (text == "csv") return DatasetFormat::Csv;
  if (text == "json") return DatasetFormat::Json;
  if (text == "auto") return DatasetFormat::Auto;
  return std::nullopt;
}

QraDataset parse_json_dataset(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError("empty dataset file", 1, 1);
  }
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(e.what(), line, column);
  }

  if (auto it = root.find("format"); it != root.end() && *it != kJsonFormatTag) {
    schema_error("$.format", "expected \"qra-dataset\"");
  }

  QraDataset ds;
  const auto& schema = array_at(root, "schema", "$");
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const std::string path = "$.schema[" + std::to_string(i) + "]";
    const std::string category_text = string_at(schema[i], "category", path);
    auto category = parse_condition_category(category_text);
    if (!category) schema_error(path + ".category", "unknown category '" + category_text + "'");
    ds.schema.conditions.push_back({string_at(schema[i], "name", path), *category});
  }

  const auto& objects = array_at(root, "objects", "$");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string path = "$.objects[" + std::to_string(i) + "]";
    ObjectRef o;
    o.id = string_at(objects[i], "id", path);
    o.display_name = optional_string(objects[i], "display_name", path).value_or(o.id);
    o.description = optional_string(objects[i], "description", path);
    ds.objects.push_back(std::move(o));
  }

  const auto& measurands = array_at(root, "measurands", "$");
  for (std::size_t i = 0; i < measurands.size(); ++i) {
    const std::string path = "$.measurands[" + std::to_string(i) + "]";
    const auto& j = measurands[i];
    Measurand m;
    m.id = string_at(j, "id", path);
    m.display_name = optional_string(j, "display_name", path).value_or(m.id);
    m.unit = optional_string(j, "unit", path).value_or("");
    if (j.contains("scale_min")) m.scale_min = number_at(j, "scale_min", path);
    if (auto it = j.find("scale_max"); it != j.end() && !it->is_null()) {
      m.scale_max = number_at(j, "scale_max", path);
    }
    if (auto kind_text = optional_string(j, "value_kind", path)) {
      auto kind = parse_value_kind(*kind_text);
      if (!kind) schema_error(path + ".value_kind", "unknown value kind '" + *kind_text + "'");
      m.value_kind = *kind;
    }
    ds.measurands.push_back(std::move(m));
  }

  const auto& measurements = array_at(root, "measurements", "$");
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    const std::string path = "$.measurements[" + std::to_string(i) + "]";
    const auto& j = measurements[i];
    Measurement m;
    m.object = string_at(j, "object", path);
    m.measurand = string_at(j, "measurand", path);
    m.value = number_at(j, "value", path);
    m.source = optional_string(j, "source", path).value_or("");
    if (auto ts = optional_string(j, "timestamp", path)) {
      m.timestamp = parse_date(*ts);
      if (!m.timestamp) schema_error(path + ".timestamp", "invalid date '" + *ts + "' (want YYYY-MM-DD)");
    }
    const auto& conditions = member(j, "conditions", path);
    if (!conditions.is_object()) schema_error(path + ".conditions", "expected an object");
    for (const auto& [name, value] : conditions.items()) {
      if (value.is_null()) {
        m.conditions.emplace(name, ConditionValue::unknown());
      } else if (value.is_string() && !value.get<std::string>().empty()) {
        m.conditions.emplace(name, ConditionValue::known(value.get<std::string>()));
      } else {
        schema_error(path + ".conditions." + name, "expected a non-empty string or null");
      }
    }
    ds.measurements.push_back(std::move(m));
  }
  return ds;
}

std::string serialize_json(const QraDataset& dataset) {
  ordered_json root;
  root["format"] = kJsonFormatTag;
  root["version"] = 1;

  auto& schema = root["schema"] = ordered_json::array();
  for (const auto& c : dataset.schema.conditions) {
    schema.push_back({{"name", c.name}, {"category", to_string(c.category)}});
  }

  auto& objects = root["objects"] = ordered_json::array();
  for (const auto& o : dataset.objects) {
    ordered_json j{{"id", o.id}, {"display_name", o.display_name}};
    if (o.description) j["description"] = *o.description;
    objects.push_back(std::move(j));
  }

  auto& measurands = root["measurands"] = ordered_json::array();
  for (const auto& m : dataset.measurands) {
    ordered_json j{{"id", m.id},
                   {"display_name", m.display_name},
                   {"unit", m.unit},
                   {"scale_min", m.scale_min},
                   {"scale_max", nullptr},
                   {"value_kind", to_string(m.value_kind)}};
    if (m.scale_max) j["scale_max"] = *m.scale_max;
    measurands.push_back(std::move(j));
  }

  auto& measurements = root["measurements"] = ordered_json::array();
  for (const auto& m : dataset.measurements) {
    ordered_json j{{"object", m.object}, {"measurand", m.measurand}, {"value", m.value}, {"source", m.source}};
    if (m.timestamp) j["timestamp"] = format_date(*m.timestamp);
    ordered_json conditions = ordered_json::object();
    for (const auto& c : dataset.schema.conditions) {
      const ConditionValue v = m.condition(c.name);
      conditions[c.name] = v.is_known() ? ordered_json(v.label()) : ordered_json(nullptr);
    }
    // Entries outside the schema are kept so invalid datasets survive a round trip.
    for (const auto& [name, v] : m.conditions) {
      if (!dataset.schema.contains(name)) {
        conditions[name] = v.is_known() ? ordered_json(v.label()) : ordered_json(nullptr);
      }
    }
    j["conditions"] = std::move(conditions);
    measurements.push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

QraDataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  const std::string text = read_file(path);
  if (resolve(format, path) == DatasetFormat::Json) {
    QraDataset ds = parse_json_dataset(text);
    auto issues = validate_dataset(ds);
    if (has_errors(issues)) throw ValidationError(std::move(issues));
    return ds;
  }

  auto parsed = detail::parse_csv_with_lines(text);
  auto issues = validate_dataset(parsed.dataset);
  if (has_errors(issues)) {
    for (auto& issue : issues) {
      if (issue.measurement_index) {
        issue.location = "line " + std::to_string(parsed.measurement_lines[*issue.measurement_index]) +
                         " (" + issue.location + ")";
      }
    }
    throw ValidationError(std::move(issues));
  }
  return std::move(parsed.dataset);
}

void save_dataset(const QraDataset& dataset, const std::filesystem::path& path, DatasetFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << (resolve(format, path) == DatasetFormat::Json ? serialize_json(dataset) : serialize_csv(dataset));
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

}  // namespace qra
