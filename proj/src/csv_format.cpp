#include "csv_format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "qra/dataset_io.hpp"
#include "qra/error.hpp"

namespace qra::detail {

namespace {

constexpr std::string_view kConditionPrefix = "cond.";
constexpr std::string_view kMagic = "#qra-dataset";

bool is_blank(const CsvRecord& r) { return r.fields.size() == 1 && r.fields[0].text.empty() && !r.fields[0].quoted; }

bool needs_quotes(std::string_view s) {
  if (s.empty()) return false;
  if (s.front() == '#' || s.front() == ' ' || s.back() == ' ') return true;
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_field(std::string& out, std::string_view s) {
  if (!needs_quotes(s)) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    append_field(out, fields[i]);
  }
  out += '\n';
}

// Like append_row, but the leading tag is written bare so it reads back as a directive.
void append_directive(std::string& out, std::string_view tag, const std::vector<std::string>& fields) {
  out += tag;
  for (const auto& f : fields) {
    out += ',';
    append_field(out, f);
  }
  out += '\n';
}

struct Directives {
  std::vector<ConditionSpec> conditions;
  std::vector<ObjectRef> objects;
  std::vector<Measurand> measurands;
};

const CsvField& field_at(const CsvRecord& r, std::size_t i) {
  static const CsvField empty{};
  return i < r.fields.size() ? r.fields[i] : empty;
}

void parse_directive(const CsvRecord& r, Directives& d) {
  const std::string& tag = r.fields[0].text;
  auto need = [&](std::size_t min, std::size_t max) {
    if (r.fields.size() < min || r.fields.size() > max) {
      throw ParseError(tag + " expects " + std::to_string(min - 1) +
                           (min == max ? "" : "-" + std::to_string(max - 1)) + " fields, got " +
                           std::to_string(r.fields.size() - 1),
                       r.line, 1);
    }
  };

  if (tag == "#condition") {
    need(3, 3);
    auto category = parse_condition_category(r.fields[2].text);
    if (!category) {
      throw ParseError("unknown condition category '" + r.fields[2].text + "'", r.line,
                       r.fields[2].column);
    }
    d.conditions.push_back({r.fields[1].text, *category});
  } else if (tag == "#object") {
    need(2, 4);
    ObjectRef o{r.fields[1].text, field_at(r, 2).text, std::nullopt};
    if (o.display_name.empty()) o.display_name = o.id;
    if (!field_at(r, 3).text.empty()) o.description = field_at(r, 3).text;
    d.objects.push_back(std::move(o));
  } else if (tag == "#measurand") {
    need(2, 7);
    Measurand m;
    m.id = r.fields[1].text;
    m.display_name = field_at(r, 2).text.empty() ? m.id : field_at(r, 2).text;
    m.unit = field_at(r, 3).text;
    auto real = [&](std::size_t i, double& out) {
      if (!parse_real(r.fields[i].text, out)) {
        throw ParseError("invalid number '" + r.fields[i].text + "'", r.line, r.fields[i].column);
      }
    };
    if (!field_at(r, 4).text.empty()) real(4, m.scale_min);
    if (!field_at(r, 5).text.empty()) {
      double max = 0.0;
      real(5, max);
      m.scale_max = max;
    }
    if (!field_at(r, 6).text.empty()) {
      auto kind = parse_value_kind(r.fields[6].text);
      if (!kind) {
        throw ParseError("unknown value kind '" + r.fields[6].text + "'", r.line, r.fields[6].column);
      }
      m.value_kind = *kind;
    }
    d.measurands.push_back(std::move(m));
  }
  // Any other '#' line is a comment.
}

ConditionCategory default_category(std::string_view name) {
  static const ConditionSchema defaults = default_condition_schema();
  const auto* spec = defaults.find(name);
  return spec ? spec->category : ConditionCategory::MeasurementProcedure;
}

}  // namespace

std::vector<CsvRecord> read_csv_records(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  if (text.starts_with("\xEF\xBB\xBF")) i = 3;  // UTF-8 BOM

  while (i < text.size()) {
    CsvRecord record;
    record.line = line;
    bool end_of_record = false;
    while (!end_of_record) {
      CsvField field;
      field.column = column;
      if (i < text.size() && text[i] == '"') {
        field.quoted = true;
        const std::size_t open_line = line, open_column = column;
        ++i;
        ++column;
        for (;;) {
          if (i >= text.size()) throw ParseError("unterminated quoted field", open_line, open_column);
          const char c = text[i];
          if (c == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              field.text += '"';
              i += 2;
              column += 2;
              continue;
            }
            ++i;
            ++column;
            break;
          }
          field.text += c;
          ++i;
          if (c == '\n') {
            ++line;
            column = 1;
          } else {
            ++column;
          }
        }
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw ParseError("unexpected character after closing quote", line, column);
        }
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') throw ParseError("stray quote in unquoted field", line, column);
          field.text += text[i];
          ++i;
          ++column;
        }
      }
      record.fields.push_back(std::move(field));

      if (i >= text.size()) {
        end_of_record = true;
      } else if (text[i] == ',') {
        ++i;
        ++column;
      } else {
        if (text[i] == '\r') ++i;
        if (i < text.size() && text[i] == '\n') ++i;
        ++line;
        column = 1;
        end_of_record = true;
      }
    }
    if (!is_blank(record)) records.push_back(std::move(record));
  }
  return records;
}

bool parse_real(std::string_view text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

CsvParse parse_csv_with_lines(std::string_view text) {
  const auto records = read_csv_records(text);
  if (records.empty()) throw ParseError("empty dataset file", 1, 1);

  Directives directives;
  std::size_t r = 0;
  for (; r < records.size() && records[r].fields[0].text.starts_with('#') && !records[r].fields[0].quoted; ++r) {
    parse_directive(records[r], directives);
  }
  if (r == records.size()) throw ParseError("missing header row", records.back().line + 1, 1);

  const CsvRecord& header = records[r++];
  std::map<std::string, std::size_t> reserved;
  std::vector<std::pair<std::string, std::size_t>> condition_columns;
  for (std::size_t c = 0; c < header.fields.size(); ++c) {
    const std::string& name = header.fields[c].text;
    if (name.starts_with(kConditionPrefix)) {
      std::string cond = name.substr(kConditionPrefix.size());
      if (cond.empty()) throw ParseError("empty condition column name", header.line, header.fields[c].column);
      condition_columns.emplace_back(std::move(cond), c);
    } else if (name == "object" || name == "measurand" || name == "value" || name == "source" ||
               name == "timestamp") {
      if (!reserved.emplace(name, c).second) {
        throw ParseError("duplicate column '" + name + "'", header.line, header.fields[c].column);
      }
    } else {
      throw Error(ErrorKind::SchemaError, "line " + std::to_string(header.line) +
                                              ": unknown column '" + name + "'");
    }
  }
  for (const char* required : {"object", "measurand", "value"}) {
    if (!reserved.contains(required)) {
      throw Error(ErrorKind::SchemaError, "missing required column '" + std::string(required) + "'");
    }
  }

  CsvParse out;
  QraDataset& ds = out.dataset;
  if (!directives.conditions.empty()) {
    ds.schema.conditions = directives.conditions;
    std::set<std::string> declared, present;
    for (const auto& c : ds.schema.conditions) declared.insert(c.name);
    for (const auto& [name, col] : condition_columns) present.insert(name);
    for (const auto& name : declared) {
      if (!present.contains(name)) {
        throw Error(ErrorKind::SchemaError, "missing column 'cond." + name + "'");
      }
    }
    for (const auto& name : present) {
      if (!declared.contains(name)) {
        throw Error(ErrorKind::SchemaError, "column 'cond." + name + "' has no #condition declaration");
      }
    }
  } else {
    for (const auto& [name, col] : condition_columns) {
      ds.schema.conditions.push_back({name, default_category(name)});
    }
  }

  const bool declared_objects = !directives.objects.empty();
  const bool declared_measurands = !directives.measurands.empty();
  ds.objects = std::move(directives.objects);
  ds.measurands = std::move(directives.measurands);

  for (; r < records.size(); ++r) {
    const CsvRecord& row = records[r];
    if (row.fields[0].text.starts_with('#') && !row.fields[0].quoted) continue;
    if (row.fields.size() != header.fields.size()) {
      throw ParseError("expected " + std::to_string(header.fields.size()) + " fields, got " +
                           std::to_string(row.fields.size()),
                       row.line, 1);
    }
    Measurement m;
    m.object = row.fields[reserved["object"]].text;
    m.measurand = row.fields[reserved["measurand"]].text;
    const CsvField& value = row.fields[reserved["value"]];
    if (!parse_real(value.text, m.value)) {
      throw ParseError("invalid number '" + value.text + "'", row.line, value.column);
    }
    if (auto it = reserved.find("source"); it != reserved.end()) m.source = row.fields[it->second].text;
    if (auto it = reserved.find("timestamp"); it != reserved.end()) {
      const CsvField& ts = row.fields[it->second];
      if (!ts.text.empty()) {
        m.timestamp = parse_date(ts.text);
        if (!m.timestamp) throw ParseError("invalid date '" + ts.text + "' (want YYYY-MM-DD)", row.line, ts.column);
      }
    }
    for (const auto& [name, col] : condition_columns) {
      const std::string& label = row.fields[col].text;
      m.conditions.emplace(name, label.empty() ? ConditionValue::unknown() : ConditionValue::known(label));
    }

    if (!declared_objects && !ds.find_object(m.object)) ds.objects.push_back({m.object, m.object, std::nullopt});
    if (!declared_measurands && !ds.find_measurand(m.measurand)) {
      Measurand auto_declared;
      auto_declared.id = m.measurand;
      auto_declared.display_name = m.measurand;
      ds.measurands.push_back(std::move(auto_declared));
    }
    ds.measurements.push_back(std::move(m));
    out.measurement_lines.push_back(row.line);
  }
  return out;
}

}  // namespace qra::detail

namespace qra {

QraDataset parse_csv_dataset(std::string_view text) { return detail::parse_csv_with_lines(text).dataset; }

std::string serialize_csv(const QraDataset& dataset) {
  using detail::append_directive;
  using detail::append_row;
  using detail::format_real;
  std::string out;
  out += std::string(detail::kMagic) + ",1\n";
  for (const auto& c : dataset.schema.conditions) {
    append_directive(out, "#condition", {c.name, std::string(to_string(c.category))});
  }
  for (const auto& o : dataset.objects) {
    append_directive(out, "#object", {o.id, o.display_name, o.description.value_or("")});
  }
  for (const auto& m : dataset.measurands) {
    append_directive(out, "#measurand", {m.id, m.display_name, m.unit, format_real(m.scale_min),
                     m.scale_max ? format_real(*m.scale_max) : "", std::string(to_string(m.value_kind))});
  }

  const bool with_timestamp = std::any_of(dataset.measurements.begin(), dataset.measurements.end(),
                                          [](const Measurement& m) { return m.timestamp.has_value(); });
  std::vector<std::string> header{"object", "measurand", "value", "source"};
  if (with_timestamp) header.emplace_back("timestamp");
  for (const auto& c : dataset.schema.conditions) header.push_back("cond." + c.name);
  append_row(out, header);

  for (const auto& m : dataset.measurements) {
    std::vector<std::string> row{m.object, m.measurand, format_real(m.value), m.source};
    if (with_timestamp) row.push_back(m.timestamp ? format_date(*m.timestamp) : "");
    for (const auto& c : dataset.schema.conditions) {
      const ConditionValue v = m.condition(c.name);
      row.push_back(v.is_known() ? v.label() : "");
    }
    append_row(out, row);
  }
  return out;
}

}  // namespace qra
