#include "qra/measurement_model.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "qra/error.hpp"

namespace qra {

bool ConditionSchema::contains(std::string_view name) const { return find(name) != nullptr; }

const ConditionSpec* ConditionSchema::find(std::string_view name) const {
  auto it = std::find_if(conditions.begin(), conditions.end(),
                         [&](const ConditionSpec& c) { return c.name == name; });
  return it == conditions.end() ? nullptr : &*it;
}

std::vector<std::string> ConditionSchema::names() const {
  std::vector<std::string> out;
  out.reserve(conditions.size());
  for (const auto& c : conditions) out.push_back(c.name);
  return out;
}

ConditionSchema default_condition_schema() {
  using enum ConditionCategory;
  return ConditionSchema{{
      {"system_code", ObjectCondition},
      {"compile_training_info", ObjectCondition},
      {"method_specification", MeasurementMethod},
      {"implementation", MeasurementMethod},
      {"procedure", MeasurementProcedure},
      {"test_set", MeasurementProcedure},
      {"performed_by", MeasurementProcedure},
  }};
}

ConditionValue ConditionValue::known(std::string label) {
  if (label.empty()) {
    throw Error(ErrorKind::InvalidArgument, "known condition labels must be non-empty");
  }
  ConditionValue v;
  v.label_ = std::move(label);
  return v;
}

ConditionValue Measurement::condition(std::string_view name) const {
  auto it = conditions.find(std::string(name));
  return it == conditions.end() ? ConditionValue::unknown() : it->second;
}

const ObjectRef* QraDataset::find_object(std::string_view id) const {
  auto it = std::find_if(objects.begin(), objects.end(),
                         [&](const ObjectRef& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

const Measurand* QraDataset::find_measurand(std::string_view id) const {
  auto it = std::find_if(measurands.begin(), measurands.end(),
                         [&](const Measurand& m) { return m.id == id; });
  return it == measurands.end() ? nullptr : &*it;
}

std::vector<Measurement> group(const QraDataset& dataset, std::string_view object,
                               std::string_view measurand) {
  if (dataset.find_object(object) == nullptr) {
    throw Error(ErrorKind::UnknownObject, "unknown object '" + std::string(object) + "'");
  }
  if (dataset.find_measurand(measurand) == nullptr) {
    throw Error(ErrorKind::UnknownMeasurand,
                "unknown measurand '" + std::string(measurand) + "'");
  }
  std::vector<Measurement> out;
  for (const auto& m : dataset.measurements) {
    if (m.object == object && m.measurand == measurand) out.push_back(m);
  }
  if (out.empty()) {
    throw Error(ErrorKind::EmptyGroup, "no measurements for (" + std::string(object) + ", " +
                                           std::string(measurand) + ")");
  }
  return out;
}

std::vector<PairKey> measurement_pairs(const QraDataset& dataset) {
  std::vector<PairKey> out;
  for (const auto& m : dataset.measurements) {
    PairKey key{m.object, m.measurand};
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(std::move(key));
  }
  return out;
}

std::string_view to_string(ConditionCategory category) noexcept {
  switch (category) {
    case ConditionCategory::ObjectCondition: return "object_condition";
    case ConditionCategory::MeasurementMethod: return "measurement_method";
    case ConditionCategory::MeasurementProcedure: return "measurement_procedure";
  }
  return "measurement_procedure";
}

std::optional<ConditionCategory> parse_condition_category(std::string_view text) noexcept {
  if (text == "object_condition") return ConditionCategory::ObjectCondition;
  if (text == "measurement_method") return ConditionCategory::MeasurementMethod;
  if (text == "measurement_procedure") return ConditionCategory::MeasurementProcedure;
  return std::nullopt;
}

std::string_view to_string(ValueKind kind) noexcept {
  return kind == ValueKind::Percentage ? "percentage" : "continuous";
}

std::optional<ValueKind> parse_value_kind(std::string_view text) noexcept {
  if (text == "continuous") return ValueKind::Continuous;
  if (text == "percentage") return ValueKind::Percentage;
  return std::nullopt;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto parse = [&](std::size_t pos, std::size_t len, auto& out) {
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && ptr == text.data() + pos + len;
  };
  if (!parse(0, 4, y) || !parse(5, 2, m) || !parse(8, 2, d)) return std::nullopt;
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

}  // namespace qra
