#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qra {

enum class ValueKind { Continuous, Percentage };

/// The quantity intended to be measured, with the scale information needed to
/// shift values so that the lower end of the scale sits at 0.
struct Measurand {
  std::string id;
  std::string display_name;
  std::string unit;
  double scale_min = 0.0;
  std::optional<double> scale_max;
  ValueKind value_kind = ValueKind::Continuous;

  bool operator==(const Measurand&) const = default;
};

/// The system (variant) being evaluated.
struct ObjectRef {
  std::string id;
  std::string display_name;
  std::optional<std::string> description;

  bool operator==(const ObjectRef&) const = default;
};

enum class ConditionCategory { ObjectCondition, MeasurementMethod, MeasurementProcedure };

struct ConditionSpec {
  std::string name;
  ConditionCategory category = ConditionCategory::MeasurementProcedure;

  bool operator==(const ConditionSpec&) const = default;
};

/// Ordered, categorized list of condition names shared by every measurement
/// in a dataset.
struct ConditionSchema {
  std::vector<ConditionSpec> conditions;

  bool contains(std::string_view name) const;
  const ConditionSpec* find(std::string_view name) const;
  std::vector<std::string> names() const;

  bool operator==(const ConditionSchema&) const = default;
};

/// The seven-condition schema: two object conditions, two measurement method
/// conditions and three measurement procedure conditions.
ConditionSchema default_condition_schema();

/// A condition value is either a known, non-empty label or Unknown.
///
/// Two values *agree* only when both are known and their labels are equal;
/// an Unknown agrees with nothing, not even another Unknown. `operator==` is
/// structural (Unknown == Unknown) and exists for data round-trips only; the
/// assessment logic always goes through `agrees_with`.
class ConditionValue {
 public:
  static ConditionValue unknown() { return ConditionValue{}; }
  static ConditionValue known(std::string label);

  bool is_known() const noexcept { return label_.has_value(); }
  /// Requires is_known().
  const std::string& label() const { return *label_; }

  bool agrees_with(const ConditionValue& other) const noexcept {
    return is_known() && other.is_known() && *label_ == *other.label_;
  }

  bool operator==(const ConditionValue&) const = default;

 private:
  ConditionValue() = default;
  std::optional<std::string> label_;
};

using Date = std::chrono::year_month_day;

/// One measured quantity value for an (object, measurand) pair.
struct Measurement {
  std::string object;
  std::string measurand;
  double value = 0.0;
  std::map<std::string, ConditionValue> conditions;
  std::string source;
  // Provenance only; never used in computation.
  std::optional<Date> timestamp;

  /// The value for `name`, or Unknown when the entry is absent.
  ConditionValue condition(std::string_view name) const;

  bool operator==(const Measurement&) const = default;
};

struct QraDataset {
  ConditionSchema schema;
  std::vector<ObjectRef> objects;
  std::vector<Measurand> measurands;
  std::vector<Measurement> measurements;

  const ObjectRef* find_object(std::string_view id) const;
  const Measurand* find_measurand(std::string_view id) const;

  bool operator==(const QraDataset&) const = default;
};

/// An (object, measurand) pair in first-appearance order.
struct PairKey {
  std::string object;
  std::string measurand;

  auto operator<=>(const PairKey&) const = default;
};

/// All measurements for (object, measurand), in dataset order.
/// Throws UnknownObject / UnknownMeasurand for undeclared ids and EmptyGroup
/// when nothing matches.
std::vector<Measurement> group(const QraDataset& dataset, std::string_view object,
                               std::string_view measurand);

/// Distinct (object, measurand) pairs that occur in the measurements, ordered
/// by first appearance.
std::vector<PairKey> measurement_pairs(const QraDataset& dataset);

std::string_view to_string(ConditionCategory category) noexcept;
std::optional<ConditionCategory> parse_condition_category(std::string_view text) noexcept;
std::string_view to_string(ValueKind kind) noexcept;
std::optional<ValueKind> parse_value_kind(std::string_view text) noexcept;

std::string format_date(const Date& date);
/// Parses YYYY-MM-DD; returns nullopt for anything else or an invalid date.
std::optional<Date> parse_date(std::string_view text);

}  // namespace qra
