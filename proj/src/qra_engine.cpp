#include "qra/qra_engine.hpp"

#include <algorithm>

#include "qra/error.hpp"

namespace qra {

namespace {

ConditionVerdict verdict_for(const std::vector<std::vector<ConditionValue>>& rows, std::size_t col) {
  const ConditionValue* first_known = nullptr;
  bool has_unknown = false;
  for (const auto& row : rows) {
    const ConditionValue& v = row[col];
    if (!v.is_known()) {
      has_unknown = true;
      continue;
    }
    if (first_known == nullptr) {
      first_known = &v;
    } else if (!first_known->agrees_with(v)) {
      return ConditionVerdict::Differs;
    }
  }
  return has_unknown ? ConditionVerdict::HasUnknown : ConditionVerdict::AllSame;
}

QraReport assess_measurements(const QraDataset& dataset, std::string_view object,
                              std::string_view measurand, std::vector<Measurement> kept) {
  const Measurand& m = *dataset.find_measurand(measurand);
  if (kept.size() < 2) {
    throw Error(ErrorKind::InvalidSampleSize,
                "(" + std::string(object) + ", " + std::string(measurand) + ") has " +
                    std::to_string(kept.size()) + " measurement(s); at least 2 are required");
  }

  std::vector<double> values;
  values.reserve(kept.size());
  for (const auto& k : kept) values.push_back(k.value);

  QraReport report;
  report.object = *dataset.find_object(object);
  report.measurand = m;
  report.schema = dataset.schema;
  report.diff = condition_diff(kept, dataset.schema);
  report.classification = classify(report.diff);
  report.precision = cv_star_pipeline(values, m.scale_min);
  report.measurements = std::move(kept);
  return report;
}

}  // namespace

ConditionDiffMatrix condition_diff(std::span<const Measurement> measurements,
                                   const ConditionSchema& schema) {
  if (measurements.empty()) {
    throw Error(ErrorKind::EmptyGroup, "condition_diff needs at least one measurement");
  }
  const auto& head = measurements.front();
  for (const auto& m : measurements) {
    if (m.object != head.object || m.measurand != head.measurand) {
      throw Error(ErrorKind::MixedGroup, "group mixes (" + head.object + ", " + head.measurand +
                                             ") with (" + m.object + ", " + m.measurand + ")");
    }
  }

  ConditionDiffMatrix diff;
  diff.conditions = schema.names();
  diff.rows.reserve(measurements.size());
  for (const auto& m : measurements) {
    std::vector<ConditionValue> row;
    row.reserve(diff.conditions.size());
    for (const auto& name : diff.conditions) row.push_back(m.condition(name));
    diff.rows.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < diff.conditions.size(); ++c) {
    diff.verdicts.push_back(verdict_for(diff.rows, c));
  }
  return diff;
}

Classification classify(const ConditionDiffMatrix& diff) noexcept {
  bool all_same = true;
  for (auto v : diff.verdicts) {
    if (v == ConditionVerdict::Differs) return Classification::Reproducibility;
    if (v != ConditionVerdict::AllSame) all_same = false;
  }
  return all_same ? Classification::Repeatability : Classification::Indeterminate;
}

QraReport run_qra_test(const QraDataset& dataset, std::string_view object,
                       std::string_view measurand) {
  return assess_measurements(dataset, object, measurand, group(dataset, object, measurand));
}

bool matches(const Measurement& m, std::span<const ConditionMatch> predicate) noexcept {
  return std::all_of(predicate.begin(), predicate.end(), [&](const ConditionMatch& c) {
    auto it = m.conditions.find(c.condition);
    return it != m.conditions.end() && it->second.is_known() && it->second.label() == c.label;
  });
}

QraReport subgroup_assess(const QraDataset& dataset, std::string_view object,
                          std::string_view measurand, std::span<const ConditionMatch> predicate) {
  SubgroupSelector selector;
  selector.where.assign(predicate.begin(), predicate.end());
  return subgroup_assess(dataset, object, measurand, selector);
}

QraReport subgroup_assess(const QraDataset& dataset, std::string_view object,
                          std::string_view measurand, const SubgroupSelector& selector) {
  for (const auto& c : selector.where) {
    if (!dataset.schema.contains(c.condition)) {
      throw Error(ErrorKind::UnknownCondition, "unknown condition '" + c.condition + "'");
    }
  }
  auto members = group(dataset, object, measurand);
  for (auto pos : selector.positions) {
    if (pos < 1 || pos > members.size()) {
      throw Error(ErrorKind::InvalidArgument,
                  "position " + std::to_string(pos) + " is outside the group of " +
                      std::to_string(members.size()) + " measurements");
    }
  }

  std::vector<Measurement> kept;
  std::vector<Measurement> excluded;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const bool in_positions =
        selector.positions.empty() ||
        std::find(selector.positions.begin(), selector.positions.end(), i + 1) !=
            selector.positions.end();
    if (in_positions && matches(members[i], selector.where)) {
      kept.push_back(std::move(members[i]));
    } else {
      excluded.push_back(std::move(members[i]));
    }
  }
  if (kept.empty()) {
    throw Error(ErrorKind::EmptyGroup, "subgroup filter leaves no measurements for (" +
                                           std::string(object) + ", " + std::string(measurand) +
                                           ")");
  }

  auto report = assess_measurements(dataset, object, measurand, std::move(kept));
  report.selector = selector;
  report.excluded = std::move(excluded);
  return report;
}

std::string_view to_string(ConditionVerdict verdict) noexcept {
  switch (verdict) {
    case ConditionVerdict::AllSame: return "AllSame";
    case ConditionVerdict::Differs: return "Differs";
    case ConditionVerdict::HasUnknown: return "HasUnknown";
  }
  return "HasUnknown";
}

std::string_view to_string(Classification classification) noexcept {
  switch (classification) {
    case Classification::Repeatability: return "Repeatability";
    case Classification::Reproducibility: return "Reproducibility";
    case Classification::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

}  // namespace qra
