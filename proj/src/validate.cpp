#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "qra/dataset_io.hpp"

namespace qra {

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::size_t errors = 0;
  std::string detail;
  for (const auto& issue : issues) {
    if (issue.severity != Severity::Error) continue;
    ++errors;
    detail += "\n  " + issue.location + ": " + issue.message;
  }
  return "dataset has " + std::to_string(errors) + " validation error(s):" + detail;
}

std::string measurement_location(std::size_t index) {
  return "measurement " + std::to_string(index + 1);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(ErrorKind::ValidationError, join_issues(issues)), issues_(std::move(issues)) {}

bool has_errors(const std::vector<ValidationIssue>& issues) noexcept {
  return std::any_of(issues.begin(), issues.end(),
                     [](const ValidationIssue& i) { return i.severity == Severity::Error; });
}

std::vector<ValidationIssue> validate_dataset(const QraDataset& dataset) {
  std::vector<ValidationIssue> issues;
  auto error = [&](std::string location, std::string message,
                   std::optional<std::size_t> index = std::nullopt) {
    issues.push_back({Severity::Error, std::move(location), std::move(message), index});
  };

  std::set<std::string> seen;
  for (const auto& c : dataset.schema.conditions) {
    if (c.name.empty()) {
      error("schema", "condition names must be non-empty");
    } else if (!seen.insert(c.name).second) {
      error("schema", "duplicate condition '" + c.name + "'");
    }
  }

  seen.clear();
  for (const auto& o : dataset.objects) {
    if (o.id.empty()) {
      error("objects", "object ids must be non-empty");
    } else if (!seen.insert(o.id).second) {
      error("object " + o.id, "duplicate object id");
    }
  }

  seen.clear();
  for (const auto& m : dataset.measurands) {
    const std::string where = "measurand " + m.id;
    if (m.id.empty()) {
      error("measurands", "measurand ids must be non-empty");
    } else if (!seen.insert(m.id).second) {
      error(where, "duplicate measurand id");
    }
    if (!std::isfinite(m.scale_min)) error(where, "scale_min must be finite");
    if (m.scale_max && !(*m.scale_max > m.scale_min)) {
      error(where, "scale_max " + format_number(*m.scale_max) +
                       " must be greater than scale_min " + format_number(m.scale_min));
    }
  }

  std::map<PairKey, std::size_t> group_sizes;
  for (std::size_t i = 0; i < dataset.measurements.size(); ++i) {
    const auto& m = dataset.measurements[i];
    const std::string where = measurement_location(i);
    const bool object_ok = dataset.find_object(m.object) != nullptr;
    const Measurand* measurand = dataset.find_measurand(m.measurand);
    if (!object_ok) error(where, "references undeclared object '" + m.object + "'", i);
    if (measurand == nullptr) {
      error(where, "references undeclared measurand '" + m.measurand + "'", i);
    }

    if (!std::isfinite(m.value)) {
      error(where, "value must be finite", i);
    } else if (measurand != nullptr) {
      if (m.value < measurand->scale_min) {
        error(where, "value " + format_number(m.value) + " is below scale_min " +
                         format_number(measurand->scale_min) + " of measurand '" +
                         measurand->id + "'", i);
      } else if (measurand->scale_max && m.value > *measurand->scale_max) {
        error(where, "value " + format_number(m.value) + " is above scale_max " +
                         format_number(*measurand->scale_max) + " of measurand '" +
                         measurand->id + "'", i);
      }
    }

    for (const auto& c : dataset.schema.conditions) {
      if (!m.conditions.contains(c.name)) {
        error(where, "missing value for condition '" + c.name + "'", i);
      }
    }
    for (const auto& [name, value] : m.conditions) {
      if (!dataset.schema.contains(name)) {
        error(where, "condition '" + name + "' is not in the schema", i);
      }
    }

    if (object_ok && measurand != nullptr) ++group_sizes[{m.object, m.measurand}];
  }

  for (const auto& key : measurement_pairs(dataset)) {
    auto it = group_sizes.find(key);
    if (it != group_sizes.end() && it->second == 1) {
      issues.push_back({Severity::Warning, "(" + key.object + ", " + key.measurand + ")",
                        "only one measurement; at least 2 are needed for a QRA test",
                        std::nullopt});
    }
  }
  return issues;
}

}  // namespace qra
