#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qra/measurement_model.hpp"
#include "qra/precision.hpp"

namespace qra {

enum class ConditionVerdict { AllSame, Differs, HasUnknown };

enum class Classification { Repeatability, Reproducibility, Indeterminate };

/// Which conditions are the same and which differ across a group.
///
/// Per condition: Differs when at least two known labels differ, otherwise
/// HasUnknown when any value is Unknown, otherwise AllSame. A condition with
/// both known differences and unknowns is therefore Differs.
struct ConditionDiffMatrix {
  std::vector<std::string> conditions;
  std::vector<std::vector<ConditionValue>> rows;  // rows[measurement][condition]
  std::vector<ConditionVerdict> verdicts;

  bool operator==(const ConditionDiffMatrix&) const = default;
};

/// One conjunct of a subgroup filter: the condition must have a known value
/// equal to `label`.
struct ConditionMatch {
  std::string condition;
  std::string label;

  bool operator==(const ConditionMatch&) const = default;
};

/// Subgroup filter. A measurement is kept when it satisfies every entry of
/// `where`; when `positions` is non-empty it must also sit at one of the
/// listed 1-based positions within its (object, measurand) group.
struct SubgroupSelector {
  std::vector<ConditionMatch> where;
  std::vector<std::size_t> positions;

  bool empty() const noexcept { return where.empty() && positions.empty(); }
  bool operator==(const SubgroupSelector&) const = default;
};

/// A complete QRA test result for one (object, measurand) pair.
struct QraReport {
  ObjectRef object;
  Measurand measurand;
  std::vector<Measurement> measurements;
  ConditionSchema schema;
  ConditionDiffMatrix diff;
  Classification classification = Classification::Indeterminate;
  PrecisionResult precision;
  // Subgroup reports only: the filter and the group members it dropped.
  SubgroupSelector selector;
  std::vector<Measurement> excluded;

  bool operator==(const QraReport&) const = default;
};

ConditionDiffMatrix condition_diff(std::span<const Measurement> measurements,
                                   const ConditionSchema& schema);

Classification classify(const ConditionDiffMatrix& diff) noexcept;

/// Runs the full procedure for one pair: group, diff, classify, precision.
/// Throws EmptyGroup, InvalidSampleSize (n = 1) and DegenerateMean.
QraReport run_qra_test(const QraDataset& dataset, std::string_view object,
                       std::string_view measurand);

/// run_qra_test over the measurements that satisfy `predicate`
/// (conjunctive equality on known condition labels).
QraReport subgroup_assess(const QraDataset& dataset, std::string_view object,
                          std::string_view measurand, std::span<const ConditionMatch> predicate);

QraReport subgroup_assess(const QraDataset& dataset, std::string_view object,
                          std::string_view measurand, const SubgroupSelector& selector);

/// True when `m` satisfies every conjunct.
bool matches(const Measurement& m, std::span<const ConditionMatch> predicate) noexcept;

std::string_view to_string(ConditionVerdict verdict) noexcept;
std::string_view to_string(Classification classification) noexcept;

}  // namespace qra
