#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "qra/error.hpp"
#include "qra/measurement_model.hpp"

namespace qra::test {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::Io;
}

// One object "sys" and one measurand "m" on a 0-based scale; each row gives a
// value and one label per default-schema condition ("" means Unknown).
inline QraDataset tiny_dataset(const std::vector<std::pair<double, std::vector<std::string>>>& rows) {
  QraDataset ds;
  ds.schema = default_condition_schema();
  ds.objects.push_back({"sys", "System", std::nullopt});
  ds.measurands.push_back({"m", "Metric", "score", 0.0, 100.0, ValueKind::Continuous});
  const auto names = ds.schema.names();
  int k = 0;
  for (const auto& [value, labels] : rows) {
    Measurement m;
    m.object = "sys";
    m.measurand = "m";
    m.value = value;
    m.source = "run" + std::to_string(++k);
    for (std::size_t c = 0; c < names.size(); ++c) {
      const std::string& label = c < labels.size() ? labels[c] : std::string("x");
      m.conditions.emplace(names[c], label.empty() ? ConditionValue::unknown() : ConditionValue::known(label));
    }
    ds.measurements.push_back(std::move(m));
  }
  return ds;
}

}  // namespace qra::test
