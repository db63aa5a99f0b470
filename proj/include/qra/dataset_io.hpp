#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qra/error.hpp"
#include "qra/measurement_model.hpp"

namespace qra {

enum class Severity { Error, Warning };

/// A problem found by validate_dataset. Errors block assessment; warnings
/// do not.
struct ValidationIssue {
  Severity severity = Severity::Error;
  std::string location;  // entity id, "measurement <k>" or "line <k>"
  std::string message;
  // 0-based index into QraDataset::measurements when the issue is about one.
  std::optional<std::size_t> measurement_index;

  bool operator==(const ValidationIssue&) const = default;
};

/// Raised by load_dataset when validation finds errors.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);

  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

enum class DatasetFormat { Csv, Json, Auto };

std::optional<DatasetFormat> parse_dataset_format(std::string_view text) noexcept;

/// All issues in a dataset; an empty list (or warnings only) means the dataset
/// is assessable. (object, measurand) pairs with a single measurement are
/// reported as warnings.
std::vector<ValidationIssue> validate_dataset(const QraDataset& dataset);

bool has_errors(const std::vector<ValidationIssue>& issues) noexcept;

/// Loads and validates a dataset. Auto picks the format from the extension
/// (.json -> JSON, anything else -> CSV).
/// Throws Error(Io), ParseError, Error(SchemaError) or ValidationError.
QraDataset load_dataset(const std::filesystem::path& path, DatasetFormat format = DatasetFormat::Auto);

QraDataset parse_csv_dataset(std::string_view text);
QraDataset parse_json_dataset(std::string_view text);

std::string serialize_csv(const QraDataset& dataset);
std::string serialize_json(const QraDataset& dataset);

/// Writes `dataset` to `path`; Auto picks the format from the extension.
void save_dataset(const QraDataset& dataset, const std::filesystem::path& path,
                  DatasetFormat format = DatasetFormat::Auto);

/// The 116 measurements of the essay scoring, text simplification and
/// football report generation reproductions, with their conditions of
/// measurement.
const QraDataset& bundled_paper_dataset();

}  // namespace qra
