#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qra/qra_engine.hpp"

namespace qra {

enum class RenderFormat { Text, Markdown, Csv, Json };

struct RenderSpec {
  RenderFormat format = RenderFormat::Text;
  int decimals_cv = 3;
  int decimals_stats = 2;
  bool include_caveats = true;
  // Order rows by ascending CV* instead of input order.
  bool sort_by_cv = false;
  // ANSI bold headers; text format only.
  bool color = false;
};

std::optional<RenderFormat> parse_render_format(std::string_view text) noexcept;

/// One row per report: object, measurand, measured quantity values, n, mean,
/// stdev (s*), stdev 95% CI and CV*. The CSV header is fixed to
/// object,measurand,n,mean,stdev,ci_lo,ci_hi,cv_star. JSON carries every field
/// at full precision. Throws InvalidArgument for an empty list or decimals
/// outside [0, 10].
std::string render_precision_table(std::span<const QraReport> reports, const RenderSpec& spec);

/// One row per measurement and one column per schema condition; Unknown
/// values print as "?". Footer lines give the per-condition verdicts and the
/// classification.
std::string render_condition_matrix(const QraReport& report, const RenderSpec& spec);

/// Fixed-point formatting that never prints a negative zero.
std::string format_fixed(double value, int decimals);

}  // namespace qra
