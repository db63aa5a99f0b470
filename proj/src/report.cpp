#include "qra/report.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "csv_format.hpp"
#include "qra/error.hpp"

namespace qra {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kCaveats[] = {
    "Statistics are computed on values shifted so that each measurand's scale starts at 0.",
    "The stdev confidence interval assumes normally distributed measured quantity values; "
    "its standard error is an approximation.",
};

using Table = std::vector<std::vector<std::string>>;

// Terminal columns taken by a UTF-8 string (one per code point).
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string render_text_table(const std::vector<std::string>& header, const Table& rows, bool color) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) widths[c] = display_width(header[c]);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], display_width(row[c]));
  }

  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out += cells[c];
      if (c + 1 < cells.size()) out += std::string(widths[c] - display_width(cells[c]) + 2, ' ');
    }
    return out + "\n";
  };

  std::string out = line(header);
  if (color) out = "\x1b[1m" + out.substr(0, out.size() - 1) + "\x1b[0m\n";
  for (const auto& row : rows) out += line(row);
  return out;
}

std::string escape_markdown(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string render_markdown_table(const std::vector<std::string>& header, const Table& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) out += " " + escape_markdown(c) + " |";
    return out + "\n";
  };
  std::string out = line(header);
  out += "|";
  for (std::size_t c = 0; c < header.size(); ++c) out += "---|";
  out += "\n";
  for (const auto& row : rows) out += line(row);
  return out;
}

std::string render_csv_table(const std::vector<std::string>& header, const Table& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ',';
      const auto& s = cells[c];
      if (s.find_first_of(",\"\r\n") != std::string::npos || (!s.empty() && s.front() == '#')) {
        out += '"';
        for (char ch : s) {
          if (ch == '"') out += '"';
          out += ch;
        }
        out += '"';
      } else {
        out += s;
      }
    }
    return out + "\n";
  };
  std::string out = line(header);
  for (const auto& row : rows) out += line(row);
  return out;
}

void check_spec(const RenderSpec& spec) {
  auto ok = [](int d) { return d >= 0 && d <= 10; };
  if (!ok(spec.decimals_cv) || !ok(spec.decimals_stats)) {
    throw Error(ErrorKind::InvalidArgument, "render decimals must lie in [0, 10]");
  }
}

std::string join_values(const std::vector<Measurement>& ms) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += ", ";
    out += detail::format_real(ms[i].value);
  }
  return out;
}

std::string pair_label(const QraReport& r) { return r.object.id + " / " + r.measurand.id; }

std::string describe_selector(const SubgroupSelector& selector) {
  std::vector<std::string> parts;
  for (const auto& c : selector.where) parts.push_back("cond." + c.condition + "=\"" + c.label + "\"");
  if (!selector.positions.empty()) {
    std::string p = "positions ";
    for (std::size_t i = 0; i < selector.positions.size(); ++i) {
      if (i) p += ",";
      p += std::to_string(selector.positions[i]);
    }
    parts.push_back(std::move(p));
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " and ";
    out += parts[i];
  }
  return out;
}

// Notes shown under text and markdown tables.
std::vector<std::string> report_notes(std::span<const QraReport* const> reports) {
  std::vector<std::string> notes;
  for (const QraReport* r : reports) {
    if (!r->selector.empty()) {
      std::string note = "subgroup " + pair_label(*r) + " where " + describe_selector(r->selector) +
                         ": kept " + std::to_string(r->measurements.size()) + ", excluded " +
                         std::to_string(r->excluded.size());
      if (!r->excluded.empty()) note += " (" + join_values(r->excluded) + ")";
      notes.push_back(std::move(note));
    }
    if (r->precision.degenerate_spread) {
      notes.push_back(pair_label(*r) + ": all values are equal; the stdev interval is a single point");
    }
  }
  return notes;
}

ordered_json condition_value_json(const ConditionValue& v) {
  return v.is_known() ? ordered_json(v.label()) : ordered_json(nullptr);
}

ordered_json measurement_json(const Measurement& m, const std::vector<std::string>& conditions) {
  ordered_json j{{"value", m.value}, {"source", m.source}};
  ordered_json cond = ordered_json::object();
  for (const auto& name : conditions) cond[name] = condition_value_json(m.condition(name));
  j["conditions"] = std::move(cond);
  return j;
}

ordered_json report_json(const QraReport& r) {
  const auto& p = r.precision;
  ordered_json j;
  j["object"] = {{"id", r.object.id}, {"display_name", r.object.display_name}};
  j["measurand"] = {{"id", r.measurand.id},
                    {"display_name", r.measurand.display_name},
                    {"unit", r.measurand.unit},
                    {"scale_min", r.measurand.scale_min},
                    {"scale_max", r.measurand.scale_max ? ordered_json(*r.measurand.scale_max) : ordered_json(nullptr)}};
  ordered_json values = ordered_json::array();
  for (const auto& m : r.measurements) values.push_back(m.value);
  j["values"] = std::move(values);
  j["n"] = p.n;
  j["mean"] = p.mean;
  j["s"] = p.s;
  j["s_star"] = p.s_star;
  j["se_s_star"] = p.se_s_star;
  j["ci95"] = {p.ci95.lo, p.ci95.hi};
  j["ci_half_width"] = p.ci_half_width;
  j["cv"] = p.cv;
  j["cv_star"] = p.cv_star;
  j["degenerate_spread"] = p.degenerate_spread;
  j["classification"] = to_string(r.classification);

  ordered_json verdicts = ordered_json::object();
  for (std::size_t c = 0; c < r.diff.conditions.size(); ++c) {
    verdicts[r.diff.conditions[c]] = to_string(r.diff.verdicts[c]);
  }
  ordered_json rows = ordered_json::array();
  for (const auto& m : r.measurements) rows.push_back(measurement_json(m, r.diff.conditions));
  j["conditions"] = {{"verdicts", std::move(verdicts)}, {"rows", std::move(rows)}};

  if (!r.selector.empty()) {
    ordered_json where = ordered_json::array();
    for (const auto& c : r.selector.where) where.push_back({{"condition", c.condition}, {"label", c.label}});
    ordered_json excluded = ordered_json::array();
    for (const auto& m : r.excluded) excluded.push_back(measurement_json(m, r.diff.conditions));
    j["subgroup"] = {{"where", std::move(where)},
                     {"positions", r.selector.positions},
                     {"excluded", std::move(excluded)}};
  }
  return j;
}

std::string interval_text(const Interval& ci, int decimals) {
  return "[" + format_fixed(ci.lo, decimals) + ", " + format_fixed(ci.hi, decimals) + "]";
}

}  // namespace

std::optional<RenderFormat> parse_render_format(std::string_view text) noexcept {
  if (text == "text") return RenderFormat::Text;
  if (text == "markdown") return RenderFormat::Markdown;
  if (text == "csv") return RenderFormat::Csv;
  if (text == "json") return RenderFormat::Json;
  return std::nullopt;
}

std::string format_fixed(double value, int decimals) {
  std::string out = fmt::format("{:.{}f}", value, decimals);
  if (out.starts_with('-') && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string render_precision_table(std::span<const QraReport> reports, const RenderSpec& spec) {
  check_spec(spec);
  if (reports.empty()) throw Error(ErrorKind::InvalidArgument, "no reports to render");

  std::vector<const QraReport*> ordered;
  for (const auto& r : reports) ordered.push_back(&r);
  if (spec.sort_by_cv) {
    std::stable_sort(ordered.begin(), ordered.end(), [](const QraReport* a, const QraReport* b) {
      return a->precision.cv_star < b->precision.cv_star;
    });
  }

  if (spec.format == RenderFormat::Json) {
    ordered_json root;
    if (spec.include_caveats) root["caveats"] = std::vector<std::string>(std::begin(kCaveats), std::end(kCaveats));
    ordered_json list = ordered_json::array();
    for (const QraReport* r : ordered) list.push_back(report_json(*r));
    root["reports"] = std::move(list);
    return root.dump(2) + "\n";
  }

  const int ds = spec.decimals_stats;
  if (spec.format == RenderFormat::Csv) {
    Table rows;
    for (const QraReport* r : ordered) {
      const auto& p = r->precision;
      rows.push_back({r->object.id, r->measurand.id, std::to_string(p.n), format_fixed(p.mean, ds),
                      format_fixed(p.s_star, ds), format_fixed(p.ci95.lo, ds), format_fixed(p.ci95.hi, ds),
                      format_fixed(p.cv_star, spec.decimals_cv)});
    }
    return render_csv_table({"object", "measurand", "n", "mean", "stdev", "ci_lo", "ci_hi", "cv_star"}, rows);
  }

  const std::vector<std::string> header{"object", "measurand", "measured quantity values", "n",
                                        "mean",   "stdev",     "stdev 95% CI",             "CV*"};
  Table rows;
  for (const QraReport* r : ordered) {
    const auto& p = r->precision;
    rows.push_back({r->object.id, r->measurand.id, join_values(r->measurements), std::to_string(p.n),
                    format_fixed(p.mean, ds), format_fixed(p.s_star, ds), interval_text(p.ci95, ds),
                    format_fixed(p.cv_star, spec.decimals_cv)});
  }

  std::vector<std::string> notes = report_notes(ordered);
  if (spec.include_caveats) notes.insert(notes.end(), std::begin(kCaveats), std::end(kCaveats));

  if (spec.format == RenderFormat::Markdown) {
    std::string out = render_markdown_table(header, rows);
    if (!notes.empty()) out += "\n";
    for (const auto& n : notes) out += "> " + n + "\n";
    return out;
  }

  std::string out = render_text_table(header, rows, spec.color);
  if (!notes.empty()) out += "\n";
  for (const auto& n : notes) out += "note: " + n + "\n";
  return out;
}

std::string render_condition_matrix(const QraReport& report, const RenderSpec& spec) {
  check_spec(spec);
  const auto& diff = report.diff;

  if (spec.format == RenderFormat::Json) {
    ordered_json j;
    j["object"] = report.object.id;
    j["measurand"] = report.measurand.id;
    j["conditions"] = diff.conditions;
    ordered_json rows = ordered_json::array();
    for (const auto& m : report.measurements) rows.push_back(measurement_json(m, diff.conditions));
    j["rows"] = std::move(rows);
    ordered_json verdicts = ordered_json::object();
    for (std::size_t c = 0; c < diff.conditions.size(); ++c) verdicts[diff.conditions[c]] = to_string(diff.verdicts[c]);
    j["verdicts"] = std::move(verdicts);
    j["classification"] = to_string(report.classification);
    if (!report.selector.empty()) {
      ordered_json excluded = ordered_json::array();
      for (const auto& m : report.excluded) excluded.push_back(measurement_json(m, diff.conditions));
      j["excluded"] = std::move(excluded);
    }
    return j.dump(2) + "\n";
  }

  auto matrix_rows = [&](const std::vector<Measurement>& ms, std::size_t first_index) {
    Table rows;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::vector<std::string> row{std::to_string(first_index + i), detail::format_real(ms[i].value), ms[i].source};
      for (const auto& name : diff.conditions) {
        const ConditionValue v = ms[i].condition(name);
        row.push_back(v.is_known() ? v.label() : "?");
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };

  const bool csv = spec.format == RenderFormat::Csv;
  std::vector<std::string> header{"row", "value", "source"};
  for (const auto& name : diff.conditions) header.push_back(csv ? "cond." + name : name);
  const Table rows = matrix_rows(report.measurements, 1);

  std::string verdicts = "verdicts:";
  for (std::size_t c = 0; c < diff.conditions.size(); ++c) {
    verdicts += std::string(c ? ", " : " ") + diff.conditions[c] + "=" + std::string(to_string(diff.verdicts[c]));
  }
  std::vector<std::string> footer{verdicts, "classification: " + std::string(to_string(report.classification))};
  if (!report.selector.empty()) {
    footer.push_back("subgroup where " + describe_selector(report.selector) + "; excluded " +
                     std::to_string(report.excluded.size()) + " measurement(s)" +
                     (report.excluded.empty() ? "" : ": " + join_values(report.excluded)));
  }

  const std::string title = report.object.id + " / " + report.measurand.id + " (" +
                            std::to_string(report.measurements.size()) + " measurements)";
  std::string out;
  switch (spec.format) {
    case RenderFormat::Csv:
      out = render_csv_table(header, rows);
      for (const auto& f : footer) out += "# " + f + "\n";
      return out;
    case RenderFormat::Markdown:
      out = "**" + escape_markdown(title) + "**\n\n" + render_markdown_table(header, rows) + "\n";
      for (const auto& f : footer) out += "> " + f + "\n";
      return out;
    default:
      out = title + "\n" + render_text_table(header, rows, spec.color);
      for (const auto& f : footer) out += f + "\n";
      return out;
  }
}

}  // namespace qra
