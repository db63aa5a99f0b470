#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qra/dataset_io.hpp"
#include "qra/estimator_sim.hpp"
#include "qra/precision.hpp"
#include "qra/qra_engine.hpp"
#include "qra/report.hpp"

namespace qra::cli {

namespace {

constexpr std::string_view kBuiltinInput = "builtin";

// Raised for bad argument values that CLI11 cannot catch itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string input;
  std::string format = "auto";
  std::string out;
  std::string render = "text";
};

struct AssessOptions {
  std::string object;
  std::string measurand;
  bool conditions = false;
  std::vector<std::string> where;
};

struct SimulateOptions {
  long long n = 5;
  double sigma = 1.0;
  long long trials = 100000;
  std::uint64_t seed = 0;
};

QraDataset load_input(const CommonOptions& opts) {
  if (opts.input == kBuiltinInput) return bundled_paper_dataset();
  auto format = parse_dataset_format(opts.format);
  if (!format) throw UsageError("--format must be csv, json or auto");
  return load_dataset(opts.input, *format);
}

RenderSpec render_spec(const CommonOptions& opts, const Environment& env) {
  auto format = parse_render_format(opts.render);
  if (!format) throw UsageError("--render must be text, markdown, csv or json");
  RenderSpec spec;
  spec.format = *format;
  spec.color = *format == RenderFormat::Text && opts.out.empty() && env.stdout_is_tty && !env.no_color;
  return spec;
}

void emit(const std::string& document, const CommonOptions& opts, std::ostream& out) {
  if (opts.out.empty()) {
    out << document;
    return;
  }
  std::ofstream file(opts.out, std::ios::binary);
  if (!file || !(file << document)) throw Error(ErrorKind::Io, "cannot write '" + opts.out + "'");
}

std::vector<ConditionMatch> parse_where(const std::vector<std::string>& clauses, const ConditionSchema& schema) {
  std::vector<ConditionMatch> out;
  for (const auto& clause : clauses) {
    const auto eq = clause.find('=');
    if (!clause.starts_with("cond.") || eq == std::string::npos) {
      throw UsageError("--where expects cond.<name>=<label>, got '" + clause + "'");
    }
    ConditionMatch match{clause.substr(5, eq - 5), clause.substr(eq + 1)};
    if (!schema.contains(match.condition)) throw UsageError("unknown condition '" + match.condition + "' in --where");
    if (match.label.empty()) throw UsageError("--where label for '" + match.condition + "' is empty");
    out.push_back(std::move(match));
  }
  return out;
}

// Pairs with at least two measurements matching the --object / --measurand filters.
std::vector<PairKey> selected_pairs(const QraDataset& ds, const AssessOptions& opts, std::ostream& err) {
  if (!opts.object.empty() && !ds.find_object(opts.object)) throw UsageError("unknown object '" + opts.object + "'");
  if (!opts.measurand.empty() && !ds.find_measurand(opts.measurand)) {
    throw UsageError("unknown measurand '" + opts.measurand + "'");
  }
  std::vector<PairKey> out;
  for (const auto& key : measurement_pairs(ds)) {
    if (!opts.object.empty() && key.object != opts.object) continue;
    if (!opts.measurand.empty() && key.measurand != opts.measurand) continue;
    const auto size = std::count_if(ds.measurements.begin(), ds.measurements.end(), [&](const Measurement& m) {
      return m.object == key.object && m.measurand == key.measurand;
    });
    if (size < 2) {
      err << "warning: skipping (" << key.object << ", " << key.measurand << "): only one measurement\n";
      continue;
    }
    out.push_back(key);
  }
  if (out.empty()) throw Error(ErrorKind::EmptyGroup, "no (object, measurand) pair with at least 2 measurements matches");
  return out;
}

std::string render_reports(const std::vector<QraReport>& reports, const RenderSpec& spec, bool conditions) {
  std::string doc = render_precision_table(reports, spec);
  if (conditions && spec.format != RenderFormat::Json) {
    for (const auto& r : reports) doc += "\n" + render_condition_matrix(r, spec);
  }
  return doc;
}

int assess(const CommonOptions& common, const AssessOptions& opts, bool subgroup, std::ostream& out,
           std::ostream& err, const Environment& env) {
  const QraDataset ds = load_input(common);
  const RenderSpec spec = render_spec(common, env);
  const auto where = parse_where(opts.where, ds.schema);

  std::vector<QraReport> reports;
  for (const auto& key : selected_pairs(ds, opts, err)) {
    try {
      reports.push_back(subgroup ? subgroup_assess(ds, key.object, key.measurand, where)
                                 : run_qra_test(ds, key.object, key.measurand));
    } catch (const Error& e) {
      const std::string what = e.what();
      if (what.find(key.object) != std::string::npos) throw;
      throw Error(e.kind(), "(" + key.object + ", " + key.measurand + "): " + what);
    }
  }
  emit(render_reports(reports, spec, opts.conditions), common, out);
  return kSuccess;
}

int validate(const CommonOptions& common, std::ostream& out) {
  std::vector<ValidationIssue> issues;
  try {
    issues = validate_dataset(load_input(common));
  } catch (const ValidationError& e) {
    issues = e.issues();
  }
  std::size_t errors = 0, warnings = 0;
  std::string doc;
  for (const auto& issue : issues) {
    const bool is_error = issue.severity == Severity::Error;
    (is_error ? errors : warnings)++;
    doc += fmt::format("{}: {}: {}\n", is_error ? "error" : "warning", issue.location, issue.message);
  }
  doc += fmt::format("{} error(s), {} warning(s)\n", errors, warnings);
  emit(doc, common, out);
  return errors ? kValidationError : kSuccess;
}

int export_dataset(const CommonOptions& common, std::ostream& out) {
  CommonOptions in = common;
  in.format = "auto";
  const QraDataset ds = load_input(in);
  auto format = parse_dataset_format(common.format);
  if (!format) throw UsageError("--format must be csv, json or auto");
  if (common.out.empty()) {
    out << (*format == DatasetFormat::Json ? serialize_json(ds) : serialize_csv(ds));
  } else {
    save_dataset(ds, common.out, *format);
  }
  return kSuccess;
}

std::string render_simulation(const SimResult& r, RenderFormat format) {
  const double c4n = c4(r.n);
  switch (format) {
    case RenderFormat::Json: {
      nlohmann::ordered_json j{{"n", r.n},           {"sigma", r.sigma},   {"mu", r.mu},
                               {"trials", r.trials}, {"seed", r.seed},     {"mean_s", r.mean_s},
                               {"mean_s_star", r.mean_s_star},             {"c4", c4n},
                               {"ci_coverage", r.ci_coverage}};
      return j.dump(2) + "\n";
    }
    case RenderFormat::Csv:
      return fmt::format("n,sigma,mu,trials,seed,mean_s,mean_s_star,c4,ci_coverage\n{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n",
                         r.n, r.sigma, r.mu, r.trials, r.seed, r.mean_s, r.mean_s_star, c4n, r.ci_coverage);
    case RenderFormat::Markdown:
      return fmt::format("| n | sigma | mu | trials | seed | mean s | mean s* | c4(n) | CI coverage |\n"
                         "|---|---|---|---|---|---|---|---|---|\n"
                         "| {} | {} | {} | {} | {} | {:.6f} | {:.6f} | {:.6f} | {:.6f} |\n",
                         r.n, r.sigma, r.mu, r.trials, r.seed, r.mean_s, r.mean_s_star, c4n, r.ci_coverage);
    case RenderFormat::Text:
      break;
  }
  return fmt::format(
      "n:            {}\nsigma:        {}\nmu:           {}\ntrials:       {}\nseed:         {}\n"
      "mean s:       {:.6f}  (c4(n) * sigma = {:.6f})\nmean s*:      {:.6f}\n"
      "s* bias:      {:+.6f}\nCI coverage:  {:.6f}\n",
      r.n, r.sigma, r.mu, r.trials, r.seed, r.mean_s, c4n * r.sigma, r.mean_s_star, r.mean_s_star - r.sigma,
      r.ci_coverage);
}

int simulate_cmd(const CommonOptions& common, const SimulateOptions& opts, std::ostream& out) {
  if (opts.n < 2) throw UsageError("--n must be at least 2");
  if (opts.trials < 1) throw UsageError("--trials must be at least 1");
  if (!(opts.sigma > 0.0)) throw UsageError("--sigma must be positive");
  auto format = parse_render_format(common.render);
  if (!format) throw UsageError("--render must be text, markdown, csv or json");

  SimConfig config;
  config.n = static_cast<std::size_t>(opts.n);
  config.sigma = opts.sigma;
  config.trials = static_cast<std::size_t>(opts.trials);
  config.seed = opts.seed;
  emit(render_simulation(simulate(config), *format), common, out);
  return kSuccess;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::ValidationError:
      return kValidationError;
    case ErrorKind::UnknownObject:
    case ErrorKind::UnknownMeasurand:
    case ErrorKind::UnknownCondition:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidParameters:
      return kUsageError;
    default:
      return kComputationError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Quantified reproducibility assessment of evaluation scores", "qra"};
  app.require_subcommand(1, 1);

  CommonOptions common;
  AssessOptions assess_opts;
  SimulateOptions sim_opts;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", common.input, "Dataset file, or 'builtin' for the bundled dataset")->required();
    cmd->add_option("--format", common.format, "Input format")->check(CLI::IsMember({"csv", "json", "auto"}));
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out, "Write the report to this file instead of stdout");
    cmd->add_option("--render", common.render, "Report format")
        ->check(CLI::IsMember({"text", "markdown", "csv", "json"}));
  };
  auto add_filters = [&](CLI::App* cmd) {
    cmd->add_option("--object", assess_opts.object, "Only this object");
    cmd->add_option("--measurand", assess_opts.measurand, "Only this measurand");
    cmd->add_flag("--conditions", assess_opts.conditions, "Also print the condition matrix of each test");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a dataset and list every issue");
  add_input(validate_cmd);
  validate_cmd->add_option("--out", common.out, "Write the issue list to this file");

  auto* assess_cmd = app.add_subcommand("assess", "Run a QRA test for every (object, measurand) pair");
  add_input(assess_cmd);
  add_filters(assess_cmd);
  add_output(assess_cmd);

  auto* subgroup_cmd = app.add_subcommand("subgroup", "Run QRA tests on measurements matching --where filters");
  add_input(subgroup_cmd);
  add_filters(subgroup_cmd);
  add_output(subgroup_cmd);
  subgroup_cmd->add_option("--where", assess_opts.where, "cond.<name>=<label>; repeatable, all must hold");

  auto* simulate_cmd_app = app.add_subcommand("simulate", "Monte Carlo check of the stdev estimator");
  simulate_cmd_app->add_option("--n", sim_opts.n, "Sample size (>= 2)");
  simulate_cmd_app->add_option("--sigma", sim_opts.sigma, "Population standard deviation");
  simulate_cmd_app->add_option("--trials", sim_opts.trials, "Number of samples drawn");
  simulate_cmd_app->add_option("--seed", sim_opts.seed, "Seed for the mt19937_64 generator")->required();
  add_output(simulate_cmd_app);

  auto* export_cmd = app.add_subcommand("export", "Write a dataset as CSV or JSON (--format picks the output format)");
  export_cmd->add_option("--input", common.input, "Dataset file, or 'builtin'")->required();
  export_cmd->add_option("--format", common.format, "Output format; auto follows the --out extension")
      ->check(CLI::IsMember({"csv", "json", "auto"}));
  export_cmd->add_option("--out", common.out, "Destination file (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (validate_cmd->parsed()) return validate(common, out);
    if (assess_cmd->parsed()) return assess(common, assess_opts, false, out, err, env);
    if (subgroup_cmd->parsed()) return assess(common, assess_opts, true, out, err, env);
    if (simulate_cmd_app->parsed()) return simulate_cmd(common, sim_opts, out);
    if (export_cmd->parsed()) return export_dataset(common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kUsageError;
}

}  // namespace qra::cli
