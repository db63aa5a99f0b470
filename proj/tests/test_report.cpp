#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "qra/dataset_io.hpp"
#include "qra/report.hpp"
#include "test_support.hpp"

using namespace qra;
using qra::test::kind_of;
using qra::test::tiny_dataset;

namespace {

std::vector<QraReport> reports_for(std::string_view object) {
  const auto& ds = bundled_paper_dataset();
  std::vector<QraReport> out;
  for (const auto& key : measurement_pairs(ds))
    if (key.object == object) out.push_back(run_qra_test(ds, key.object, key.measurand));
  return out;
}

std::vector<std::string> lines(const std::string& doc) {
  std::vector<std::string> out;
  std::istringstream in(doc);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

RenderSpec spec_for(RenderFormat f) {
  RenderSpec s;
  s.format = f;
  return s;
}

const std::vector<std::string> kSame{"a", "b", "c", "d", "e", "f", "g"};

}  // namespace

TEST_CASE("markdown precision table for the simplifiers") {
  auto reports = reports_for("NTS_def");
  for (auto& r : reports_for("NTS-w2v_def")) reports.push_back(r);
  const auto doc = render_precision_table(reports, spec_for(RenderFormat::Markdown));
  const auto ls = lines(doc);
  CHECK(ls[0] == "| object | measurand | measured quantity values | n | mean | stdev | stdev 95% CI | CV* |");
  CHECK(ls[2] == "| NTS_def | BLEU | 84.51, 84.5, 87.46, 85.6, 84.2, 86.61, 86.2 | 7 | 85.58 | 1.29 | [0.45, 2.13] | 1.562 |");
  CHECK(doc.find("| NTS-w2v_def | SARI |") != std::string::npos);
  CHECK(doc.find("3.572 |") != std::string::npos);
  CHECK(doc.find("> ") != std::string::npos);
}

TEST_CASE("constant sample renders zeros") {
  auto ds = tiny_dataset({{4.0, kSame}, {4.0, kSame}, {4.0, kSame}});
  const std::vector<QraReport> reports{run_qra_test(ds, "sys", "m")};
  const auto doc = render_precision_table(reports, spec_for(RenderFormat::Text));
  const auto row = lines(doc)[1];
  CHECK(row.find("0.00") != std::string::npos);
  CHECK(row.find("0.000") != std::string::npos);
  CHECK(row.find("[0.00, 0.00]") != std::string::npos);
  CHECK(row.find("-0") == std::string::npos);
}

TEST_CASE("csv precision table golden output") {
  const auto doc = render_precision_table(reports_for("PASS"), spec_for(RenderFormat::Csv));
  CHECK(doc ==
        "object,measurand,n,mean,stdev,ci_lo,ci_hi,cv_star\n"
        "PASS,Clarity,2,4.97,0.58,-2.76,3.93,13.240\n"
        "PASS,Fluency,2,4.75,0.69,-3.26,4.65,16.372\n"
        "PASS,StanceId,2,93.88,5.10,-24.05,34.24,6.107\n");
}

TEST_CASE("caveats can be switched off") {
  auto spec = spec_for(RenderFormat::Text);
  const auto reports = reports_for("PASS");
  const auto with = render_precision_table(reports, spec);
  spec.include_caveats = false;
  const auto without = render_precision_table(reports, spec);
  CHECK(with.find("normally distributed") != std::string::npos);
  CHECK(without.find("normally distributed") == std::string::npos);
}

TEST_CASE("sorting by CV*") {
  auto spec = spec_for(RenderFormat::Csv);
  spec.sort_by_cv = true;
  const auto ls = lines(render_precision_table(reports_for("PASS"), spec));
  CHECK(ls[1].starts_with("PASS,StanceId"));
  CHECK(ls[3].starts_with("PASS,Fluency"));
}

TEST_CASE("decimals are configurable and bounded") {
  auto spec = spec_for(RenderFormat::Csv);
  spec.decimals_cv = 1;
  spec.decimals_stats = 4;
  CHECK(lines(render_precision_table(reports_for("PASS"), spec))[3] ==
        "PASS,StanceId,2,93.8750,5.0958,-24.0512,34.2428,6.1");
  spec.decimals_cv = 11;
  const auto reports = reports_for("PASS");
  CHECK(kind_of([&] { render_precision_table(reports, spec); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { render_precision_table(std::vector<QraReport>{}, spec_for(RenderFormat::Text)); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("json keeps full precision") {
  const auto reports = reports_for("NTS_def");
  const auto j = nlohmann::json::parse(render_precision_table(reports, spec_for(RenderFormat::Json)));
  REQUIRE(j["reports"].size() == 2);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& p = reports[i].precision;
    const auto& r = j["reports"][i];
    CHECK(r["n"].get<std::size_t>() == p.n);
    CHECK(r["mean"].get<double>() == p.mean);
    CHECK(r["s"].get<double>() == p.s);
    CHECK(r["s_star"].get<double>() == p.s_star);
    CHECK(r["se_s_star"].get<double>() == p.se_s_star);
    CHECK(r["ci95"][0].get<double>() == p.ci95.lo);
    CHECK(r["ci95"][1].get<double>() == p.ci95.hi);
    CHECK(r["cv"].get<double>() == p.cv);
    CHECK(r["cv_star"].get<double>() == p.cv_star);
    CHECK(r["classification"] == "Reproducibility");
  }
}

TEST_CASE("rendering is deterministic") {
  const auto reports = reports_for("mult-dom+");
  for (auto f : {RenderFormat::Text, RenderFormat::Markdown, RenderFormat::Csv, RenderFormat::Json}) {
    CHECK(render_precision_table(reports, spec_for(f)) == render_precision_table(reports, spec_for(f)));
    CHECK(render_condition_matrix(reports[0], spec_for(f)) == render_condition_matrix(reports[0], spec_for(f)));
  }
}

TEST_CASE("condition matrix for PASS clarity") {
  const auto reports = reports_for("PASS");
  const auto ls = lines(render_condition_matrix(reports[0], spec_for(RenderFormat::Csv)));
  REQUIRE(ls.size() >= 5);
  CHECK(ls[0] == "row,value,source,cond.system_code,cond.compile_training_info,cond.method_specification,"
                 "cond.implementation,cond.procedure,cond.test_set,cond.performed_by");
  CHECK(ls[1] == "1,5.64,vdL&al,vdL&al,vdL&al,vdL&al,vdL&al,vdL&al,vdL&al,vdL&al");
  CHECK(ls[2] == "2,6.3,M&al,vdL&al,vdL&al,vdL&al,M&al,M&al,vdL&al,M&al");
  CHECK(ls[3].find("test_set=AllSame") != std::string::npos);
  CHECK(ls[3].find("performed_by=Differs") != std::string::npos);
  CHECK(ls[4] == "# classification: Reproducibility");
}

TEST_CASE("condition matrix footers") {
  auto same = tiny_dataset({{1.0, kSame}, {2.0, kSame}});
  const auto text = render_condition_matrix(run_qra_test(same, "sys", "m"), spec_for(RenderFormat::Text));
  CHECK(text.find("classification: Repeatability") != std::string::npos);

  auto unknown = kSame;
  unknown[2] = "";
  auto partial = tiny_dataset({{1.0, kSame}, {2.0, unknown}});
  const auto doc = render_condition_matrix(run_qra_test(partial, "sys", "m"), spec_for(RenderFormat::Text));
  CHECK(doc.find(" ? ") != std::string::npos);
  CHECK(doc.find("classification: Indeterminate") != std::string::npos);

  const auto nts = render_condition_matrix(reports_for("NTS_def")[0], spec_for(RenderFormat::Markdown));
  std::size_t rows = 0;
  for (const auto& l : lines(nts))
    if (l.starts_with("| ") && !l.starts_with("| row")) ++rows;
  CHECK(rows == 7);
}

TEST_CASE("subgroup reports list what was excluded") {
  const auto& ds = bundled_paper_dataset();
  const std::vector<ConditionMatch> where{{"compile_training_info", "Nisioi et al."}};
  const std::vector<QraReport> reports{subgroup_assess(ds, "NTS_def", "BLEU", where)};
  const auto doc = render_precision_table(reports, spec_for(RenderFormat::Text));
  CHECK(doc.find("excluded 3") != std::string::npos);
  CHECK(doc.find("0.838") != std::string::npos);
}

TEST_CASE("color only adds escape codes to text") {
  auto spec = spec_for(RenderFormat::Text);
  spec.color = true;
  const auto reports = reports_for("PASS");
  CHECK(render_precision_table(reports, spec).find("\x1b[") != std::string::npos);
  spec.format = RenderFormat::Csv;
  CHECK(render_precision_table(reports, spec).find("\x1b[") == std::string::npos);
}

TEST_CASE("format_fixed") {
  CHECK(format_fixed(-0.0001, 2) == "0.00");
  CHECK(format_fixed(-0.006, 2) == "-0.01");
  CHECK(format_fixed(1.5625, 3) == "1.562");
  CHECK(format_fixed(2.0, 0) == "2");
  CHECK(parse_render_format("markdown") == RenderFormat::Markdown);
  CHECK_FALSE(parse_render_format("html"));
}
