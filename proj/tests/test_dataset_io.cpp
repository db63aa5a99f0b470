#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "qra/dataset_io.hpp"
#include "qra/qra_engine.hpp"
#include "test_support.hpp"

using namespace qra;
using qra::test::kind_of;

namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "qra_dataset_io_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

const char* kSmallCsv =
    "object,measurand,value,source,cond.system_code,cond.compile_training_info,cond.method_specification,"
    "cond.implementation,cond.procedure,cond.test_set,cond.performed_by\n"
    "sysA,acc,0.71,orig,a,a,m,a,OTE,t,a\n"
    "sysA,acc,0.69,repro,a,a,m,b,OTE,t,b\n"
    "sysA,acc,0.74,repro2,a,,m,b,OTE,t,c\n";

std::vector<ValidationIssue> issues_of(const ValidationError& e) { return e.issues(); }

}  // namespace

TEST_CASE("bundled dataset shape") {
  const auto& ds = bundled_paper_dataset();
  CHECK(ds.measurements.size() == 116);
  CHECK(ds.objects.size() == 14);
  CHECK(ds.measurands.size() == 6);
  CHECK(measurement_pairs(ds).size() == 18);
  CHECK(ds.find_measurand("Clarity")->scale_min == 1.0);
  CHECK(ds.find_measurand("StanceId")->value_kind == ValueKind::Percentage);
  CHECK(ds.schema == default_condition_schema());
  CHECK(validate_dataset(ds).empty());
}

TEST_CASE("bundled condition labels") {
  const auto& ds = bundled_paper_dataset();
  std::set<std::string> labels;
  for (const auto& m : ds.measurements)
    for (const auto& [name, v] : m.conditions)
      if (v.is_known()) labels.insert(v.label());
  for (const char* l : {"Nisioi et al.", "≈Nisioi et al.", "SacreBLEU", "Coop. & Shard.", "Va.& Ra.", "Cai. & But.",
                        "OTE", "OITE"}) {
    CAPTURE(l);
    CHECK(labels.count(l) == 1);
  }
}

TEST_CASE("checked-in data files equal the bundled dataset") {
  const fs::path dir = QRA_DATA_DIR;
  CHECK(load_dataset(dir / "qra_fixture.csv") == bundled_paper_dataset());
  CHECK(load_dataset(dir / "qra_fixture.json") == bundled_paper_dataset());
  CHECK(load_dataset(dir / "qra_fixture.json", DatasetFormat::Json) == bundled_paper_dataset());
}

TEST_CASE("round-trip of the bundled dataset") {
  const auto& ds = bundled_paper_dataset();
  CHECK(parse_csv_dataset(serialize_csv(ds)) == ds);
  CHECK(parse_json_dataset(serialize_json(ds)) == ds);
  CHECK(serialize_csv(parse_csv_dataset(serialize_csv(ds))) == serialize_csv(ds));

  const auto csv = temp_file("rt.csv", "");
  const auto json = temp_file("rt.json", "");
  save_dataset(ds, csv);
  save_dataset(ds, json);
  CHECK(load_dataset(csv) == ds);
  CHECK(load_dataset(json) == ds);
}

TEST_CASE("property: random datasets round-trip through both formats") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  const std::vector<std::string> awkward{"plain", "with, comma", "quote \"inside\"", "#hash", " padded ",
                                         "multi\nline", "≈unicode", "Va.& Ra."};
  for (int round = 0; round < 100; ++round) {
    QraDataset ds;
    ds.schema = default_condition_schema();
    ds.objects.push_back({"o1", awkward[rng() % awkward.size()], std::nullopt});
    ds.objects.push_back({"o,2", "second", std::string(awkward[rng() % awkward.size()])});
    ds.measurands.push_back({"m1", "first", "score", 0.0, std::nullopt, ValueKind::Continuous});
    ds.measurands.push_back({"m2", "second", "percent", 1.0, 7.0, ValueKind::Percentage});
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      Measurement m;
      m.object = ds.objects[rng() % 2].id;
      m.measurand = ds.measurands[rng() % 2].id;
      const auto* mm = ds.find_measurand(m.measurand);
      m.value = mm->scale_min + value(rng) * 6.0;
      m.source = awkward[rng() % awkward.size()];
      if (rng() % 3 == 0) m.timestamp = Date{std::chrono::year{2000 + int(rng() % 30)}, std::chrono::month{1 + unsigned(rng() % 12)}, std::chrono::day{1 + unsigned(rng() % 28)}};
      for (const auto& name : ds.schema.names()) {
        m.conditions.emplace(name, rng() % 4 == 0 ? ConditionValue::unknown()
                                                  : ConditionValue::known(awkward[rng() % awkward.size()]));
      }
      ds.measurements.push_back(std::move(m));
    }
    CHECK(parse_csv_dataset(serialize_csv(ds)) == ds);
    CHECK(parse_json_dataset(serialize_json(ds)) == ds);
  }
}

TEST_CASE("csv without directives gets a default schema") {
  const auto ds = parse_csv_dataset(kSmallCsv);
  CHECK(ds.measurements.size() == 3);
  CHECK(ds.objects.size() == 1);
  CHECK(ds.measurands.size() == 1);
  CHECK(ds.schema == default_condition_schema());
  CHECK_FALSE(ds.measurements[2].condition("compile_training_info").is_known());
  const auto r = run_qra_test(ds, "sysA", "acc");
  CHECK(r.classification == Classification::Reproducibility);
  CHECK(r.precision.n == 3);
}

TEST_CASE("empty file is a parse error") {
  CHECK(kind_of([] { parse_csv_dataset(""); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_json_dataset(""); }) == ErrorKind::ParseError);
  const auto p = temp_file("empty.csv", "");
  CHECK(kind_of([&] { load_dataset(p); }) == ErrorKind::ParseError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_csv_dataset("object,measurand,value\nsys,m,\"unterminated\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
  }
  try {
    parse_json_dataset("{\n  \"format\": \"qra-dataset\",\n  oops\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK(kind_of([] { parse_csv_dataset("object,measurand,value\nsys,m,abc\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("missing columns and fields are schema errors") {
  CHECK(kind_of([] { parse_csv_dataset("object,value\nsys,1\n"); }) == ErrorKind::SchemaError);
  CHECK(kind_of([] { parse_csv_dataset("object,measurand,value,colour\nsys,m,1,red\n"); }) == ErrorKind::SchemaError);
  CHECK(kind_of([] { parse_json_dataset(R"({"format":"qra-dataset","version":1})"); }) == ErrorKind::SchemaError);
  CHECK(kind_of([] {
          parse_json_dataset(R"({"format":"qra-dataset","version":1,"schema":[],"objects":[],"measurands":[],
                               "measurements":[{"object":"a","measurand":"b","source":"s","conditions":{}}]})");
        }) == ErrorKind::SchemaError);
}

TEST_CASE("value below scale is reported with its line") {
  std::string text =
      "#condition,procedure,measurement_procedure\n"
      "#measurand,m,Metric,score,1,7,continuous\n"
      "object,measurand,value,source,cond.procedure\n"
      "sys,m,3,a,OTE\n"
      "sys,m,0.5,b,OTE\n";
  const auto p = temp_file("below.csv", text);
  try {
    load_dataset(p);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const auto issues = issues_of(e);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].severity == Severity::Error);
    CHECK(issues[0].location.find("line 5") != std::string::npos);
    CHECK(issues[0].measurement_index == 1);
  }
}

TEST_CASE("validation findings") {
  auto ds = parse_csv_dataset(kSmallCsv);
  auto undeclared = ds;
  undeclared.measurements[1].object = "ghost";
  auto issues = validate_dataset(undeclared);
  CHECK(std::count_if(issues.begin(), issues.end(),
                      [](const ValidationIssue& i) { return i.severity == Severity::Error; }) == 1);
  CHECK(has_errors(issues));

  auto single = ds;
  single.measurements.resize(1);
  issues = validate_dataset(single);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].severity == Severity::Warning);
  CHECK(issues[0].location == "(sysA, acc)");
  CHECK_FALSE(has_errors(issues));

  auto missing = ds;
  missing.measurements[0].conditions.erase("test_set");
  CHECK(has_errors(validate_dataset(missing)));

  auto extra = ds;
  extra.measurements[0].conditions.emplace("colour", ConditionValue::known("red"));
  CHECK(has_errors(validate_dataset(extra)));

  auto above = ds;
  above.measurands[0].scale_max = 0.5;
  CHECK(has_errors(validate_dataset(above)));

  auto dup = ds;
  dup.objects.push_back(dup.objects[0]);
  CHECK(has_errors(validate_dataset(dup)));

  auto bad_scale = ds;
  bad_scale.measurands[0].scale_max = bad_scale.measurands[0].scale_min;
  CHECK(has_errors(validate_dataset(bad_scale)));
}

TEST_CASE("load_dataset errors") {
  CHECK(kind_of([] { load_dataset("/nonexistent/qra.csv"); }) == ErrorKind::Io);
  const auto p = temp_file("ghost.json", serialize_json([] {
                             auto ds = parse_csv_dataset(kSmallCsv);
                             ds.measurements[0].object = "ghost";
                             return ds;
                           }()));
  CHECK(kind_of([&] { load_dataset(p); }) == ErrorKind::ValidationError);
}

TEST_CASE("format names") {
  CHECK(parse_dataset_format("csv") == DatasetFormat::Csv);
  CHECK(parse_dataset_format("json") == DatasetFormat::Json);
  CHECK(parse_dataset_format("auto") == DatasetFormat::Auto);
  CHECK_FALSE(parse_dataset_format("xlsx"));
}
