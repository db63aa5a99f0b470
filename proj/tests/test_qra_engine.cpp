#include <doctest.h>

#include <algorithm>
#include <random>

#include "qra/dataset_io.hpp"
#include "qra/qra_engine.hpp"
#include "test_support.hpp"

using namespace qra;
using qra::test::kind_of;
using qra::test::tiny_dataset;

namespace {

ConditionVerdict verdict(const QraReport& r, std::string_view name) {
  const auto it = std::find(r.diff.conditions.begin(), r.diff.conditions.end(), name);
  REQUIRE(it != r.diff.conditions.end());
  return r.diff.verdicts[static_cast<std::size_t>(it - r.diff.conditions.begin())];
}

const std::vector<std::string> kSame{"a", "b", "c", "d", "e", "f", "g"};

}  // namespace

TEST_CASE("run_qra_test on published pairs") {
  const auto& ds = bundled_paper_dataset();
  auto r = run_qra_test(ds, "NTS-w2v_def", "SARI");
  CHECK(std::abs(r.precision.cv_star - 3.572) < 5e-4);
  CHECK(r.classification == Classification::Reproducibility);

  r = run_qra_test(ds, "PASS", "Fluency");
  CHECK(std::abs(r.precision.cv_star - 16.372) < 0.01);
  CHECK(verdict(r, "test_set") == ConditionVerdict::AllSame);
  CHECK(verdict(r, "performed_by") == ConditionVerdict::Differs);

  r = run_qra_test(ds, "mult-POS-", "wF1");
  CHECK(std::abs(r.precision.cv_star - 3.818) < 5e-4);
  CHECK(r.object.id == "mult-POS-");
  CHECK(r.measurand.id == "wF1");
  CHECK(r.measurements.size() == 8);
  CHECK(r.excluded.empty());
}

TEST_CASE("condition_diff on the PASS group") {
  const auto& ds = bundled_paper_dataset();
  const auto g = group(ds, "PASS", "Clarity");
  const auto diff = condition_diff(g, ds.schema);
  CHECK(diff.conditions == ds.schema.names());
  CHECK(diff.rows.size() == 2);
  const auto at = [&](std::string_view n) {
    return diff.verdicts[std::find(diff.conditions.begin(), diff.conditions.end(), n) - diff.conditions.begin()];
  };
  CHECK(at("test_set") == ConditionVerdict::AllSame);
  CHECK(at("implementation") == ConditionVerdict::Differs);
  CHECK(at("procedure") == ConditionVerdict::Differs);
  CHECK(at("performed_by") == ConditionVerdict::Differs);
}

TEST_CASE("verdict rules and classification") {
  auto same = tiny_dataset({{1.0, kSame}, {2.0, kSame}, {3.0, kSame}});
  auto r = run_qra_test(same, "sys", "m");
  CHECK(std::all_of(r.diff.verdicts.begin(), r.diff.verdicts.end(),
                    [](ConditionVerdict v) { return v == ConditionVerdict::AllSame; }));
  CHECK(r.classification == Classification::Repeatability);

  auto unknown = kSame;
  unknown[6] = "";
  auto with_unknown = tiny_dataset({{1.0, kSame}, {2.0, unknown}});
  r = run_qra_test(with_unknown, "sys", "m");
  CHECK(verdict(r, "performed_by") == ConditionVerdict::HasUnknown);
  CHECK(r.classification == Classification::Indeterminate);

  auto both_unknown = tiny_dataset({{1.0, unknown}, {2.0, unknown}});
  CHECK(verdict(run_qra_test(both_unknown, "sys", "m"), "performed_by") == ConditionVerdict::HasUnknown);

  auto other = kSame;
  other[6] = "z";
  auto mixed = tiny_dataset({{1.0, kSame}, {2.0, other}, {3.0, unknown}});
  r = run_qra_test(mixed, "sys", "m");
  CHECK(verdict(r, "performed_by") == ConditionVerdict::Differs);
  CHECK(r.classification == Classification::Reproducibility);
}

TEST_CASE("condition_diff errors") {
  const auto& ds = bundled_paper_dataset();
  std::vector<Measurement> mixed{group(ds, "PASS", "Clarity")[0], group(ds, "PASS", "Fluency")[0]};
  CHECK(mixed[0].measurand != mixed[1].measurand);
  CHECK(kind_of([&] { condition_diff(mixed, ds.schema); }) == ErrorKind::MixedGroup);
  CHECK(kind_of([&] { condition_diff(std::vector<Measurement>{}, ds.schema); }) == ErrorKind::EmptyGroup);
}

TEST_CASE("run_qra_test errors") {
  auto single = tiny_dataset({{1.0, kSame}});
  CHECK(kind_of([&] { run_qra_test(single, "sys", "m"); }) == ErrorKind::InvalidSampleSize);
  auto zeros = tiny_dataset({{0.0, kSame}, {0.0, kSame}});
  CHECK(kind_of([&] { run_qra_test(zeros, "sys", "m"); }) == ErrorKind::DegenerateMean);
  CHECK(kind_of([&] { run_qra_test(bundled_paper_dataset(), "PASS", "SARI"); }) == ErrorKind::EmptyGroup);
}

TEST_CASE("subgroups from the same-outputs and regenerated-outputs analyses") {
  const auto& ds = bundled_paper_dataset();
  const std::vector<ConditionMatch> nisioi{{"compile_training_info", "Nisioi et al."}};

  auto r = subgroup_assess(ds, "NTS_def", "BLEU", nisioi);
  CHECK(r.precision.n == 4);
  CHECK(std::abs(r.precision.cv_star - 0.838) < 0.01);
  std::vector<double> kept;
  for (const auto& m : r.measurements) kept.push_back(m.value);
  CHECK(kept == std::vector<double>{84.51, 84.50, 85.60, 84.20});
  CHECK(r.excluded.size() == 3);
  CHECK(r.selector.where == nisioi);

  r = subgroup_assess(ds, "NTS-w2v_def", "BLEU", nisioi);
  CHECK(r.precision.n == 3);
  CHECK(std::abs(r.precision.cv_star - 1.314) < 0.01);

  struct Case {
    const char* object;
    const char* measurand;
    std::vector<std::size_t> positions;
    double cv_star;
  };
  for (const auto& c : {Case{"NTS_def", "BLEU", {1, 3, 6}, 2.154}, Case{"NTS-w2v_def", "BLEU", {1, 2, 5}, 6.598},
                        Case{"NTS_def", "SARI", {1, 3, 5}, 3.11}, Case{"NTS-w2v_def", "SARI", {1, 2, 4}, 4.05}}) {
    CAPTURE(c.object);
    CAPTURE(c.measurand);
    SubgroupSelector sel;
    sel.positions = c.positions;
    r = subgroup_assess(ds, c.object, c.measurand, sel);
    CHECK(r.precision.n == 3);
    CHECK(std::abs(r.precision.cv_star - c.cv_star) < 0.01);
  }

  SubgroupSelector sari;
  sari.positions = {1, 3, 5};
  r = subgroup_assess(ds, "NTS_def", "SARI", sari);
  std::vector<double> values;
  for (const auto& m : r.measurements) values.push_back(m.value);
  CHECK(values == std::vector<double>{30.65, 29.13, 29.96});
}

TEST_CASE("subgroup errors") {
  const auto& ds = bundled_paper_dataset();
  const std::vector<ConditionMatch> none{{"compile_training_info", "nobody"}};
  CHECK(kind_of([&] { subgroup_assess(ds, "NTS_def", "BLEU", none); }) == ErrorKind::EmptyGroup);
  const std::vector<ConditionMatch> one{{"performed_by", "Nisioi et al."}};
  CHECK(kind_of([&] { subgroup_assess(ds, "NTS_def", "BLEU", one); }) == ErrorKind::InvalidSampleSize);
  const std::vector<ConditionMatch> bad{{"compile", "Nisioi et al."}};
  CHECK(kind_of([&] { subgroup_assess(ds, "NTS_def", "BLEU", bad); }) == ErrorKind::UnknownCondition);
  SubgroupSelector out_of_range;
  out_of_range.positions = {1, 8};
  CHECK(kind_of([&] { subgroup_assess(ds, "NTS_def", "BLEU", out_of_range); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("matches requires known equal labels") {
  Measurement m;
  m.conditions.emplace("procedure", ConditionValue::known("OTE"));
  m.conditions.emplace("test_set", ConditionValue::unknown());
  const std::vector<ConditionMatch> ote{{"procedure", "OTE"}};
  const std::vector<ConditionMatch> oite{{"procedure", "OITE"}};
  const std::vector<ConditionMatch> both{{"procedure", "OTE"}, {"test_set", "x"}};
  CHECK(matches(m, ote));
  CHECK_FALSE(matches(m, oite));
  CHECK_FALSE(matches(m, both));
  CHECK(matches(m, std::vector<ConditionMatch>{}));
}

TEST_CASE("property: empty subgroup equals the full test") {
  const auto& ds = bundled_paper_dataset();
  for (const auto& key : measurement_pairs(ds)) {
    CAPTURE(key.object);
    const auto full = run_qra_test(ds, key.object, key.measurand);
    CHECK(subgroup_assess(ds, key.object, key.measurand, std::vector<ConditionMatch>{}) == full);
    CHECK(subgroup_assess(ds, key.object, key.measurand, SubgroupSelector{}) == full);
  }
}

TEST_CASE("property: permutation changes only row order") {
  std::mt19937_64 rng(17);
  const auto& base = bundled_paper_dataset();
  for (int round = 0; round < 20; ++round) {
    QraDataset shuffled = base;
    std::shuffle(shuffled.measurements.begin(), shuffled.measurements.end(), rng);
    for (const auto& key : measurement_pairs(base)) {
      const auto a = run_qra_test(base, key.object, key.measurand);
      const auto b = run_qra_test(shuffled, key.object, key.measurand);
      CHECK(a.precision == b.precision);
      CHECK(a.classification == b.classification);
      CHECK(a.diff.verdicts == b.diff.verdicts);
      auto ra = a.diff.rows, rb = b.diff.rows;
      auto key_of = [](const std::vector<ConditionValue>& row) {
        std::string k;
        for (const auto& v : row) k += (v.is_known() ? v.label() : std::string("\x01")) + '\x02';
        return k;
      };
      auto by_key = [&](const auto& x, const auto& y) { return key_of(x) < key_of(y); };
      std::sort(ra.begin(), ra.end(), by_key);
      std::sort(rb.begin(), rb.end(), by_key);
      CHECK(ra == rb);
    }
  }
}

TEST_CASE("property: duplicating a row never turns reproducibility into repeatability") {
  std::mt19937_64 rng(8);
  const auto& base = bundled_paper_dataset();
  for (const auto& key : measurement_pairs(base)) {
    const auto before = run_qra_test(base, key.object, key.measurand);
    for (int i = 0; i < 5; ++i) {
      QraDataset grown = base;
      const auto g = group(base, key.object, key.measurand);
      grown.measurements.push_back(g[rng() % g.size()]);
      const auto after = run_qra_test(grown, key.object, key.measurand);
      if (before.classification == Classification::Reproducibility) {
        CHECK(after.classification == Classification::Reproducibility);
      }
      CHECK(after.classification == before.classification);
    }
  }
}

TEST_CASE("fixture classifications") {
  const auto& ds = bundled_paper_dataset();
  for (const auto& key : measurement_pairs(ds)) {
    CHECK(run_qra_test(ds, key.object, key.measurand).classification == Classification::Reproducibility);
  }
  CHECK(to_string(Classification::Indeterminate) == "Indeterminate");
  CHECK(to_string(ConditionVerdict::HasUnknown) == "HasUnknown");
}
