#include <array>
#include <initializer_list>
#include <string_view>

#include "qra/dataset_io.hpp"

namespace qra {

namespace {

// Column order matches default_condition_schema():
// system_code, compile_training_info, method_specification, implementation,
// procedure, test_set, performed_by.
using ConditionRow = std::array<std::string_view, 7>;

struct Row {
  double value;
  std::string_view source;
  ConditionRow conditions;
};

void add_group(QraDataset& ds, std::string_view object, std::string_view measurand,
               std::initializer_list<Row> rows) {
  const auto names = ds.schema.names();
  for (const auto& row : rows) {
    Measurement m;
    m.object = object;
    m.measurand = measurand;
    m.value = row.value;
    m.source = row.source;
    for (std::size_t c = 0; c < names.size(); ++c) {
      m.conditions.emplace(names[c], ConditionValue::known(std::string(row.conditions[c])));
    }
    ds.measurements.push_back(std::move(m));
  }
}

// Football report generator, original human evaluation and its reproduction.
// The reproduction's stance identification score is stored unrounded, 96.75.
void add_pass(QraDataset& ds) {
  constexpr std::string_view vdl = "vdL&al";
  constexpr std::string_view mal = "M&al";
  constexpr ConditionRow original{vdl, vdl, vdl, vdl, vdl, vdl, vdl};
  constexpr ConditionRow reproduction{vdl, vdl, vdl, mal, mal, vdl, mal};
  add_group(ds, "PASS", "Clarity", {{5.64, vdl, original}, {6.30, mal, reproduction}});
  add_group(ds, "PASS", "Fluency", {{5.36, vdl, original}, {6.14, mal, reproduction}});
  add_group(ds, "PASS", "StanceId", {{91.0, vdl, original}, {96.75, mal, reproduction}});
}

// Essay scoring variants: eight measurements each, same condition pattern.
void add_essay_scoring(QraDataset& ds) {
  constexpr std::string_view vr = "Va.& Ra.";
  constexpr std::string_view approx_vr = "≈Va.& Ra.";
  constexpr std::string_view hc = "Huber & Coltekin";
  constexpr std::string_view ar = "Arhiliuc et al.";
  constexpr std::string_view be = "Bestgen";
  constexpr std::string_view cb = "Cai. & But.";
  constexpr std::string_view wf1 = "wF1(o,t)";
  constexpr std::string_view ote = "OTE";

  constexpr std::array<std::string_view, 8> sources{
      "Vajjala & Rama", "Huber & Coltekin", "Arhiliuc et al.", "Bestgen",
      "Bestgen",        "Bestgen",          "Caines & Buttery", "Caines & Buttery"};
  constexpr std::array<ConditionRow, 8> conditions{{
      {vr, vr, wf1, vr, ote, vr, vr},
      {vr, hc, wf1, vr, ote, vr, hc},
      {vr, ar, wf1, vr, ote, vr, ar},
      {vr, vr, wf1, vr, ote, vr, be},
      {vr, vr, wf1, vr, ote, vr, be},
      {vr, vr, wf1, approx_vr, ote, vr, be},
      {vr, vr, wf1, vr, ote, vr, cb},
      {cb, cb, wf1, cb, ote, vr, cb},
  }};

  struct Variant {
    std::string_view object;
    std::array<double, 8> values;
  };
  constexpr std::array<Variant, 11> variants{{
      {"mult-base", {0.428, 0.493, 0.426, 0.574, 0.579, 0.590, 0.574, 0.600}},
      {"mult-word-", {0.721, 0.603, 0.605, 0.606, 0.720, 0.732, 0.606, 0.740}},
      {"mult-word+", {0.719, 0.604, 0.607, 0.607, 0.723, 0.733, 0.607, 0.736}},
      {"mult-POS-", {0.726, 0.681, 0.680, 0.680, 0.722, 0.728, 0.680, 0.732}},
      {"mult-POS+", {0.724, 0.680, 0.680, 0.681, 0.725, 0.729, 0.681, 0.731}},
      {"mult-dep-", {0.703, 0.660, 0.650, 0.651, 0.699, 0.711, 0.651, 0.710}},
      {"mult-dep+", {0.693, 0.661, 0.652, 0.653, 0.699, 0.712, 0.653, 0.716}},
      {"mult-dom-", {0.449, 0.600, 0.433, 0.597, 0.635, 0.646, 0.597, 0.698}},
      {"mult-dom+", {0.471, 0.647, 0.447, 0.647, 0.696, 0.711, 0.647, 0.726}},
      {"mult-emb-", {0.693, 0.658, 0.683, 0.668, 0.692, 0.689, 0.659, 0.391}},
      {"mult-emb+", {0.689, 0.662, 0.681, 0.659, 0.681, 0.684, 0.657, 0.401}},
  }};

  for (const auto& v : variants) {
    add_group(ds, v.object, "wF1",
              {{v.values[0], sources[0], conditions[0]},
               {v.values[1], sources[1], conditions[1]},
               {v.values[2], sources[2], conditions[2]},
               {v.values[3], sources[3], conditions[3]},
               {v.values[4], sources[4], conditions[4]},
               {v.values[5], sources[5], conditions[5]},
               {v.values[6], sources[6], conditions[6]},
               {v.values[7], sources[7], conditions[7]}});
  }
}

// Neural text simplification variants. Measurements are listed as: original,
// reproduction on the original outputs, reproduction with regenerated outputs,
// then the additional runs on the original and on regenerated outputs.
void add_text_simplification(QraDataset& ds) {
  constexpr std::string_view ni = "Nisioi et al.";
  constexpr std::string_view approx_ni = "≈Nisioi et al.";
  constexpr std::string_view cs = "Coop. & Shard.";
  constexpr std::string_view tp = "this paper";
  constexpr std::string_view sacre = "SacreBLEU";
  constexpr std::string_view bleu = "bleu(o,t)";
  constexpr std::string_view sari = "sari(o,s,t)";
  constexpr std::string_view ote = "OTE";
  constexpr std::string_view oite = "OITE";
  constexpr std::string_view src_ni = "Nisioi et al.";
  constexpr std::string_view src_cs = "Cooper & Shardlow";
  constexpr std::string_view src_tp = "this paper";

  add_group(ds, "NTS_def", "BLEU",
            {{84.51, src_ni, {ni, ni, bleu, ni, ote, ni, ni}},
             {84.50, src_cs, {ni, ni, bleu, ni, ote, ni, cs}},
             {87.46, src_cs, {ni, cs, bleu, ni, ote, ni, cs}},
             {85.60, src_tp, {ni, ni, bleu, approx_ni, ote, ni, tp}},
             {84.20, src_tp, {ni, ni, bleu, sacre, ote, ni, tp}},
             {86.61, src_tp, {ni, tp, bleu, approx_ni, ote, ni, tp}},
             {86.20, src_tp, {ni, tp, bleu, sacre, ote, ni, tp}}});
  add_group(ds, "NTS_def", "SARI",
            {{30.65, src_ni, {ni, ni, sari, ni, oite, ni, ni}},
             {30.65, src_cs, {ni, ni, sari, ni, oite, ni, cs}},
             {29.13, src_cs, {ni, cs, sari, ni, oite, ni, cs}},
             {30.65, src_tp, {ni, ni, sari, ni, oite, ni, tp}},
             {29.96, src_tp, {ni, tp, sari, ni, oite, ni, tp}}});
  add_group(ds, "NTS-w2v_def", "BLEU",
            {{87.50, src_ni, {ni, ni, bleu, ni, ote, ni, ni}},
             {80.75, src_cs, {ni, cs, bleu, ni, ote, ni, cs}},
             {89.36, src_tp, {ni, ni, bleu, approx_ni, ote, ni, tp}},
             {88.10, src_tp, {ni, ni, bleu, sacre, ote, ni, tp}},
             {89.64, src_tp, {ni, tp, bleu, approx_ni, ote, ni, tp}},
             {88.80, src_tp, {ni, tp, bleu, sacre, ote, ni, tp}}});
  add_group(ds, "NTS-w2v_def", "SARI",
            {{31.11, src_ni, {ni, ni, sari, ni, oite, ni, ni}},
             {30.28, src_cs, {ni, cs, sari, ni, oite, ni, cs}},
             {31.11, src_tp, {ni, ni, sari, ni, oite, ni, tp}},
             {29.12, src_tp, {ni, tp, sari, ni, oite, ni, tp}}});
}

QraDataset build_fixture() {
  QraDataset ds;
  ds.schema = default_condition_schema();

  ds.objects = {
      {"PASS", "PASS", std::string("rule-based football match report generator")},
      {"mult-base", "mult-base", std::string("essay scorer, document length baseline")},
      {"mult-word-", "mult-word⁻", std::string("essay scorer, word n-grams, no language information")},
      {"mult-word+", "mult-word⁺", std::string("essay scorer, word n-grams, with language information")},
      {"mult-POS-", "mult-POS⁻", std::string("essay scorer, POS n-grams, no language information")},
      {"mult-POS+", "mult-POS⁺", std::string("essay scorer, POS n-grams, with language information")},
      {"mult-dep-", "mult-dep⁻", std::string("essay scorer, dependency triples, no language information")},
      {"mult-dep+", "mult-dep⁺", std::string("essay scorer, dependency triples, with language information")},
      {"mult-dom-", "mult-dom⁻", std::string("essay scorer, domain features, no language information")},
      {"mult-dom+", "mult-dom⁺", std::string("essay scorer, domain features, with language information")},
      {"mult-emb-", "mult-emb⁻", std::string("essay scorer, embeddings, no language information")},
      {"mult-emb+", "mult-emb⁺", std::string("essay scorer, embeddings, with language information")},
      {"NTS_def", "NTS_def", std::string("neural text simplifier, default variant")},
      {"NTS-w2v_def", "NTS-w2v_def", std::string("neural text simplifier with word2vec, default variant")},
  };

  ds.measurands = {
      {"Clarity", "Clarity", "score", 1.0, 7.0, ValueKind::Continuous},
      {"Fluency", "Fluency", "score", 1.0, 7.0, ValueKind::Continuous},
      {"StanceId", "Identifiability of stance", "percent", 0.0, 100.0, ValueKind::Percentage},
      {"wF1", "weighted F1", "score", 0.0, 1.0, ValueKind::Continuous},
      {"BLEU", "BLEU", "score", 0.0, 100.0, ValueKind::Continuous},
      {"SARI", "SARI", "score", 0.0, 100.0, ValueKind::Continuous},
  };

  add_pass(ds);
  add_essay_scoring(ds);
  add_text_simplification(ds);
  return ds;
}

}  // namespace

const QraDataset& bundled_paper_dataset() {
  static const QraDataset dataset = build_fixture();
  return dataset;
}

}  // namespace qra
