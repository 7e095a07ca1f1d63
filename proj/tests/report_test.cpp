#include <doctest.h>

#include <nlohmann/json.hpp>

#include "accmine/report.hpp"
#include "test_support.hpp"

using namespace accmine;
using nlohmann::json;

namespace {

report::ReportInputs full_inputs() {
  report::ReportInputs in;
  in.pipeline = json{{"files", 23068}, {"acc_pragma_instances", 32271},
                     {"extracted", 21718}, {"filtered", 14500},
                     {"deduplicated", 4033}, {"train", 3223}, {"test", 810}};
  in.stats = json{
      {"directive_histogram", {{"parallel", 2100}, {"loop", 1500},
                               {"kernels", 433}}},
      {"complexity_histogram", {{"simple", 2500}, {"medium", 1200},
                                {"complex", 320}, {"very_complex", 13}}}};
  in.evaluation = json{
      {"aggregates",
       {{"exact_match_rate", 0.504},
        {"mean_levenshtein", 0.885},
        {"directive_accuracy", 0.833},
        {"directive_accuracy_excluding_failures", 0.861},
        {"mean_jaccard", 0.742},
        {"extraction_failure_rate", 0.032}}},
      {"directive_prf",
       {{"per_class",
         json::array({{{"label", "parallel"}, {"precision", 0.91},
                       {"recall", 0.88}, {"f1", 0.895}, {"support", 410}}})},
        {"macro_precision", 0.87},
        {"macro_recall", 0.81},
        {"macro_f1", 0.84}}}};
  in.taxonomy = json{
      {"total_records", 810},
      {"non_exact", 402},
      {"directive_choice", {{"count", 105}}},
      {"clause_errors",
       {{"count", 297},
        {"clause_reordering", {{"count", 60}}},
        {"major_clause", {{"count", 57}}},
        {"minor_clause", {{"count", 180}}}}}};
  in.compile = json{{"no_pragma", {{"attempted", 10}, {"succeeded", 7},
                                   {"rate", 0.7}}},
                    {"reference_pragma", {{"attempted", 7}, {"succeeded", 7},
                                          {"rate", 1.0}}},
                    {"generated_pragma", {{"attempted", 6}, {"succeeded", 5},
                                          {"rate", 5.0 / 6.0}}}};
  return in;
}

}  // namespace

TEST_CASE("markdown report renders one section per input") {
  auto md = report::render_markdown(full_inputs());
  CHECK(md.find("## Dataset creation steps") != std::string::npos);
  CHECK(md.find("| Extracted pairs | 21718 |") != std::string::npos);
  CHECK(md.find("| Training dataset | 3223 |") != std::string::npos);
  CHECK(md.find("| Testing dataset | 810 |") != std::string::npos);

  CHECK(md.find("## Directive type distribution") != std::string::npos);
  CHECK(md.find("| parallel | 2100 |") != std::string::npos);
  CHECK(md.find("## Pragma complexity distribution") != std::string::npos);
  CHECK(md.find("| very_complex | 13 |") != std::string::npos);

  CHECK(md.find("## Evaluation aggregates") != std::string::npos);
  CHECK(md.find("| Exact match | 0.5040 |") != std::string::npos);
  CHECK(md.find("| Mean Levenshtein similarity | 0.8850 |") !=
        std::string::npos);
  CHECK(md.find("| Directive accuracy | 0.8330 |") != std::string::npos);

  CHECK(md.find("## Directive type precision / recall / F1") !=
        std::string::npos);
  CHECK(md.find("| parallel | 0.9100 | 0.8800 | 0.8950 | 410 |") !=
        std::string::npos);
  CHECK(md.find("| macro | 0.8700 | 0.8100 | 0.8400 | — |") !=
        std::string::npos);

  CHECK(md.find("## Error categories (non-exact generations)") !=
        std::string::npos);
  CHECK(md.find("| Directive choice | 105 |") != std::string::npos);
  CHECK(md.find("| — minor | 180 |") != std::string::npos);

  CHECK(md.find("## Compile success rates") != std::string::npos);
  CHECK(md.find("| No pragma (baseline) | 10 | 7 | 0.7000 |") !=
        std::string::npos);
  CHECK(md.find("| Generated pragma | 6 | 5 | 0.8333 |") != std::string::npos);
}

TEST_CASE("absent inputs leave no trace in the markdown") {
  report::ReportInputs in;
  in.taxonomy = json{{"total_records", 4}, {"non_exact", 1}};
  auto md = report::render_markdown(in);
  CHECK(md.find("## Error categories") != std::string::npos);
  CHECK(md.find("## Dataset creation steps") == std::string::npos);
  CHECK(md.find("## Evaluation aggregates") == std::string::npos);
  CHECK(md.find("## Compile success rates") == std::string::npos);

  report::ReportInputs empty;
  CHECK(!empty.any());
  auto blank = report::render_markdown(empty);
  CHECK(blank.find("##") == std::string::npos);
}

TEST_CASE("markdown rendering is deterministic") {
  auto a = report::render_markdown(full_inputs());
  auto b = report::render_markdown(full_inputs());
  CHECK(a == b);
}

TEST_CASE("json report is a faithful envelope") {
  auto in = full_inputs();
  auto j = report::render_json(in);
  CHECK(j["pipeline"] == *in.pipeline);
  CHECK(j["stats"] == *in.stats);
  CHECK(j["evaluation"] == *in.evaluation);
  CHECK(j["taxonomy"] == *in.taxonomy);
  CHECK(j["compile"] == *in.compile);

  report::ReportInputs partial;
  partial.compile = *in.compile;
  auto pj = report::render_json(partial);
  CHECK(pj.size() == 1);
  CHECK(pj.contains("compile"));
}
