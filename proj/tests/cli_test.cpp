#include <doctest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "accmine/dataset.hpp"
#include "accmine/subprocess.hpp"
#include "accmine/util.hpp"
#include "test_support.hpp"

using namespace accmine;
using nlohmann::json;

namespace {

subprocess::RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), testsup::accmine_binary().string());
  return subprocess::run_process(args, 120.0);
}

json read_json(const std::filesystem::path& p) {
  return json::parse(util::read_text_file(p));
}

std::string prompt_asset() {
  return (testsup::repo_root() / "assets" / "system_prompt.txt").string();
}

}  // namespace

TEST_CASE("help and usage errors use distinct exit codes") {
  auto help = run_cli({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("extract") != std::string::npos);
  CHECK(help.output.find("evaluate") != std::string::npos);

  CHECK(run_cli({}).exit_code == 2);                   // subcommand required
  CHECK(run_cli({"frobnicate"}).exit_code == 2);       // unknown subcommand
  CHECK(run_cli({"extract"}).exit_code == 2);          // missing --in
  CHECK(run_cli({"taxonomy", "--in", "/no/such/file.json"}).exit_code == 2);
}

TEST_CASE("domain failures exit 1 with an error line") {
  auto res = run_cli({"evaluate", "--refs",
                      (testsup::fixtures_dir() / "refs_mcu.jsonl").string(),
                      "--gens",
                      (testsup::fixtures_dir() / "gens_unknown_id.jsonl")
                          .string()});
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("error:") != std::string::npos);
  CHECK(res.output.find("no-such-pair") != std::string::npos);
}

TEST_CASE("split ratio is validated at two layers") {
  testsup::TempDir tmp;
  auto out = tmp.path() / "out";
  auto extract = run_cli({"--out", out.string(), "extract", "--in",
                          (testsup::fixtures_dir() / "corpus").string()});
  REQUIRE(extract.exit_code == 0);
  auto curate = run_cli({"--out", out.string(), "curate", "--in",
                         (out / "pairs.json").string()});
  REQUIRE(curate.exit_code == 0);

  // outside the CLI's accepted range entirely
  auto coarse = run_cli({"--out", out.string(), "split", "--in",
                         (out / "curated.json").string(), "--ratio", "1.5"});
  CHECK(coarse.exit_code == 2);
  // accepted by the flag parser, rejected by the splitter
  auto fine = run_cli({"--out", out.string(), "split", "--in",
                       (out / "curated.json").string(), "--ratio", "1.0"});
  CHECK(fine.exit_code == 1);
  CHECK(fine.output.find("error:") != std::string::npos);
}

TEST_CASE("pipeline smoke: extract through report on the bundled corpus") {
  testsup::TempDir tmp;
  auto out = tmp.path() / "out";
  auto corpus = (testsup::fixtures_dir() / "corpus").string();
  json gold = read_json(testsup::fixtures_dir() / "corpus_manifest.json");

  auto extract = run_cli({"--out", out.string(), "extract", "--in", corpus});
  REQUIRE(extract.exit_code == 0);
  auto pairs_json = read_json(out / "pairs.json");
  CHECK(pairs_json["totals"]["files"] == gold["files"]);
  CHECK(pairs_json["totals"]["acc_pragma_instances"] ==
        gold["acc_pragma_instances"]);
  CHECK(pairs_json["totals"]["emitted"] == gold["pairs"]);

  auto curate = run_cli({"--out", out.string(), "curate", "--in",
                         (out / "pairs.json").string()});
  REQUIRE(curate.exit_code == 0);
  auto stats = read_json(out / "stats.json");
  CHECK(stats["counts"]["extracted"] == gold["pairs"]);
  CHECK(stats["counts"]["filtered"] == gold["curation"]["kept"]);
  CHECK(stats["counts"]["rejected"] == gold["curation"]["rejected"]);
  CHECK(stats["counts"]["deduplicated"] == gold["curation"]["unique"]);
  CHECK(stats["counts"]["duplicates_dropped"] ==
        gold["curation"]["duplicates_dropped"]);
  CHECK(stats["directive_histogram"] == gold["stats"]["directive_histogram"]);

  int rejection_lines = 0;
  {
    std::ifstream in(out / "rejections.jsonl");
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) ++rejection_lines;
  }
  CHECK(rejection_lines == gold["curation"]["rejected"].get<int>());

  auto split = run_cli({"--out", out.string(), "--seed", "42", "split",
                        "--in", (out / "curated.json").string(), "--ratio",
                        "0.8"});
  REQUIRE(split.exit_code == 0);
  auto split_json = read_json(out / "split.json");
  CHECK(split_json["counts"]["train"] == gold["split"]["train"]);
  CHECK(split_json["counts"]["test"] == gold["split"]["test"]);

  auto format = run_cli({"--out", out.string(), "format", "--in",
                         (out / "curated.json").string(), "--split",
                         (out / "split.json").string(), "--system-prompt",
                         prompt_asset()});
  REQUIRE(format.exit_code == 0);
  auto train = dataset::read_jsonl(out / "train.jsonl");
  auto test = dataset::read_jsonl(out / "test.jsonl");
  auto prompts = dataset::read_jsonl(out / "prompts.jsonl");
  CHECK(static_cast<int>(train.size()) == gold["split"]["train"].get<int>());
  CHECK(static_cast<int>(test.size()) == gold["split"]["test"].get<int>());
  CHECK(prompts.size() == test.size());
  CHECK(std::filesystem::exists(out / "train.provenance.json"));
  CHECK(std::filesystem::exists(out / "test.provenance.json"));
  for (size_t i = 0; i < test.size(); ++i) {
    CHECK(test[i].messages.size() == 3);
    CHECK(prompts[i].messages.size() == 2);
    CHECK(prompts[i].id == test[i].id);
  }

  // echo the reference labels back as "generations": a perfect model
  std::string gen_lines;
  for (const auto& rec : test)
    gen_lines += json{{"id", rec.id},
                      {"output", rec.messages.back().content}}
                     .dump() +
                 "\n";
  auto gens_path = tmp.path() / "gens.jsonl";
  util::write_text_file(gens_path, gen_lines);

  auto evaluate = run_cli({"--out", out.string(), "evaluate", "--refs",
                           (out / "test.jsonl").string(), "--gens",
                           gens_path.string()});
  REQUIRE(evaluate.exit_code == 0);
  auto eval_json = read_json(out / "eval.json");
  CHECK(eval_json["aggregates"]["exact_match_rate"].get<double>() == 1.0);
  CHECK(eval_json["aggregates"]["extraction_failure_rate"].get<double>() ==
        0.0);

  auto taxonomy = run_cli({"--out", out.string(), "taxonomy", "--in",
                           (out / "eval.json").string()});
  REQUIRE(taxonomy.exit_code == 0);
  CHECK(read_json(out / "taxonomy.json")["non_exact"].get<int>() == 0);

  auto mcu = run_cli({"--out", out.string(), "--compiler",
                      testsup::stub_compiler().string(), "mcu", "--in",
                      (out / "curated.json").string(), "--refs",
                      (out / "test.jsonl").string(), "--gens",
                      gens_path.string()});
  REQUIRE(mcu.exit_code == 0);
  auto compile_report = read_json(out / "compile_report.json");
  int unique = gold["curation"]["unique"].get<int>();
  int test_n = gold["split"]["test"].get<int>();
  CHECK(compile_report["no_pragma"]["attempted"].get<int>() == unique);
  CHECK(compile_report["no_pragma"]["succeeded"].get<int>() == unique);
  CHECK(compile_report["reference_pragma"]["attempted"].get<int>() == test_n);
  CHECK(compile_report["generated_pragma"]["attempted"].get<int>() == test_n);
  CHECK(compile_report["skipped_reference"].get<int>() == unique - test_n);

  auto report = run_cli({"--out", out.string(), "report", "--in",
                         out.string()});
  REQUIRE(report.exit_code == 0);
  auto md = util::read_text_file(out / "report.md");
  CHECK(md.find("## Dataset creation steps") != std::string::npos);
  CHECK(md.find("| Training dataset | " +
                std::to_string(gold["split"]["train"].get<int>()) + " |") !=
        std::string::npos);
  CHECK(md.find("## Evaluation aggregates") != std::string::npos);
  CHECK(md.find("## Compile success rates") != std::string::npos);
  CHECK(std::filesystem::exists(out / "report.json"));
}

TEST_CASE("imported harness sources shadow synthesis for matching ids") {
  testsup::TempDir tmp;
  auto out = tmp.path() / "out";
  auto corpus = (testsup::fixtures_dir() / "corpus").string();
  REQUIRE(run_cli({"--out", out.string(), "extract", "--in", corpus})
              .exit_code == 0);
  REQUIRE(run_cli({"--out", out.string(), "curate", "--in",
                   (out / "pairs.json").string()})
              .exit_code == 0);

  auto curated = read_json(out / "curated.json");
  std::string victim = curated["pairs"][0]["id"].get<std::string>();

  // an imported unit under the same id, rigged to fail its baseline
  auto import_dir = tmp.path() / "imports";
  std::filesystem::create_directories(import_dir);
  util::write_text_file(import_dir / (victim + ".c"),
                        "/* STUB_FAIL_BASELINE */\n"
                        "void k(void) {\n  <TARGET_PRAGMA_LOCATION>\n"
                        "  for (int i = 0; i < 4; ++i) { ; }\n}\n");

  auto mcu = run_cli({"--out", out.string(), "--compiler",
                      testsup::stub_compiler().string(), "mcu", "--in",
                      (out / "curated.json").string(), "--mcus",
                      import_dir.string()});
  REQUIRE(mcu.exit_code == 0);

  int units = static_cast<int>(curated["pairs"].size());
  auto compile_report = read_json(out / "compile_report.json");
  CHECK(compile_report["no_pragma"]["attempted"].get<int>() == units);
  // only the imported source carries the scripted failure marker
  CHECK(compile_report["no_pragma"]["succeeded"].get<int>() == units - 1);

  bool victim_failed = false;
  std::ifstream in(out / "mcu_outcomes.jsonl");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = json::parse(line);
    if (j["id"] == victim && j["variant"] == "no_pragma")
      victim_failed = !j["success"].get<bool>();
  }
  CHECK(victim_failed);
}

TEST_CASE("report on an empty directory is a reported failure") {
  testsup::TempDir tmp;
  auto empty = tmp.path() / "nothing";
  std::filesystem::create_directories(empty);
  auto res = run_cli({"--out", (tmp.path() / "out").string(), "report",
                      "--in", empty.string()});
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("no artifacts") != std::string::npos);
}
