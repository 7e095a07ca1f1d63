#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "accmine/config.hpp"
#include "accmine/curate.hpp"
#include "accmine/dataset.hpp"
#include "accmine/extract.hpp"
#include "accmine/ingest.hpp"
#include "accmine/mcu.hpp"
#include "accmine/metrics.hpp"
#include "accmine/pragma.hpp"
#include "accmine/report.hpp"
#include "accmine/taxonomy.hpp"
#include "accmine/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace accmine;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> jobs;
  std::optional<std::string> compiler;
  std::optional<double> ratio;
  std::string in;
  std::string refs;
  std::string gens;
  std::string mcus;
  std::string split_path;
  std::string system_prompt;
  int pages = 1;
};

config::PipelineConfig effective_config(const Options& o) {
  config::PipelineConfig cfg;
  if (!o.config_path.empty())
    cfg = config::PipelineConfig::load(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out_dir = *o.out;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.compiler) cfg.compiler.compiler = *o.compiler;
  if (o.ratio) cfg.ratio = *o.ratio;
  if (!o.system_prompt.empty()) cfg.system_prompt_path = o.system_prompt;
  if (cfg.system_prompt_path.empty())
    cfg.system_prompt_path = "assets/system_prompt.txt";
  cfg.compiler.jobs = cfg.jobs;
  return cfg;
}

void write_json(const fs::path& path, const json& j) {
  util::write_text_file(path, j.dump(2) + "\n");
}

json with_provenance(json j, const config::PipelineConfig& cfg) {
  j["config"] = cfg.echo();
  return j;
}

const std::set<std::string>& source_extensions() {
  static const std::set<std::string> exts = {
      "c", "h", "cc", "cpp", "cxx", "hpp", "hh", "hxx", "ipp", "tpp"};
  return exts;
}

std::vector<ingest::SourceFile> load_input_corpus(const fs::path& in) {
  if (fs::exists(in / "manifest.json")) return ingest::load_snapshot(in);
  return ingest::ingest_directory(in, source_extensions()).files;
}

int cmd_mine(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  const char* token = std::getenv("ACCMINE_API_TOKEN");
  if (token == nullptr || *token == '\0') {
    std::cerr << "mine: ACCMINE_API_TOKEN is not set\n";
    return 1;
  }
  auto files = ingest::search_remote(ingest::default_queries(), token,
                                     o.pages, cfg.remote);
  fs::path snap = cfg.out_dir / cfg.snapshot_dir;
  ingest::save_snapshot(files, snap);
  std::cout << "mine: " << files.size() << " files -> "
            << snap.generic_string() << "\n";
  return 0;
}

int cmd_extract(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  auto files = load_input_corpus(o.in);
  extract::ExtractionReport report = extract::corpus_extract(files);
  fs::create_directories(cfg.out_dir);
  write_json(cfg.out_dir / "pairs.json",
             with_provenance(extract::report_to_json(report), cfg));
  std::cout << "extract: " << report.pairs.size() << " pairs from "
            << report.files << " files ("
            << report.acc_pragma_instances << " acc pragma instances, "
            << report.skipped_total() << " skipped)\n";
  return 0;
}

int cmd_curate(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  auto pairs = extract::pairs_from_json_file(o.in);
  auto filtered = curate::filter_pairs(pairs);
  auto deduped = curate::deduplicate(filtered.kept);
  auto stats = curate::corpus_stats(deduped.unique);
  fs::create_directories(cfg.out_dir);

  json curated;
  curated["pairs"] = json::array();
  for (const auto& p : deduped.unique)
    curated["pairs"].push_back(extract::pair_to_json(p));
  write_json(cfg.out_dir / "curated.json", with_provenance(curated, cfg));

  std::string rejects;
  for (const auto& r : filtered.rejected) {
    json line = {{"id", r.pair.id},
                 {"file", r.pair.file},
                 {"reason", curate::to_string(r.reason)}};
    rejects += line.dump() + "\n";
  }
  util::write_text_file(cfg.out_dir / "rejections.jsonl", rejects);

  json sj = curate::stats_to_json(stats);
  sj["counts"] = {{"extracted", pairs.size()},
                  {"filtered", filtered.kept.size()},
                  {"rejected", filtered.rejected.size()},
                  {"deduplicated", deduped.unique.size()},
                  {"duplicates_dropped", deduped.dropped}};
  write_json(cfg.out_dir / "stats.json", with_provenance(sj, cfg));

  std::cout << "curate: " << pairs.size() << " -> "
            << filtered.kept.size() << " filtered -> "
            << deduped.unique.size() << " unique\n";
  return 0;
}

int cmd_split(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  auto pairs = extract::pairs_from_json_file(o.in);
  curate::SplitAssignment sa = curate::split(pairs, cfg.ratio, cfg.seed);
  fs::create_directories(cfg.out_dir);
  write_json(cfg.out_dir / "split.json",
             with_provenance(curate::split_to_json(sa), cfg));
  std::cout << "split: " << sa.train_ids.size() << " train / "
            << sa.test_ids.size() << " test (ratio " << cfg.ratio
            << ", seed " << cfg.seed << ")\n";
  return 0;
}

int cmd_format(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  auto pairs = extract::pairs_from_json_file(o.in);
  std::string prompt = dataset::load_system_prompt(cfg.system_prompt_path);
  fs::create_directories(cfg.out_dir);

  auto write_set = [&](const std::vector<extract::PragmaLoopPair>& ps,
                       const std::string& stem, bool with_label) {
    std::vector<dataset::DatasetRecord> records;
    for (const auto& p : ps)
      records.push_back(with_label ? dataset::training_record(p, prompt)
                                   : dataset::inference_prompt(p, prompt));
    dataset::write_jsonl(records, cfg.out_dir / (stem + ".jsonl"));
    write_json(cfg.out_dir / (stem + ".provenance.json"),
               with_provenance(json{{"records", records.size()}}, cfg));
  };

  if (!o.split_path.empty()) {
    curate::SplitAssignment sa = curate::split_from_json(
        json::parse(util::read_text_file(o.split_path)));
    std::map<std::string, const extract::PragmaLoopPair*> index;
    for (const auto& p : pairs) index[p.id] = &p;
    auto select = [&](const std::vector<std::string>& ids) {
      std::vector<extract::PragmaLoopPair> out;
      for (const auto& id : ids) {
        auto it = index.find(id);
        if (it == index.end())
          throw std::runtime_error("split id not in pair set: " + id);
        out.push_back(*it->second);
      }
      return out;
    };
    write_set(select(sa.train_ids), "train", true);
    write_set(select(sa.test_ids), "test", true);
    write_set(select(sa.test_ids), "prompts", false);
    std::cout << "format: " << sa.train_ids.size() << " train, "
              << sa.test_ids.size() << " test records\n";
  } else {
    write_set(pairs, "dataset", true);
    std::cout << "format: " << pairs.size() << " records\n";
  }
  return 0;
}

std::vector<metrics::RefEntry> refs_from_jsonl(const fs::path& path) {
  std::vector<metrics::RefEntry> refs;
  for (const auto& rec : dataset::read_jsonl(path)) {
    const dataset::Message* assistant = nullptr;
    for (const auto& m : rec.messages)
      if (m.role == "assistant") assistant = &m;
    if (assistant == nullptr)
      throw std::runtime_error("reference record " + rec.id +
                               " has no assistant message");
    refs.push_back({rec.id, parse_pragma(assistant->content)});
  }
  return refs;
}

int cmd_evaluate(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  auto refs = refs_from_jsonl(o.refs);
  auto gens = dataset::read_generations(o.gens);
  metrics::EvalReport report = metrics::evaluate_corpus(refs, gens);
  fs::create_directories(cfg.out_dir);
  write_json(cfg.out_dir / "eval.json",
             with_provenance(metrics::report_to_json(report), cfg));
  std::cout << "evaluate: " << report.records.size() << " records, exact "
            << report.exact_match_rate << ", failures "
            << report.extraction_failure_rate << "\n";
  return 0;
}

int cmd_taxonomy(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  json ej = json::parse(util::read_text_file(o.in));
  auto records = metrics::records_from_json(ej);
  taxonomy::TaxonomyReport report = taxonomy::taxonomy_report(records);
  fs::create_directories(cfg.out_dir);
  write_json(cfg.out_dir / "taxonomy.json",
             with_provenance(taxonomy::report_to_json(report), cfg));
  std::cout << "taxonomy: " << report.non_exact << " non-exact of "
            << report.total_records << "\n";
  return 0;
}

int cmd_mcu(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  std::vector<mcu::Mcu> mcus;
  std::set<std::string> have;
  if (!o.mcus.empty())
    for (auto& m : mcu::import_mcus(o.mcus)) {
      have.insert(m.id);
      mcus.push_back(std::move(m));
    }
  if (!o.in.empty())
    for (const auto& p : extract::pairs_from_json_file(o.in))
      if (have.count(p.id) == 0) mcus.push_back(mcu::synthesize_mcu(p));

  std::map<std::string, Pragma> refs;
  if (!o.refs.empty())
    for (const auto& r : refs_from_jsonl(o.refs))
      refs.emplace(r.id, r.reference);
  std::map<std::string, std::optional<Pragma>> gens;
  if (!o.gens.empty())
    for (const auto& g : dataset::read_generations(o.gens)) {
      std::optional<Pragma> parsed;
      if (!g.extraction_failed && g.extracted_pragma)
        parsed = parse_pragma(*g.extracted_pragma);
      gens.emplace(g.id, std::move(parsed));
    }

  mcu::CompilerConfig cc = cfg.compiler;
  if (cc.work_dir.empty()) cc.work_dir = cfg.out_dir / "mcu_work";
  auto outcomes = mcu::run_compile_matrix(mcus, refs, gens, cc);
  mcu::CompileReport report = mcu::compile_report(outcomes);

  fs::create_directories(cfg.out_dir);
  std::string log;
  for (const auto& oc : outcomes) log += mcu::outcome_to_json(oc).dump() + "\n";
  util::write_text_file(cfg.out_dir / "mcu_outcomes.jsonl", log);
  write_json(cfg.out_dir / "compile_report.json",
             with_provenance(mcu::report_to_json(report), cfg));
  std::cout << "mcu: " << mcus.size() << " units, baseline pass "
            << report.baseline_pass << ", reference rate "
            << report.reference.rate << ", generated rate "
            << report.generated.rate << "\n";
  return 0;
}

int cmd_report(const Options& o) {
  config::PipelineConfig cfg = effective_config(o);
  fs::path dir = o.in.empty() ? cfg.out_dir : fs::path(o.in);
  report::ReportInputs inputs;

  auto maybe = [&](const char* name) -> std::optional<json> {
    fs::path p = dir / name;
    if (!fs::exists(p)) return std::nullopt;
    return json::parse(util::read_text_file(p));
  };

  json pipeline = json::object();
  if (auto pairs = maybe("pairs.json")) {
    const json& t = (*pairs)["totals"];
    pipeline["files"] = t.value("files", 0);
    pipeline["acc_pragma_instances"] = t.value("acc_pragma_instances", 0);
    pipeline["extracted"] = t.value("emitted", 0);
  }
  if (auto stats = maybe("stats.json")) {
    if (stats->contains("counts")) {
      const json& c = (*stats)["counts"];
      if (!pipeline.contains("extracted") && c.contains("extracted"))
        pipeline["extracted"] = c["extracted"];
      pipeline["filtered"] = c.value("filtered", 0);
      pipeline["deduplicated"] = c.value("deduplicated", 0);
    }
    inputs.stats = *stats;
  }
  if (auto split = maybe("split.json")) {
    pipeline["train"] = (*split)["counts"]["train"];
    pipeline["test"] = (*split)["counts"]["test"];
  }
  if (!pipeline.empty()) inputs.pipeline = pipeline;
  inputs.evaluation = maybe("eval.json");
  inputs.taxonomy = maybe("taxonomy.json");
  inputs.compile = maybe("compile_report.json");

  if (!inputs.any()) {
    std::cerr << "report: no artifacts found under "
              << dir.generic_string() << "\n";
    return 1;
  }
  fs::create_directories(cfg.out_dir);
  util::write_text_file(cfg.out_dir / "report.md",
                        report::render_markdown(inputs));
  write_json(cfg.out_dir / "report.json",
             with_provenance(report::render_json(inputs), cfg));
  std::cout << "report: wrote "
            << (cfg.out_dir / "report.md").generic_string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OpenACC pragma-loop mining, curation, and evaluation"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--config", o.config_path, "Pipeline config JSON")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "Random seed override");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--jobs", o.jobs, "Parallel job count")
      ->check(CLI::PositiveNumber);
  app.add_option("--compiler", o.compiler, "Compiler executable");

  CLI::App* mine = app.add_subcommand("mine", "Remote search to snapshot");
  mine->add_option("--pages", o.pages, "Result pages per query phrase")
      ->check(CLI::PositiveNumber);

  CLI::App* extract_cmd =
      app.add_subcommand("extract", "Extract pragma-loop pairs");
  extract_cmd
      ->add_option("--in", o.in, "Corpus directory or snapshot")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI::App* curate_cmd =
      app.add_subcommand("curate", "Filter, dedup, and tally pairs");
  curate_cmd->add_option("--in", o.in, "pairs.json from extract")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* split_cmd =
      app.add_subcommand("split", "Stratified train/test split");
  split_cmd->add_option("--in", o.in, "curated.json")
      ->required()
      ->check(CLI::ExistingFile);
  split_cmd->add_option("--ratio", o.ratio, "Train fraction")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));

  CLI::App* format_cmd =
      app.add_subcommand("format", "Write chat-format JSONL datasets");
  format_cmd->add_option("--in", o.in, "curated.json")
      ->required()
      ->check(CLI::ExistingFile);
  format_cmd->add_option("--split", o.split_path, "split.json")
      ->check(CLI::ExistingFile);
  format_cmd->add_option("--system-prompt", o.system_prompt,
                         "System prompt asset");

  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Score generations against references");
  eval_cmd->add_option("--refs", o.refs, "Reference records JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--gens", o.gens, "Generations JSONL")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* tax_cmd =
      app.add_subcommand("taxonomy", "Classify non-exact generations");
  tax_cmd->add_option("--in", o.in, "eval.json")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* mcu_cmd =
      app.add_subcommand("mcu", "Compile-check minimal units");
  mcu_cmd->add_option("--in", o.in, "curated.json for synthesis")
      ->check(CLI::ExistingFile);
  mcu_cmd->add_option("--mcus", o.mcus, "Imported MCU directory")
      ->check(CLI::ExistingDirectory);
  mcu_cmd->add_option("--refs", o.refs, "Reference records JSONL")
      ->check(CLI::ExistingFile);
  mcu_cmd->add_option("--gens", o.gens, "Generations JSONL")
      ->check(CLI::ExistingFile);

  CLI::App* report_cmd =
      app.add_subcommand("report", "Aggregate markdown/JSON report");
  report_cmd->add_option("--in", o.in, "Artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (mine->parsed()) return cmd_mine(o);
    if (extract_cmd->parsed()) return cmd_extract(o);
    if (curate_cmd->parsed()) return cmd_curate(o);
    if (split_cmd->parsed()) return cmd_split(o);
    if (format_cmd->parsed()) return cmd_format(o);
    if (eval_cmd->parsed()) return cmd_evaluate(o);
    if (tax_cmd->parsed()) return cmd_taxonomy(o);
    if (mcu_cmd->parsed()) return cmd_mcu(o);
    if (report_cmd->parsed()) return cmd_report(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
