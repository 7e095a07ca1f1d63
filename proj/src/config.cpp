#include "accmine/config.hpp"

#include <nlohmann/json.hpp>

#include "accmine/util.hpp"

namespace accmine::config {

using nlohmann::json;

PipelineConfig PipelineConfig::load(const std::filesystem::path& file) {
  PipelineConfig c;
  json j = json::parse(util::read_text_file(file));

  if (j.contains("corpus_dir"))
    c.corpus_dir = j["corpus_dir"].get<std::string>();
  if (j.contains("snapshot_dir"))
    c.snapshot_dir = j["snapshot_dir"].get<std::string>();
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("system_prompt"))
    c.system_prompt_path = j["system_prompt"].get<std::string>();
  c.ratio = j.value("ratio", c.ratio);
  c.seed = j.value("seed", c.seed);
  c.jobs = j.value("jobs", c.jobs);

  if (j.contains("compiler")) {
    const json& cj = j["compiler"];
    c.compiler.compiler = cj.value("command", c.compiler.compiler);
    if (cj.contains("base_flags"))
      c.compiler.base_flags =
          cj["base_flags"].get<std::vector<std::string>>();
    if (cj.contains("acc_flags"))
      c.compiler.acc_flags = cj["acc_flags"].get<std::vector<std::string>>();
    c.compiler.timeout_s = cj.value("timeout_s", c.compiler.timeout_s);
    if (cj.contains("work_dir"))
      c.compiler.work_dir = cj["work_dir"].get<std::string>();
  }

  if (j.contains("remote")) {
    const json& rj = j["remote"];
    c.remote.base_url = rj.value("base_url", c.remote.base_url);
    c.remote.search_path = rj.value("search_path", c.remote.search_path);
    c.remote.auth_header = rj.value("auth_header", c.remote.auth_header);
    c.remote.auth_scheme = rj.value("auth_scheme", c.remote.auth_scheme);
    c.remote.page_size = rj.value("page_size", c.remote.page_size);
    c.remote.max_retries = rj.value("max_retries", c.remote.max_retries);
    c.remote.backoff_initial_s =
        rj.value("backoff_initial_s", c.remote.backoff_initial_s);
  }
  return c;
}

json PipelineConfig::echo() const {
  json j;
  j["corpus_dir"] = corpus_dir.generic_string();
  j["snapshot_dir"] = snapshot_dir.generic_string();
  j["out_dir"] = out_dir.generic_string();
  j["system_prompt"] = system_prompt_path.generic_string();
  j["ratio"] = ratio;
  j["seed"] = seed;
  j["jobs"] = jobs;
  j["compiler"] = {{"command", compiler.compiler},
                   {"base_flags", compiler.base_flags},
                   {"acc_flags", compiler.acc_flags},
                   {"timeout_s", compiler.timeout_s},
                   {"work_dir", compiler.work_dir.generic_string()}};
  j["remote"] = {{"base_url", remote.base_url},
                 {"search_path", remote.search_path},
                 {"auth_header", remote.auth_header},
                 {"page_size", remote.page_size},
                 {"max_retries", remote.max_retries}};
  return j;
}

}  // namespace accmine::config
