#include "accmine/dataset.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "accmine/pragma.hpp"
#include "accmine/util.hpp"

namespace accmine::dataset {

using nlohmann::ordered_json;

std::string build_user_content(const std::string& loop_text) {
  return std::string(kMarker) + "\n" + loop_text;
}

DatasetRecord training_record(const extract::PragmaLoopPair& pair,
                              const std::string& system_prompt) {
  DatasetRecord r;
  r.id = pair.id;
  r.messages.push_back({"system", system_prompt});
  r.messages.push_back({"user", build_user_content(pair.loop_text)});
  r.messages.push_back({"assistant", pair.prg.canonical});
  return r;
}

DatasetRecord inference_prompt(const extract::PragmaLoopPair& pair,
                               const std::string& system_prompt) {
  DatasetRecord r = training_record(pair, system_prompt);
  r.messages.pop_back();
  return r;
}

void write_jsonl(const std::vector<DatasetRecord>& records,
                 const std::filesystem::path& path) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    j["id"] = r.id;
    ordered_json msgs = ordered_json::array();
    for (const auto& m : r.messages)
      msgs.push_back(ordered_json{{"role", m.role}, {"content", m.content}});
    j["messages"] = std::move(msgs);
    out += j.dump();
    out += '\n';
  }
  util::write_text_file(path, out);
}

std::vector<DatasetRecord> read_jsonl(const std::filesystem::path& path) {
  std::string text = util::read_text_file(path);
  std::vector<DatasetRecord> out;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const ordered_json::exception& e) {
      throw MalformedLine(lineno, "malformed JSONL at line " +
                                      std::to_string(lineno) + ": " +
                                      e.what());
    }
    DatasetRecord r;
    try {
      r.id = j.at("id").get<std::string>();
      for (const auto& m : j.at("messages"))
        r.messages.push_back({m.at("role").get<std::string>(),
                              m.at("content").get<std::string>()});
    } catch (const ordered_json::exception& e) {
      throw MalformedLine(lineno, "bad record at line " +
                                      std::to_string(lineno) + ": " +
                                      e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

GenerationRecord extract_generation(const std::string& id,
                                    const std::string& raw_output) {
  GenerationRecord g;
  g.id = id;
  g.raw_output = raw_output;
  std::istringstream stream(raw_output);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string normalized = normalize_pragma(line);
    if (!util::starts_with(normalized, "#pragma acc")) continue;
    try {
      parse_pragma(normalized);
    } catch (const PragmaParseError&) {
      continue;  // looked like a pragma but is not usable
    }
    g.extracted_pragma = normalized;
    return g;
  }
  g.extraction_failed = true;
  return g;
}

std::vector<GenerationRecord> read_generations(
    const std::filesystem::path& path) {
  std::string text = util::read_text_file(path);
  std::vector<GenerationRecord> out;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const ordered_json::exception& e) {
      throw MalformedLine(lineno, "malformed generations line " +
                                      std::to_string(lineno) + ": " +
                                      e.what());
    }
    out.push_back(extract_generation(j.at("id").get<std::string>(),
                                     j.at("output").get<std::string>()));
  }
  return out;
}

std::string load_system_prompt(const std::filesystem::path& path) {
  std::string text = util::read_text_file(path);
  // The asset file ends with a newline; the prompt itself does not.
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.pop_back();
  return text;
}

}  // namespace accmine::dataset
