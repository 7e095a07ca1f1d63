#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "accmine/extract.hpp"

namespace accmine::dataset {

inline constexpr std::string_view kMarker = "<TARGET_PRAGMA_LOCATION>";

struct Message {
  std::string role;
  std::string content;
  bool operator==(const Message&) const = default;
};

struct DatasetRecord {
  std::string id;
  std::vector<Message> messages;  // system, user[, assistant]
  bool operator==(const DatasetRecord&) const = default;
};

struct GenerationRecord {
  std::string id;
  std::string raw_output;
  std::optional<std::string> extracted_pragma;  // normalized
  bool extraction_failed = false;
};

struct MalformedLine : std::runtime_error {
  int line;
  MalformedLine(int l, const std::string& msg)
      : std::runtime_error(msg), line(l) {}
};

// Marker line + newline + the loop verbatim.
std::string build_user_content(const std::string& loop_text);

DatasetRecord training_record(const extract::PragmaLoopPair& pair,
                              const std::string& system_prompt);
// Same record minus the assistant label.
DatasetRecord inference_prompt(const extract::PragmaLoopPair& pair,
                               const std::string& system_prompt);

void write_jsonl(const std::vector<DatasetRecord>& records,
                 const std::filesystem::path& path);
std::vector<DatasetRecord> read_jsonl(const std::filesystem::path& path);

// Scans a raw model output for the first line that normalizes to a
// parseable `#pragma acc` pragma.
GenerationRecord extract_generation(const std::string& id,
                                    const std::string& raw_output);

// Generations file: JSONL of {"id": ..., "output": ...}.
std::vector<GenerationRecord> read_generations(
    const std::filesystem::path& path);

std::string load_system_prompt(const std::filesystem::path& path);

}  // namespace accmine::dataset
