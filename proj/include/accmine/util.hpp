#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace accmine::util {

struct Utf8Result {
  std::string text;        // valid UTF-8, invalid sequences replaced by U+FFFD
  int replacements = 0;    // number of replacement characters inserted
};

// Re-encodes arbitrary bytes as valid UTF-8, substituting U+FFFD for every
// invalid sequence and counting the substitutions.
Utf8Result utf8_lossy(std::string_view bytes);

// Decodes UTF-8 into Unicode scalar values; invalid bytes decode as U+FFFD.
std::vector<uint32_t> utf8_codepoints(std::string_view text);

std::string sha256_hex(std::string_view data);

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, std::string_view content);

std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

// Resolves an executable name against PATH; names containing '/' are
// returned as-is when executable.
std::optional<std::filesystem::path> find_executable(const std::string& name);

}  // namespace accmine::util
