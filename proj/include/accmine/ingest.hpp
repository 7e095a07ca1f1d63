#pragma once

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace accmine::ingest {

enum class Origin { remote, local };

struct SourceFile {
  std::string path;        // repo-relative (remote) or root-relative (local)
  std::string text;        // UTF-8 after lossy re-encoding
  Origin origin = Origin::local;
  std::string repository;  // remote only, e.g. "owner/name"
  int replaced_bytes = 0;  // invalid UTF-8 bytes replaced with U+FFFD
};

struct SearchQuery {
  std::vector<std::string> phrases;
  std::vector<std::string> languages;
};

// The two pragma phrases the corpus is mined with, over C and C++.
SearchQuery default_queries();

struct AuthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RateLimited : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NetworkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotADirectory : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RemoteConfig {
  std::string base_url = "https://api.github.com";
  std::string search_path = "/search/code";
  std::string auth_header = "Authorization";
  std::string auth_scheme = "Bearer";
  int page_size = 100;
  int max_retries = 5;
  double backoff_initial_s = 2.0;
  int connect_timeout_s = 10;
};

// Pages through the code-search endpoint until page_limit pages or a short
// page. Results deduplicated by (repository, path); files not containing
// any query phrase are dropped so the postcondition holds regardless of
// provider quirks. Retries 429/5xx with exponential backoff.
std::vector<SourceFile> search_remote(const SearchQuery& q,
                                      const std::string& auth_token,
                                      int page_limit,
                                      const RemoteConfig& cfg);

struct IngestResult {
  std::vector<SourceFile> files;
  int unreadable_skipped = 0;
};

// Recursive walk, lexicographic path order, directory symlinks not
// followed. `extensions` holds bare extensions like "c", "cpp".
IngestResult ingest_directory(const std::filesystem::path& root,
                              const std::set<std::string>& extensions);

// Content-addressed local snapshot of fetched files, so the rest of the
// pipeline is replayable offline.
void save_snapshot(const std::vector<SourceFile>& files,
                   const std::filesystem::path& dir);
std::vector<SourceFile> load_snapshot(const std::filesystem::path& dir);

}  // namespace accmine::ingest
