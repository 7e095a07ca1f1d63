#include "accmine/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "accmine/util.hpp"

namespace accmine::ingest {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

SearchQuery default_queries() {
  SearchQuery q;
  q.phrases = {"#pragma acc loop", "#pragma acc parallel loop"};
  q.languages = {"c", "c++"};
  return q;
}

namespace {

std::string build_query_string(const SearchQuery& q, size_t phrase_idx) {
  std::string s = "\"" + q.phrases[phrase_idx] + "\"";
  for (const auto& lang : q.languages) s += " language:" + lang;
  return s;
}

bool contains_any_phrase(const std::string& text, const SearchQuery& q) {
  return std::any_of(q.phrases.begin(), q.phrases.end(),
                     [&](const std::string& p) {
                       return text.find(p) != std::string::npos;
                     });
}

}  // namespace

std::vector<SourceFile> search_remote(const SearchQuery& q,
                                      const std::string& auth_token,
                                      int page_limit,
                                      const RemoteConfig& cfg) {
  if (q.phrases.empty()) throw NetworkError("search query has no phrases");
  if (auth_token.empty()) throw AuthError("empty auth token");
  if (page_limit < 1) throw NetworkError("page limit must be >= 1");

  httplib::Client client(cfg.base_url);
  client.set_connection_timeout(cfg.connect_timeout_s, 0);
  client.set_read_timeout(cfg.connect_timeout_s, 0);
  httplib::Headers headers = {
      {cfg.auth_header, cfg.auth_scheme + " " + auth_token},
      {"Accept", "application/json"}};

  std::vector<SourceFile> out;
  std::set<std::pair<std::string, std::string>> seen;

  for (size_t pi = 0; pi < q.phrases.size(); ++pi) {
    for (int page = 1; page <= page_limit; ++page) {
      httplib::Params params = {
          {"q", build_query_string(q, pi)},
          {"page", std::to_string(page)},
          {"per_page", std::to_string(cfg.page_size)}};
      std::string path =
          httplib::append_query_params(cfg.search_path, params);

      httplib::Result res;
      double backoff = cfg.backoff_initial_s;
      for (int attempt = 0;; ++attempt) {
        res = client.Get(path, headers);
        if (!res) {
          if (attempt >= cfg.max_retries)
            throw NetworkError("transport failure fetching " + path + ": " +
                               httplib::to_string(res.error()));
        } else if (res->status == 401 || res->status == 403) {
          throw AuthError("search request rejected with status " +
                          std::to_string(res->status) + " for " + path);
        } else if (res->status == 429 || res->status >= 500) {
          if (attempt >= cfg.max_retries)
            throw RateLimited("retries exhausted (status " +
                              std::to_string(res->status) + ") for " + path);
        } else if (res->status != 200) {
          throw NetworkError("unexpected status " +
                             std::to_string(res->status) + " for " + path);
        } else {
          break;
        }
        std::this_thread::sleep_for(
            std::chrono::duration<double>(backoff));
        backoff *= 2;
      }

      json body;
      try {
        body = json::parse(res->body);
      } catch (const json::exception& e) {
        throw NetworkError("unparseable search response for " + path +
                           ": " + e.what());
      }
      const json items = body.value("items", json::array());
      for (const auto& item : items) {
        std::string repo;
        if (item.contains("repository")) {
          const auto& r = item["repository"];
          repo = r.is_string() ? r.get<std::string>()
                               : r.value("full_name", "");
        }
        std::string fpath = item.value("path", "");
        if (fpath.empty()) continue;
        if (!seen.insert({repo, fpath}).second) continue;
        std::string raw = item.value("text", item.value("content", ""));
        auto decoded = util::utf8_lossy(raw);
        if (!contains_any_phrase(decoded.text, q)) continue;
        SourceFile f;
        f.path = fpath;
        f.text = std::move(decoded.text);
        f.origin = Origin::remote;
        f.repository = repo;
        f.replaced_bytes = decoded.replacements;
        out.push_back(std::move(f));
      }
      if (static_cast<int>(items.size()) < cfg.page_size) break;
    }
  }
  return out;
}

IngestResult ingest_directory(const fs::path& root,
                              const std::set<std::string>& extensions) {
  if (!fs::is_directory(root))
    throw NotADirectory("not a directory: " + root.string());

  std::vector<fs::path> rel_paths;
  std::error_code ec;
  for (fs::recursive_directory_iterator
           it(root, fs::directory_options::skip_permission_denied, ec),
       end;
       it != end; it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file(ec)) continue;
    std::string ext = it->path().extension().string();
    if (!ext.empty() && ext.front() == '.') ext.erase(0, 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (extensions.count(ext) == 0) continue;
    rel_paths.push_back(fs::relative(it->path(), root));
  }
  std::sort(rel_paths.begin(), rel_paths.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });

  IngestResult result;
  for (const auto& rel : rel_paths) {
    std::string raw;
    try {
      raw = util::read_text_file(root / rel);
    } catch (const std::exception&) {
      ++result.unreadable_skipped;
      continue;
    }
    auto decoded = util::utf8_lossy(raw);
    SourceFile f;
    f.path = rel.generic_string();
    f.text = std::move(decoded.text);
    f.origin = Origin::local;
    f.replaced_bytes = decoded.replacements;
    result.files.push_back(std::move(f));
  }
  return result;
}

void save_snapshot(const std::vector<SourceFile>& files,
                   const fs::path& dir) {
  fs::create_directories(dir / "files");
  ordered_json manifest = ordered_json::array();
  int index = 0;
  auto now = std::chrono::system_clock::now();
  auto stamp = std::chrono::duration_cast<std::chrono::seconds>(
                   now.time_since_epoch())
                   .count();
  for (const auto& f : files) {
    fs::path src(f.path);
    std::string ext = src.has_extension() ? src.extension().string() : ".c";
    char name[32];
    std::snprintf(name, sizeof(name), "%06d", index++);
    std::string stored = std::string("files/") + name + ext;
    util::write_text_file(dir / stored, f.text);
    ordered_json entry;
    entry["repository"] = f.repository;
    entry["path"] = f.path;
    entry["stored"] = stored;
    entry["sha256"] = util::sha256_hex(f.text);
    entry["bytes"] = f.text.size();
    entry["replaced_bytes"] = f.replaced_bytes;
    entry["retrieved_at"] = stamp;
    manifest.push_back(std::move(entry));
  }
  util::write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::vector<SourceFile> load_snapshot(const fs::path& dir) {
  json manifest = json::parse(util::read_text_file(dir / "manifest.json"));
  std::vector<SourceFile> out;
  for (const auto& entry : manifest) {
    SourceFile f;
    f.repository = entry.value("repository", "");
    f.path = entry.value("path", "");
    f.origin = Origin::remote;
    f.replaced_bytes = entry.value("replaced_bytes", 0);
    f.text = util::read_text_file(dir / entry.at("stored").get<std::string>());
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace accmine::ingest
