#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "accmine/cst.hpp"
#include "accmine/ingest.hpp"
#include "accmine/pragma.hpp"

namespace accmine::extract {

struct PragmaLoopPair {
  std::string id;           // content hash of normalized pragma + loop text
  Pragma prg;
  std::string pragma_raw;   // directive line as written (folded)
  std::string loop_text;    // full for statement including body
  std::string loop_body;    // body only, braces stripped
  std::string file;
  int pragma_line = 0;      // 1-based
  size_t loop_begin = 0;    // byte offsets into the source file
  size_t loop_end = 0;
  bool stacked = false;     // other pragmas sit between this one and the loop
};

std::string pair_id(const std::string& canonical_pragma,
                    const std::string& loop_text);

// Skip-reason keys used in reports.
inline constexpr const char* kSkipNotAnAccPragma = "not_an_acc_pragma";
inline constexpr const char* kSkipNoFollowingFor = "no_following_for";

struct ExtractionReport {
  std::vector<PragmaLoopPair> pairs;
  std::map<std::string, int> skipped;
  int files = 0;
  int files_unparsed = 0;        // no grammar for extension
  int acc_pragma_instances = 0;  // pragma nodes in the acc family

  int skipped_total() const;
};

cst::Tree parse_source(const ingest::SourceFile& f);

// Appends this file's pairs and counts into `report`.
void extract_pairs(const cst::Tree& tree, const std::string& file_path,
                   ExtractionReport& report);

ExtractionReport corpus_extract(const std::vector<ingest::SourceFile>& files);

nlohmann::json pair_to_json(const PragmaLoopPair& p);
PragmaLoopPair pair_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const ExtractionReport& r);
std::vector<PragmaLoopPair> pairs_from_json_file(
    const std::filesystem::path& path);

}  // namespace accmine::extract
