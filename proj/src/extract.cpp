#include "accmine/extract.hpp"

#include <nlohmann/json.hpp>

#include "accmine/util.hpp"

namespace accmine::extract {

using cst::Node;
using cst::NodeKind;
using nlohmann::json;

std::string pair_id(const std::string& canonical_pragma,
                    const std::string& loop_text) {
  return util::sha256_hex(canonical_pragma + "\n" + loop_text);
}

int ExtractionReport::skipped_total() const {
  int n = 0;
  for (const auto& [_, c] : skipped) n += c;
  return n;
}

cst::Tree parse_source(const ingest::SourceFile& f) {
  return cst::parse_translation_unit(f.text,
                                     cst::lang_for_extension(f.path));
}

namespace {

// Loose family check on the folded pragma line; normalization and the real
// parser do the rest. Tolerates `# pragma` and arbitrary spacing.
bool looks_like_acc(const std::string& folded) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < folded.size() &&
           (folded[i] == ' ' || folded[i] == '\t'))
      ++i;
  };
  skip_ws();
  if (i >= folded.size() || folded[i] != '#') return false;
  ++i;
  skip_ws();
  if (folded.compare(i, 6, "pragma") != 0) return false;
  i += 6;
  if (i < folded.size() && !std::isspace(static_cast<unsigned char>(folded[i])))
    return false;
  skip_ws();
  if (folded.compare(i, 3, "acc") != 0) return false;
  i += 3;
  return i >= folded.size() ||
         std::isspace(static_cast<unsigned char>(folded[i]));
}

struct FileScan {
  const cst::Tree& tree;
  const std::string& file_path;
  ExtractionReport& report;

  void scan_siblings(const std::vector<Node>& siblings) {
    for (size_t i = 0; i < siblings.size(); ++i) {
      const Node& n = siblings[i];
      if (n.kind == NodeKind::pragma) handle_pragma(siblings, i);
      scan_siblings(n.children);
    }
  }

  void handle_pragma(const std::vector<Node>& siblings, size_t i) {
    std::string folded = cst::directive_text(tree, siblings[i]);
    if (!looks_like_acc(folded)) return;
    ++report.acc_pragma_instances;

    Pragma parsed;
    try {
      parsed = parse_pragma(folded);
    } catch (const PragmaParseError&) {
      ++report.skipped[kSkipNotAnAccPragma];
      return;
    }

    // Walk forward over directive-line siblings; the first statement node
    // decides the outcome.
    bool stacked = false;
    for (size_t j = i + 1; j < siblings.size(); ++j) {
      const Node& next = siblings[j];
      if (next.kind == NodeKind::pragma || next.kind == NodeKind::preproc) {
        if (next.kind == NodeKind::pragma) stacked = true;
        continue;
      }
      if (next.kind == NodeKind::for_stmt) {
        emit(parsed, folded, siblings[i], next, stacked);
      } else {
        ++report.skipped[kSkipNoFollowingFor];
      }
      return;
    }
    ++report.skipped[kSkipNoFollowingFor];
  }

  void emit(const Pragma& parsed, const std::string& folded,
            const Node& pragma_node, const Node& for_node, bool stacked) {
    PragmaLoopPair p;
    p.prg = parsed;
    p.pragma_raw = util::trim(folded);
    p.loop_text = std::string(tree.text(for_node));
    p.loop_body = cst::loop_body_text(tree, for_node);
    p.file = file_path;
    p.pragma_line = tree.line_of(pragma_node.begin);
    p.loop_begin = for_node.begin;
    p.loop_end = for_node.end;
    p.stacked = stacked;
    p.id = pair_id(parsed.canonical, p.loop_text);
    report.pairs.push_back(std::move(p));
  }
};

}  // namespace

void extract_pairs(const cst::Tree& tree, const std::string& file_path,
                   ExtractionReport& report) {
  FileScan scan{tree, file_path, report};
  scan.scan_siblings(tree.root.children);
}

ExtractionReport corpus_extract(
    const std::vector<ingest::SourceFile>& files) {
  ExtractionReport report;
  for (const auto& f : files) {
    ++report.files;
    cst::Tree tree;
    try {
      tree = parse_source(f);
    } catch (const cst::GrammarUnavailable&) {
      ++report.files_unparsed;
      continue;
    }
    extract_pairs(tree, f.path, report);
  }
  return report;
}

json pair_to_json(const PragmaLoopPair& p) {
  json j;
  j["id"] = p.id;
  j["pragma"] = p.prg.canonical;
  j["pragma_raw"] = p.pragma_raw;
  j["loop_text"] = p.loop_text;
  j["loop_body"] = p.loop_body;
  j["file"] = p.file;
  j["pragma_line"] = p.pragma_line;
  j["loop_span"] = {p.loop_begin, p.loop_end};
  j["stacked"] = p.stacked;
  return j;
}

PragmaLoopPair pair_from_json(const json& j) {
  PragmaLoopPair p;
  p.id = j.at("id").get<std::string>();
  p.prg = parse_pragma(j.at("pragma").get<std::string>());
  p.pragma_raw = j.value("pragma_raw", p.prg.canonical);
  p.loop_text = j.at("loop_text").get<std::string>();
  p.loop_body = j.at("loop_body").get<std::string>();
  p.file = j.value("file", "");
  p.pragma_line = j.value("pragma_line", 0);
  if (j.contains("loop_span")) {
    p.loop_begin = j["loop_span"].at(0).get<size_t>();
    p.loop_end = j["loop_span"].at(1).get<size_t>();
  }
  p.stacked = j.value("stacked", false);
  return p;
}

json report_to_json(const ExtractionReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back(pair_to_json(p));
  json j;
  j["pairs"] = std::move(pairs);
  j["skipped"] = r.skipped.empty() ? json::object() : json(r.skipped);
  j["totals"] = {{"files", r.files},
                 {"files_unparsed", r.files_unparsed},
                 {"acc_pragma_instances", r.acc_pragma_instances},
                 {"emitted", static_cast<int>(r.pairs.size())},
                 {"skipped", r.skipped_total()}};
  return j;
}

std::vector<PragmaLoopPair> pairs_from_json_file(
    const std::filesystem::path& path) {
  json j = json::parse(util::read_text_file(path));
  const json& arr = j.contains("pairs") ? j["pairs"] : j;
  std::vector<PragmaLoopPair> out;
  for (const auto& pj : arr) out.push_back(pair_from_json(pj));
  return out;
}

}  // namespace accmine::extract
