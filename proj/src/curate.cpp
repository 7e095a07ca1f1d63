#include "accmine/curate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "accmine/cst.hpp"

namespace accmine::curate {

using extract::PragmaLoopPair;
using nlohmann::json;

std::string to_string(RejectionReason r) {
  switch (r) {
    case RejectionReason::empty_loop: return "empty_loop";
    case RejectionReason::infinite_loop_no_body: return "infinite_loop_no_body";
    case RejectionReason::break_statement: return "break_statement";
    case RejectionReason::goto_statement: return "goto_statement";
    case RejectionReason::continue_statement: return "continue_statement";
    case RejectionReason::return_statement: return "return_statement";
  }
  return "unknown";
}

namespace {

const cst::Node* find_for(const cst::Node& n) {
  if (n.kind == cst::NodeKind::for_stmt) return &n;
  for (const auto& c : n.children)
    if (const cst::Node* f = find_for(c)) return f;
  return nullptr;
}

struct ControlFlow {
  bool has_break = false;
  bool has_goto = false;
  bool has_continue = false;
  bool has_return = false;
};

// A break is exempt when its nearest enclosing breakable construct is a
// switch; entering any loop resets that shelter.
void scan_control_flow(const cst::Node& n, bool in_switch, ControlFlow& cf) {
  switch (n.kind) {
    case cst::NodeKind::break_stmt:
      if (!in_switch) cf.has_break = true;
      return;
    case cst::NodeKind::goto_stmt: cf.has_goto = true; return;
    case cst::NodeKind::continue_stmt: cf.has_continue = true; return;
    case cst::NodeKind::return_stmt: cf.has_return = true; return;
    case cst::NodeKind::switch_stmt: in_switch = true; break;
    case cst::NodeKind::for_stmt:
    case cst::NodeKind::while_stmt:
    case cst::NodeKind::do_stmt: in_switch = false; break;
    default: break;
  }
  for (const auto& c : n.children) scan_control_flow(c, in_switch, cf);
}

cst::Lang lang_for_pair(const PragmaLoopPair& pair) {
  try {
    return cst::lang_for_extension(pair.file);
  } catch (const cst::GrammarUnavailable&) {
    return cst::Lang::cpp;
  }
}

}  // namespace

std::optional<RejectionReason> rejection_for(const PragmaLoopPair& pair) {
  cst::Tree tree =
      cst::parse_translation_unit(pair.loop_text, lang_for_pair(pair));
  const cst::Node* loop = find_for(tree.root);
  if (loop == nullptr) return RejectionReason::empty_loop;

  if (loop->empty_condition) return RejectionReason::infinite_loop_no_body;
  if (cst::body_is_empty(*loop)) return RejectionReason::empty_loop;

  ControlFlow cf;
  const cst::Node* body = cst::for_body(*loop);
  scan_control_flow(*body, false, cf);
  if (cf.has_break) return RejectionReason::break_statement;
  if (cf.has_goto) return RejectionReason::goto_statement;
  if (cf.has_continue) return RejectionReason::continue_statement;
  if (cf.has_return) return RejectionReason::return_statement;
  return std::nullopt;
}

FilterResult filter_pairs(const std::vector<PragmaLoopPair>& pairs) {
  FilterResult result;
  for (const auto& p : pairs) {
    if (auto reason = rejection_for(p))
      result.rejected.push_back({p, *reason});
    else
      result.kept.push_back(p);
  }
  return result;
}

DedupResult deduplicate(const std::vector<PragmaLoopPair>& pairs) {
  DedupResult result;
  std::unordered_map<std::string, std::string> body_to_kept_id;
  for (const auto& p : pairs) {
    auto [it, fresh] = body_to_kept_id.try_emplace(p.loop_body, p.id);
    if (fresh) {
      result.unique.push_back(p);
      result.group_sizes[p.id] = 1;
    } else {
      ++result.group_sizes[it->second];
      ++result.dropped;
    }
  }
  return result;
}

namespace {

struct Stratum {
  int score = 0;
  std::vector<const PragmaLoopPair*> members;  // shuffled
  long train = 0;
  double exact = 0.0;  // ratio * size
};

}  // namespace

SplitAssignment split(const std::vector<PragmaLoopPair>& pairs, double ratio,
                      std::uint64_t seed) {
  if (pairs.empty()) throw EmptyCorpus("cannot split an empty pair list");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("split ratio must be inside (0,1)");

  std::map<int, std::vector<const PragmaLoopPair*>> by_score;
  for (const auto& p : pairs)
    by_score[complexity_score(p.prg)].push_back(&p);

  // One generator drives all strata in ascending score order, so the whole
  // assignment is a pure function of (pairs, ratio, seed).
  std::mt19937_64 rng(seed);
  std::vector<Stratum> strata;
  for (auto& [score, members] : by_score) {
    for (size_t i = members.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(rng() % i);
      std::swap(members[i - 1], members[j]);
    }
    Stratum s;
    s.score = score;
    s.members = std::move(members);
    s.exact = ratio * static_cast<double>(s.members.size());
    s.train = std::lround(s.exact);
    s.train = std::clamp<long>(s.train, 0,
                               static_cast<long>(s.members.size()));
    strata.push_back(std::move(s));
  }

  // Repair pass: rounding within a bin may drift past one pair of
  // proportional when several score groups round the same way; shift the
  // worst-rounded group until the bin is back inside the band.
  for (int bin = 0; bin < 4; ++bin) {
    auto in_bin = [&](const Stratum& s) {
      return static_cast<int>(complexity_bin(s.score)) == bin;
    };
    // Single multiplication, not a sum of per-stratum shares: accumulating
    // rounded products can drift a hair past the band and trigger a bogus
    // repair when the bin is mathematically within one pair already.
    long total = 0;
    long have = 0;
    for (const auto& s : strata)
      if (in_bin(s)) {
        total += static_cast<long>(s.members.size());
        have += s.train;
      }
    double target = ratio * static_cast<double>(total);
    while (have - target > 1.0) {
      Stratum* pick = nullptr;
      for (auto& s : strata)
        if (in_bin(s) && s.train > 0 &&
            (pick == nullptr ||
             s.train - s.exact > pick->train - pick->exact))
          pick = &s;
      if (pick == nullptr) break;
      --pick->train;
      --have;
    }
    while (target - have > 1.0) {
      Stratum* pick = nullptr;
      for (auto& s : strata)
        if (in_bin(s) && s.train < static_cast<long>(s.members.size()) &&
            (pick == nullptr ||
             s.exact - s.train > pick->exact - pick->train))
          pick = &s;
      if (pick == nullptr) break;
      ++pick->train;
      ++have;
    }
  }

  SplitAssignment out;
  out.ratio = ratio;
  out.seed = seed;
  for (const auto& s : strata) {
    for (size_t i = 0; i < s.members.size(); ++i) {
      if (static_cast<long>(i) < s.train)
        out.train_ids.push_back(s.members[i]->id);
      else
        out.test_ids.push_back(s.members[i]->id);
    }
  }
  return out;
}

CorpusStats corpus_stats(const std::vector<PragmaLoopPair>& pairs) {
  CorpusStats stats;
  for (const auto& p : pairs) {
    ++stats.directive_histogram[std::string(
        directive_type_name(directive_type(p.prg)))];
    ++stats.complexity_histogram[std::string(
        complexity_bin_name(complexity_bin(complexity_score(p.prg))))];
    ++stats.total;
  }
  return stats;
}

json split_to_json(const SplitAssignment& s) {
  json j;
  j["ratio"] = s.ratio;
  j["seed"] = s.seed;
  j["counts"] = {{"train", s.train_ids.size()},
                 {"test", s.test_ids.size()},
                 {"total", s.train_ids.size() + s.test_ids.size()}};
  j["train"] = s.train_ids;
  j["test"] = s.test_ids;
  return j;
}

SplitAssignment split_from_json(const json& j) {
  SplitAssignment s;
  s.ratio = j.at("ratio").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.train_ids = j.at("train").get<std::vector<std::string>>();
  s.test_ids = j.at("test").get<std::vector<std::string>>();
  return s;
}

json stats_to_json(const CorpusStats& s) {
  json j;
  j["directive_histogram"] = s.directive_histogram.empty()
                                 ? json::object()
                                 : json(s.directive_histogram);
  j["complexity_histogram"] = s.complexity_histogram.empty()
                                  ? json::object()
                                  : json(s.complexity_histogram);
  j["total"] = s.total;
  return j;
}

}  // namespace accmine::curate
