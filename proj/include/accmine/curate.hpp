#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "accmine/extract.hpp"

namespace accmine::curate {

enum class RejectionReason {
  empty_loop,
  infinite_loop_no_body,
  break_statement,
  goto_statement,
  continue_statement,
  return_statement,
};

std::string to_string(RejectionReason r);

struct Rejection {
  extract::PragmaLoopPair pair;
  RejectionReason reason;
};

struct FilterResult {
  std::vector<extract::PragmaLoopPair> kept;
  std::vector<Rejection> rejected;
};

// Rejects empty/infinite loops and loops whose body contains loop-exiting
// control flow (break outside a nested switch, goto, continue, return).
FilterResult filter_pairs(const std::vector<extract::PragmaLoopPair>& pairs);

// Classification for a single loop; nullopt = kept.
std::optional<RejectionReason> rejection_for(
    const extract::PragmaLoopPair& pair);

struct DedupResult {
  std::vector<extract::PragmaLoopPair> unique;
  std::map<std::string, int> group_sizes;  // kept id -> occurrences
  int dropped = 0;
};

// Byte-exact loop-body dedup, first occurrence wins.
DedupResult deduplicate(const std::vector<extract::PragmaLoopPair>& pairs);

struct EmptyCorpus : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SplitAssignment {
  double ratio = 0.8;
  std::uint64_t seed = 42;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

// Deterministic stratified split. Pairs are grouped by complexity score,
// each score group is shuffled with a seeded Mersenne Twister and its
// train share rounded to the nearest integer; a repair pass then nudges
// group shares so every complexity bin's train count stays within one pair
// of proportional.
SplitAssignment split(const std::vector<extract::PragmaLoopPair>& pairs,
                      double ratio, std::uint64_t seed);

struct CorpusStats {
  std::map<std::string, int> directive_histogram;
  std::map<std::string, int> complexity_histogram;
  int total = 0;
};

CorpusStats corpus_stats(const std::vector<extract::PragmaLoopPair>& pairs);

nlohmann::json split_to_json(const SplitAssignment& s);
SplitAssignment split_from_json(const nlohmann::json& j);
nlohmann::json stats_to_json(const CorpusStats& s);

}  // namespace accmine::curate
