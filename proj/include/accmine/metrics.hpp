#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "accmine/dataset.hpp"
#include "accmine/pragma.hpp"

namespace accmine::metrics {

struct EvalRecord {
  std::string id;
  Pragma reference;
  std::optional<Pragma> generated;  // nullopt = extraction failure
  bool exact_match = false;
  double levenshtein_sim = 0.0;
  bool directive_match = false;
  double jaccard = 0.0;
};

struct ClassPrf {
  std::string label;
  int tp = 0, fp = 0, fn = 0;
  int support = 0;  // gold count
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

struct PrfReport {
  std::vector<ClassPrf> per_class;  // gold classes, sorted by label
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

struct EvalReport {
  std::vector<EvalRecord> records;
  double exact_match_rate = 0.0;
  double mean_levenshtein = 0.0;
  double directive_accuracy = 0.0;  // failures count as wrong
  double directive_accuracy_excluding_failures = 0.0;
  double mean_jaccard = 0.0;
  double extraction_failure_rate = 0.0;
  PrfReport prf;
  std::vector<std::string> missing_generation_ids;  // refs never answered
};

struct EmptyInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownId : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool exact_match(const Pragma& ref, const Pragma& gen);

// 1 - dist/max(len); unit costs over Unicode scalar values; 1.0 for two
// empty strings.
double levenshtein_similarity(std::string_view a, std::string_view b);

// Intersection over union of canonical clause texts; 1.0 when both empty.
double clause_jaccard(const Pragma& ref, const Pragma& gen);

// Reserved predicted label for extraction failures.
inline constexpr std::string_view kNoneClass = "none";

EvalRecord make_eval_record(std::string id, const Pragma& ref,
                            const std::optional<Pragma>& gen);

// Gold = reference directive type; macro averages cover gold classes only.
PrfReport directive_prf(const std::vector<EvalRecord>& records);

struct RefEntry {
  std::string id;
  Pragma reference;
};

EvalReport evaluate_corpus(const std::vector<RefEntry>& refs,
                           const std::vector<dataset::GenerationRecord>& gens);

nlohmann::json report_to_json(const EvalReport& r);
std::vector<EvalRecord> records_from_json(const nlohmann::json& j);

}  // namespace accmine::metrics
