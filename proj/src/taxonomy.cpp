#include "accmine/taxonomy.hpp"

#include <nlohmann/json.hpp>

namespace accmine::taxonomy {

using nlohmann::json;

std::string to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::directive_choice: return "directive_choice";
    case ErrorCategory::clause_reordering: return "clause_reordering";
    case ErrorCategory::major_clause: return "major_clause";
    case ErrorCategory::minor_clause: return "minor_clause";
  }
  return "unknown";
}

ErrorCategory classify(const metrics::EvalRecord& rec) {
  if (rec.exact_match)
    throw NotAnError("classify called on an exact match: " + rec.id);
  if (!rec.directive_match) return ErrorCategory::directive_choice;
  if (rec.jaccard == 1.0) return ErrorCategory::clause_reordering;
  if (rec.jaccard < 0.5) return ErrorCategory::major_clause;
  return ErrorCategory::minor_clause;
}

double TaxonomyReport::pct_of_total(int count) const {
  return total_records > 0 ? 100.0 * count / total_records : 0.0;
}

double TaxonomyReport::pct_of_clause_errors(int count) const {
  return clause_errors > 0 ? 100.0 * count / clause_errors : 0.0;
}

TaxonomyReport taxonomy_report(
    const std::vector<metrics::EvalRecord>& records) {
  TaxonomyReport r;
  r.total_records = static_cast<int>(records.size());
  for (const auto& rec : records) {
    if (rec.exact_match) continue;
    ++r.non_exact;
    switch (classify(rec)) {
      case ErrorCategory::directive_choice: ++r.directive_choice; break;
      case ErrorCategory::clause_reordering: ++r.clause_reordering; break;
      case ErrorCategory::major_clause: ++r.major_clause; break;
      case ErrorCategory::minor_clause: ++r.minor_clause; break;
    }
  }
  r.clause_errors = r.non_exact - r.directive_choice;
  return r;
}

json report_to_json(const TaxonomyReport& r) {
  json j;
  j["total_records"] = r.total_records;
  j["non_exact"] = r.non_exact;
  j["directive_choice"] = {{"count", r.directive_choice},
                           {"pct_of_total", r.pct_of_total(r.directive_choice)}};
  j["clause_errors"] = {
      {"count", r.clause_errors},
      {"pct_of_total", r.pct_of_total(r.clause_errors)},
      {"clause_reordering",
       {{"count", r.clause_reordering},
        {"pct_of_clause_errors", r.pct_of_clause_errors(r.clause_reordering)}}},
      {"major_clause",
       {{"count", r.major_clause},
        {"pct_of_clause_errors", r.pct_of_clause_errors(r.major_clause)}}},
      {"minor_clause",
       {{"count", r.minor_clause},
        {"pct_of_clause_errors", r.pct_of_clause_errors(r.minor_clause)}}}};
  return j;
}

}  // namespace accmine::taxonomy
