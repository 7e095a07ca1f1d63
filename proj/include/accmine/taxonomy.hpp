#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "accmine/metrics.hpp"

namespace accmine::taxonomy {

enum class ErrorCategory {
  directive_choice,
  clause_reordering,
  major_clause,
  minor_clause,
};

std::string to_string(ErrorCategory c);

struct NotAnError : std::logic_error {
  using std::logic_error::logic_error;
};

// Only defined for non-exact records. Wrong or absent directive wins;
// among directive matches, jaccard 1.0 is a pure reordering, below 0.5 a
// major clause error, and the rest (0.5 inclusive) minor.
ErrorCategory classify(const metrics::EvalRecord& rec);

struct TaxonomyReport {
  int total_records = 0;
  int non_exact = 0;
  int directive_choice = 0;
  int clause_errors = 0;  // non_exact - directive_choice
  int clause_reordering = 0;
  int major_clause = 0;
  int minor_clause = 0;

  double pct_of_total(int count) const;
  double pct_of_clause_errors(int count) const;
};

TaxonomyReport taxonomy_report(const std::vector<metrics::EvalRecord>& records);

nlohmann::json report_to_json(const TaxonomyReport& r);

}  // namespace accmine::taxonomy
