#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace accmine::report {

struct ReportInputs {
  std::optional<nlohmann::json> pipeline;   // extraction/curation counts
  std::optional<nlohmann::json> stats;      // histograms
  std::optional<nlohmann::json> evaluation; // EvalReport JSON
  std::optional<nlohmann::json> taxonomy;   // TaxonomyReport JSON
  std::optional<nlohmann::json> compile;    // CompileReport JSON

  bool any() const {
    return pipeline || stats || evaluation || taxonomy || compile;
  }
};

// Markdown with one table per present section; absent sections are simply
// omitted. Deterministic for identical inputs.
std::string render_markdown(const ReportInputs& in);

nlohmann::json render_json(const ReportInputs& in);

}  // namespace accmine::report
