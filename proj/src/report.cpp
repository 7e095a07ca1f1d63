#include "accmine/report.hpp"

#include <cstdio>

namespace accmine::report {

using nlohmann::json;

namespace {

std::string fmt(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

void histogram_table(std::string& md, const json& hist,
                     const std::string& key_header) {
  md += "| " + key_header + " | Count |\n|---|---|\n";
  for (auto it = hist.begin(); it != hist.end(); ++it)
    md += "| " + it.key() + " | " + std::to_string(it->get<int>()) + " |\n";
  md += "\n";
}

}  // namespace

std::string render_markdown(const ReportInputs& in) {
  std::string md = "# OpenACC pragma pipeline report\n\n";

  if (in.pipeline) {
    const json& p = *in.pipeline;
    md += "## Dataset creation steps\n\n| Step | Count |\n|---|---|\n";
    static const std::pair<const char*, const char*> rows[] = {
        {"files", "Source files"},
        {"acc_pragma_instances", "Pragma instances"},
        {"extracted", "Extracted pairs"},
        {"filtered", "After filtering"},
        {"deduplicated", "After deduplication"},
        {"train", "Training dataset"},
        {"test", "Testing dataset"}};
    for (const auto& [key, label] : rows)
      if (p.contains(key))
        md += std::string("| ") + label + " | " +
              std::to_string(p[key].get<long>()) + " |\n";
    md += "\n";
  }

  if (in.stats) {
    const json& s = *in.stats;
    if (s.contains("directive_histogram")) {
      md += "## Directive type distribution\n\n";
      histogram_table(md, s["directive_histogram"], "Directive type");
    }
    if (s.contains("complexity_histogram")) {
      md += "## Pragma complexity distribution\n\n";
      histogram_table(md, s["complexity_histogram"], "Complexity");
    }
  }

  if (in.evaluation) {
    const json& e = *in.evaluation;
    if (e.contains("aggregates")) {
      const json& a = e["aggregates"];
      md += "## Evaluation aggregates\n\n| Metric | Value |\n|---|---|\n";
      static const std::pair<const char*, const char*> rows[] = {
          {"exact_match_rate", "Exact match"},
          {"mean_levenshtein", "Mean Levenshtein similarity"},
          {"directive_accuracy", "Directive accuracy"},
          {"directive_accuracy_excluding_failures",
           "Directive accuracy (excl. failures)"},
          {"mean_jaccard", "Mean clause Jaccard"},
          {"extraction_failure_rate", "Extraction failure rate"}};
      for (const auto& [key, label] : rows)
        if (a.contains(key))
          md += std::string("| ") + label + " | " +
                fmt(a[key].get<double>()) + " |\n";
      md += "\n";
    }
    if (e.contains("directive_prf")) {
      const json& prf = e["directive_prf"];
      md += "## Directive type precision / recall / F1\n\n"
            "| Type | Precision | Recall | F1 | Support |\n"
            "|---|---|---|---|---|\n";
      for (const auto& c : prf.value("per_class", json::array()))
        md += "| " + c["label"].get<std::string>() + " | " +
              fmt(c["precision"].get<double>()) + " | " +
              fmt(c["recall"].get<double>()) + " | " +
              fmt(c["f1"].get<double>()) + " | " +
              std::to_string(c["support"].get<int>()) + " |\n";
      md += "| macro | " + fmt(prf["macro_precision"].get<double>()) +
            " | " + fmt(prf["macro_recall"].get<double>()) + " | " +
            fmt(prf["macro_f1"].get<double>()) + " | — |\n\n";
    }
  }

  if (in.taxonomy) {
    const json& t = *in.taxonomy;
    md += "## Error categories (non-exact generations)\n\n"
          "| Category | Count | % of total |\n|---|---|---|\n";
    int total = t.value("total_records", 0);
    auto pct = [&](int c) {
      return total > 0 ? fmt(100.0 * c / total, 1) + "%" : std::string("—");
    };
    int non_exact = t.value("non_exact", 0);
    md += "| Total non-exact | " + std::to_string(non_exact) + " | " +
          pct(non_exact) + " |\n";
    if (t.contains("directive_choice")) {
      int c = t["directive_choice"]["count"].get<int>();
      md += "| Directive choice | " + std::to_string(c) + " | " + pct(c) +
            " |\n";
    }
    if (t.contains("clause_errors")) {
      const json& ce = t["clause_errors"];
      int c = ce["count"].get<int>();
      md += "| Clause errors (correct directive) | " + std::to_string(c) +
            " | " + pct(c) + " |\n";
      static const std::pair<const char*, const char*> subs[] = {
          {"clause_reordering", "— reordering"},
          {"major_clause", "— major"},
          {"minor_clause", "— minor"}};
      for (const auto& [key, label] : subs)
        if (ce.contains(key)) {
          int sc = ce[key]["count"].get<int>();
          md += std::string("| ") + label + " | " + std::to_string(sc) +
                " | " + pct(sc) + " |\n";
        }
    }
    md += "\n";
  }

  if (in.compile) {
    const json& c = *in.compile;
    md += "## Compile success rates\n\n"
          "| Variant | Attempted | Succeeded | Rate |\n|---|---|---|---|\n";
    static const std::pair<const char*, const char*> rows[] = {
        {"no_pragma", "No pragma (baseline)"},
        {"reference_pragma", "Reference pragma"},
        {"generated_pragma", "Generated pragma"}};
    for (const auto& [key, label] : rows)
      if (c.contains(key)) {
        const json& v = c[key];
        md += std::string("| ") + label + " | " +
              std::to_string(v["attempted"].get<int>()) + " | " +
              std::to_string(v["succeeded"].get<int>()) + " | " +
              fmt(v["rate"].get<double>()) + " |\n";
      }
    md += "\n";
  }

  return md;
}

json render_json(const ReportInputs& in) {
  json j = json::object();
  if (in.pipeline) j["pipeline"] = *in.pipeline;
  if (in.stats) j["stats"] = *in.stats;
  if (in.evaluation) j["evaluation"] = *in.evaluation;
  if (in.taxonomy) j["taxonomy"] = *in.taxonomy;
  if (in.compile) j["compile"] = *in.compile;
  return j;
}

}  // namespace accmine::report
