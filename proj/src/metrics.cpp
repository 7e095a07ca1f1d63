#include "accmine/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "accmine/util.hpp"

namespace accmine::metrics {

using nlohmann::json;

bool exact_match(const Pragma& ref, const Pragma& gen) {
  return ref.canonical == gen.canonical;
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
  std::vector<uint32_t> ca = util::utf8_codepoints(a);
  std::vector<uint32_t> cb = util::utf8_codepoints(b);
  if (ca.empty() && cb.empty()) return 1.0;
  if (ca.size() < cb.size()) std::swap(ca, cb);

  std::vector<size_t> prev(cb.size() + 1), curr(cb.size() + 1);
  std::iota(prev.begin(), prev.end(), size_t{0});
  for (size_t i = 1; i <= ca.size(); ++i) {
    curr[0] = i;
    for (size_t j = 1; j <= cb.size(); ++j) {
      size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
    }
    std::swap(prev, curr);
  }
  double dist = static_cast<double>(prev[cb.size()]);
  return 1.0 - dist / static_cast<double>(std::max(ca.size(), cb.size()));
}

double clause_jaccard(const Pragma& ref, const Pragma& gen) {
  std::set<std::string> a = clause_set(ref);
  std::set<std::string> b = clause_set(gen);
  if (a.empty() && b.empty()) return 1.0;
  size_t inter = 0;
  for (const auto& c : a) inter += b.count(c);
  size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

EvalRecord make_eval_record(std::string id, const Pragma& ref,
                            const std::optional<Pragma>& gen) {
  EvalRecord r;
  r.id = std::move(id);
  r.reference = ref;
  r.generated = gen;
  if (!gen) return r;  // failure: all metrics stay at their zero defaults
  r.exact_match = exact_match(ref, *gen);
  r.levenshtein_sim = levenshtein_similarity(ref.canonical, gen->canonical);
  r.directive_match = directive_type(ref) == directive_type(*gen);
  r.jaccard = clause_jaccard(ref, *gen);
  return r;
}

PrfReport directive_prf(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw EmptyInput("no records for directive P/R/F1");

  auto gold_of = [](const EvalRecord& r) {
    return std::string(directive_type_name(directive_type(r.reference)));
  };
  auto pred_of = [](const EvalRecord& r) {
    return r.generated
               ? std::string(directive_type_name(directive_type(*r.generated)))
               : std::string(kNoneClass);
  };

  std::map<std::string, ClassPrf> classes;
  for (const auto& r : records) classes[gold_of(r)];  // gold classes only
  for (const auto& r : records) {
    std::string gold = gold_of(r);
    std::string pred = pred_of(r);
    ++classes[gold].support;
    if (pred == gold) {
      ++classes[gold].tp;
    } else {
      ++classes[gold].fn;
      auto it = classes.find(pred);
      if (it != classes.end()) ++it->second.fp;
    }
  }

  PrfReport report;
  for (auto& [label, c] : classes) {
    c.label = label;
    c.precision = c.tp + c.fp > 0
                      ? static_cast<double>(c.tp) / (c.tp + c.fp)
                      : 0.0;
    c.recall =
        c.tp + c.fn > 0 ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
    c.f1 = c.precision + c.recall > 0
               ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
               : 0.0;
    report.macro_precision += c.precision;
    report.macro_recall += c.recall;
    report.macro_f1 += c.f1;
    report.per_class.push_back(c);
  }
  double n = static_cast<double>(report.per_class.size());
  report.macro_precision /= n;
  report.macro_recall /= n;
  report.macro_f1 /= n;
  return report;
}

EvalReport evaluate_corpus(
    const std::vector<RefEntry>& refs,
    const std::vector<dataset::GenerationRecord>& gens) {
  std::map<std::string, const Pragma*> ref_index;
  for (const auto& r : refs) ref_index[r.id] = &r.reference;

  EvalReport report;
  std::set<std::string> answered;
  for (const auto& g : gens) {
    auto it = ref_index.find(g.id);
    if (it == ref_index.end())
      throw UnknownId("generation id has no reference: " + g.id);
    answered.insert(g.id);
    std::optional<Pragma> gen;
    if (!g.extraction_failed && g.extracted_pragma)
      gen = parse_pragma(*g.extracted_pragma);
    report.records.push_back(make_eval_record(g.id, *it->second, gen));
  }
  for (const auto& r : refs)
    if (answered.count(r.id) == 0)
      report.missing_generation_ids.push_back(r.id);

  const auto& rs = report.records;
  if (!rs.empty()) {
    double n = static_cast<double>(rs.size());
    int exact = 0, dir_ok = 0, failures = 0;
    double lev = 0.0, jac = 0.0;
    for (const auto& r : rs) {
      exact += r.exact_match;
      dir_ok += r.directive_match;
      failures += !r.generated.has_value();
      lev += r.levenshtein_sim;
      jac += r.jaccard;
    }
    report.exact_match_rate = exact / n;
    report.mean_levenshtein = lev / n;
    report.directive_accuracy = dir_ok / n;
    report.directive_accuracy_excluding_failures =
        rs.size() > static_cast<size_t>(failures)
            ? dir_ok / (n - failures)
            : 0.0;
    report.mean_jaccard = jac / n;
    report.extraction_failure_rate = failures / n;
    report.prf = directive_prf(rs);
  }
  return report;
}

json report_to_json(const EvalReport& r) {
  json recs = json::array();
  for (const auto& rec : r.records) {
    json j;
    j["id"] = rec.id;
    j["reference"] = rec.reference.canonical;
    if (rec.generated)
      j["generated"] = rec.generated->canonical;
    else
      j["generated"] = nullptr;
    j["exact_match"] = rec.exact_match;
    j["levenshtein_sim"] = rec.levenshtein_sim;
    j["directive_match"] = rec.directive_match;
    j["jaccard"] = rec.jaccard;
    recs.push_back(std::move(j));
  }
  json per_class = json::array();
  for (const auto& c : r.prf.per_class) {
    per_class.push_back({{"label", c.label},
                         {"support", c.support},
                         {"tp", c.tp},
                         {"fp", c.fp},
                         {"fn", c.fn},
                         {"precision", c.precision},
                         {"recall", c.recall},
                         {"f1", c.f1}});
  }
  json j;
  j["records"] = std::move(recs);
  j["aggregates"] = {
      {"exact_match_rate", r.exact_match_rate},
      {"mean_levenshtein", r.mean_levenshtein},
      {"directive_accuracy", r.directive_accuracy},
      {"directive_accuracy_excluding_failures",
       r.directive_accuracy_excluding_failures},
      {"mean_jaccard", r.mean_jaccard},
      {"extraction_failure_rate", r.extraction_failure_rate}};
  j["directive_prf"] = {{"per_class", std::move(per_class)},
                        {"macro_precision", r.prf.macro_precision},
                        {"macro_recall", r.prf.macro_recall},
                        {"macro_f1", r.prf.macro_f1}};
  j["missing_generations"] = r.missing_generation_ids;
  return j;
}

std::vector<EvalRecord> records_from_json(const json& j) {
  const json& arr = j.contains("records") ? j["records"] : j;
  std::vector<EvalRecord> out;
  for (const auto& rj : arr) {
    std::string id = rj.at("id").get<std::string>();
    Pragma ref = parse_pragma(rj.at("reference").get<std::string>());
    std::optional<Pragma> gen;
    if (rj.contains("generated") && !rj["generated"].is_null())
      gen = parse_pragma(rj["generated"].get<std::string>());
    out.push_back(make_eval_record(std::move(id), ref, gen));
  }
  return out;
}

}  // namespace accmine::metrics
