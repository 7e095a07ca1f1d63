#include "accmine/mcu.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "accmine/dataset.hpp"
#include "accmine/subprocess.hpp"
#include "accmine/util.hpp"

namespace accmine::mcu {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Variant v) {
  switch (v) {
    case Variant::no_pragma: return "no_pragma";
    case Variant::reference_pragma: return "reference_pragma";
    case Variant::generated_pragma: return "generated_pragma";
  }
  return "unknown";
}

std::string instantiate(const Mcu& m, const std::optional<Pragma>& p) {
  const std::string& src = m.source;
  std::string_view marker = dataset::kMarker;

  size_t first = src.find(marker);
  if (first == std::string::npos)
    throw MarkerMissing("MCU " + m.id + " has no target marker");
  if (src.find(marker, first + marker.size()) != std::string::npos)
    throw MarkerDuplicated("MCU " + m.id + " has multiple target markers");

  size_t line_begin = src.rfind('\n', first);
  line_begin = line_begin == std::string::npos ? 0 : line_begin + 1;
  size_t line_end = src.find('\n', first);

  if (p) {
    std::string out = src.substr(0, line_begin) + p->canonical;
    if (line_end != std::string::npos) out += src.substr(line_end);
    return out;
  }
  // delete the whole line including its newline
  std::string out = src.substr(0, line_begin);
  if (line_end != std::string::npos) out += src.substr(line_end + 1);
  return out;
}

McuOutcome compile(const std::string& source, const std::string& id,
                   Variant variant, const CompilerConfig& cfg,
                   bool acc_enabled, const std::string& ext) {
  McuOutcome o;
  o.id = id;
  o.variant = variant;
  o.attempted = true;

  fs::path dir = cfg.work_dir.empty() ? fs::temp_directory_path()
                                      : cfg.work_dir;
  fs::create_directories(dir);
  fs::path input = dir / (id + "_" + to_string(variant) + ext);
  fs::path object = input;
  object.replace_extension(".o");
  util::write_text_file(input, source);

  std::vector<std::string> argv;
  argv.push_back(cfg.compiler);
  argv.insert(argv.end(), cfg.base_flags.begin(), cfg.base_flags.end());
  if (acc_enabled)
    argv.insert(argv.end(), cfg.acc_flags.begin(), cfg.acc_flags.end());
  argv.push_back(input.string());
  argv.push_back("-o");
  argv.push_back(object.string());

  subprocess::RunResult res = subprocess::run_process(argv, cfg.timeout_s);
  o.success = !res.timed_out && res.exit_code == 0;
  o.diagnostics = res.timed_out ? "timeout" : res.output;
  o.duration_s = static_cast<double>(res.duration.count()) / 1000.0;
  return o;
}

namespace {

constexpr int kVariantOrder(Variant v) { return static_cast<int>(v); }

std::vector<McuOutcome> run_one_mcu(
    const Mcu& m, const std::map<std::string, Pragma>& refs,
    const std::map<std::string, std::optional<Pragma>>& gens,
    const CompilerConfig& cfg) {
  std::vector<McuOutcome> out;

  McuOutcome baseline =
      compile(instantiate(m, std::nullopt), m.id, Variant::no_pragma, cfg,
              /*acc_enabled=*/false, m.extension);
  bool gate_open = baseline.success;
  out.push_back(std::move(baseline));

  auto skipped = [&](Variant v, const char* why) {
    McuOutcome o;
    o.id = m.id;
    o.variant = v;
    o.attempted = false;
    o.diagnostics = why;
    return o;
  };

  auto ref_it = refs.find(m.id);
  if (ref_it == refs.end()) {
    out.push_back(skipped(Variant::reference_pragma, "no reference pragma"));
  } else if (!gate_open) {
    out.push_back(skipped(Variant::reference_pragma, "baseline failed"));
  } else {
    out.push_back(compile(instantiate(m, ref_it->second), m.id,
                          Variant::reference_pragma, cfg, true,
                          m.extension));
  }

  auto gen_it = gens.find(m.id);
  if (gen_it == gens.end() || !gen_it->second.has_value()) {
    out.push_back(skipped(Variant::generated_pragma,
                          gen_it == gens.end() ? "no generation"
                                               : "extraction failure"));
  } else if (!gate_open) {
    out.push_back(skipped(Variant::generated_pragma, "baseline failed"));
  } else {
    out.push_back(compile(instantiate(m, *gen_it->second), m.id,
                          Variant::generated_pragma, cfg, true,
                          m.extension));
  }
  return out;
}

}  // namespace

std::vector<McuOutcome> run_compile_matrix(
    const std::vector<Mcu>& mcus, const std::map<std::string, Pragma>& refs,
    const std::map<std::string, std::optional<Pragma>>& gens,
    const CompilerConfig& cfg) {
  if (!util::find_executable(cfg.compiler))
    throw CompilerNotFound("compiler not found: " + cfg.compiler);

  std::vector<std::vector<McuOutcome>> per_mcu(mcus.size());
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || mcus.size() <= 1) {
    for (size_t i = 0; i < mcus.size(); ++i)
      per_mcu[i] = run_one_mcu(mcus[i], refs, gens, cfg);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < mcus.size();
           i = next.fetch_add(1))
        per_mcu[i] = run_one_mcu(mcus[i], refs, gens, cfg);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(jobs, mcus.size()); ++t)
      pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<McuOutcome> out;
  for (auto& v : per_mcu)
    for (auto& o : v) out.push_back(std::move(o));
  std::sort(out.begin(), out.end(),
            [](const McuOutcome& a, const McuOutcome& b) {
              if (a.id != b.id) return a.id < b.id;
              return kVariantOrder(a.variant) < kVariantOrder(b.variant);
            });
  return out;
}

namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "auto",     "break",    "case",     "char",   "const",    "continue",
      "default",  "do",       "double",   "else",   "enum",     "extern",
      "float",    "for",      "goto",     "if",     "inline",   "int",
      "long",     "register", "restrict", "return", "short",    "signed",
      "sizeof",   "static",   "struct",   "switch", "typedef",  "union",
      "unsigned", "void",     "volatile", "while",  "size_t",   "bool",
      "true",     "false",    "NULL"};
  return words;
}

struct IdentScan {
  std::set<std::string> all;
  std::set<std::string> indexed;  // name immediately followed by '['
  std::set<std::string> called;   // name immediately followed by '('
  std::set<std::string> header;   // names in the for header
  std::set<std::string> bounds;   // right operand of < / <= in headers

  void scan(const std::string& text, bool is_header) {
    size_t i = 0;
    std::string prev_op;
    while (i < text.size()) {
      char c = text[i];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t b = i;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) ||
                text[i] == '_'))
          ++i;
        std::string name = text.substr(b, i - b);
        if (reserved_words().count(name)) {
          prev_op.clear();
          continue;
        }
        size_t j = i;
        while (j < text.size() &&
               std::isspace(static_cast<unsigned char>(text[j])))
          ++j;
        char next = j < text.size() ? text[j] : '\0';
        all.insert(name);
        if (next == '[') indexed.insert(name);
        if (next == '(') called.insert(name);
        if (is_header) {
          header.insert(name);
          if (prev_op == "<" || prev_op == "<=") bounds.insert(name);
        }
        prev_op.clear();
        continue;
      }
      if (c == '<') {
        prev_op = (i + 1 < text.size() && text[i + 1] == '=') ? "<=" : "<";
        i += prev_op.size();
        continue;
      }
      if (!std::isspace(static_cast<unsigned char>(c))) prev_op.clear();
      ++i;
    }
  }
};

std::string for_header_text(const std::string& loop_text) {
  size_t open = loop_text.find('(');
  if (open == std::string::npos) return "";
  int depth = 0;
  for (size_t i = open; i < loop_text.size(); ++i) {
    if (loop_text[i] == '(') ++depth;
    if (loop_text[i] == ')' && --depth == 0)
      return loop_text.substr(open + 1, i - open - 1);
  }
  return loop_text.substr(open + 1);
}

}  // namespace

Mcu synthesize_mcu(const extract::PragmaLoopPair& pair) {
  IdentScan scan;
  scan.scan(for_header_text(pair.loop_text), true);
  scan.scan(pair.loop_text, false);
  for (const auto& c : pair.prg.clauses)
    if (c.parenthesized) scan.scan(c.args, false);

  Mcu m;
  m.id = pair.id;
  m.origin = McuOrigin::synthesized;
  m.synthesis_incomplete = !scan.called.empty();

  std::string decls;
  for (const auto& name : scan.all) {
    if (scan.called.count(name)) continue;  // nothing sensible to declare
    if (scan.indexed.count(name)) {
      decls += "  double " + name + "[ACC_MCU_N];\n";
    } else if (scan.bounds.count(name)) {
      decls += "  int " + name + " = ACC_MCU_N;\n";
    } else if (scan.header.count(name)) {
      decls += "  int " + name + " = 0;\n";
    } else {
      decls += "  double " + name + " = 0.0;\n";
    }
  }

  m.source = "#include <stdlib.h>\n\nenum { ACC_MCU_N = 1000 };\n\n"
             "void target_kernel(void) {\n" +
             decls + "  " + std::string(dataset::kMarker) + "\n  " +
             pair.loop_text + "\n}\n";
  return m;
}

std::vector<Mcu> import_mcus(const fs::path& dir) {
  std::vector<Mcu> out;
  if (!fs::is_directory(dir)) return out;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == ".c" || ext == ".cpp") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    Mcu m;
    m.id = p.stem().string();
    m.source = util::read_text_file(p);
    m.origin = McuOrigin::imported;
    m.extension = p.extension().string();
    out.push_back(std::move(m));
  }
  return out;
}

CompileReport compile_report(const std::vector<McuOutcome>& outcomes) {
  CompileReport r;
  auto bump = [](VariantRate& v, const McuOutcome& o) {
    ++v.attempted;
    v.succeeded += o.success;
  };
  for (const auto& o : outcomes) {
    switch (o.variant) {
      case Variant::no_pragma:
        bump(r.no_pragma, o);
        r.baseline_pass += o.success;
        break;
      case Variant::reference_pragma:
        if (o.attempted)
          bump(r.reference, o);
        else
          ++r.skipped_reference;
        break;
      case Variant::generated_pragma:
        if (o.attempted)
          bump(r.generated, o);
        else
          ++r.skipped_generated;
        break;
    }
  }
  auto rate = [](VariantRate& v) {
    v.rate = v.attempted > 0
                 ? static_cast<double>(v.succeeded) / v.attempted
                 : 0.0;
  };
  rate(r.no_pragma);
  rate(r.reference);
  rate(r.generated);
  return r;
}

json outcome_to_json(const McuOutcome& o) {
  json j;
  j["id"] = o.id;
  j["variant"] = to_string(o.variant);
  j["attempted"] = o.attempted;
  j["success"] = o.success;
  j["diagnostics"] = o.diagnostics;
  j["duration_s"] = o.duration_s;
  return j;
}

json report_to_json(const CompileReport& r) {
  auto vr = [](const VariantRate& v) {
    return json{{"attempted", v.attempted},
                {"succeeded", v.succeeded},
                {"rate", v.rate}};
  };
  json j;
  j["no_pragma"] = vr(r.no_pragma);
  j["reference_pragma"] = vr(r.reference);
  j["generated_pragma"] = vr(r.generated);
  j["baseline_pass"] = r.baseline_pass;
  j["skipped_reference"] = r.skipped_reference;
  j["skipped_generated"] = r.skipped_generated;
  return j;
}

}  // namespace accmine::mcu
