#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "accmine/extract.hpp"
#include "accmine/pragma.hpp"

namespace accmine::mcu {

enum class McuOrigin { imported, synthesized };

struct Mcu {
  std::string id;
  std::string source;  // contains the target marker exactly once
  McuOrigin origin = McuOrigin::synthesized;
  bool synthesis_incomplete = false;
  std::string extension = ".c";
};

struct CompilerConfig {
  std::string compiler = "nvc";
  std::vector<std::string> base_flags = {"-c"};
  std::vector<std::string> acc_flags = {"-acc", "-Minfo=accel"};
  double timeout_s = 60.0;
  std::filesystem::path work_dir;
  int jobs = 1;
};

enum class Variant { no_pragma, reference_pragma, generated_pragma };

std::string to_string(Variant v);

struct McuOutcome {
  std::string id;
  Variant variant = Variant::no_pragma;
  bool attempted = false;
  bool success = false;
  std::string diagnostics;
  double duration_s = 0.0;
};

struct MarkerMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MarkerDuplicated : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CompilerNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Replaces the marker line with the pragma's canonical text, or deletes
// the line entirely when no pragma is given. Never touches other bytes.
std::string instantiate(const Mcu& m, const std::optional<Pragma>& p);

McuOutcome compile(const std::string& source, const std::string& id,
                   Variant variant, const CompilerConfig& cfg,
                   bool acc_enabled, const std::string& ext = ".c");

// Baseline gating: pragma variants run only for MCUs whose no-pragma
// variant compiled; generated variants additionally require a usable
// generation. Outcomes sorted by (id, variant).
std::vector<McuOutcome> run_compile_matrix(
    const std::vector<Mcu>& mcus, const std::map<std::string, Pragma>& refs,
    const std::map<std::string, std::optional<Pragma>>& gens,
    const CompilerConfig& cfg);

// Best-effort standalone program wrapping the pair's loop; identifiers
// typed by usage heuristics. Unresolvable identifiers (e.g. calls) flag
// the result, which is still emitted and expected to fail its baseline.
Mcu synthesize_mcu(const extract::PragmaLoopPair& pair);

// One <pair-id>.c or .cpp per file.
std::vector<Mcu> import_mcus(const std::filesystem::path& dir);

struct VariantRate {
  int attempted = 0;
  int succeeded = 0;
  double rate = 0.0;  // succeeded/attempted, 0 when attempted == 0
};

struct CompileReport {
  VariantRate no_pragma;
  VariantRate reference;
  VariantRate generated;
  int baseline_pass = 0;
  int skipped_reference = 0;  // baseline failed
  int skipped_generated = 0;  // baseline failed or extraction failure
};

CompileReport compile_report(const std::vector<McuOutcome>& outcomes);

nlohmann::json outcome_to_json(const McuOutcome& o);
nlohmann::json report_to_json(const CompileReport& r);

}  // namespace accmine::mcu
