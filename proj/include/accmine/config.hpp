#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "accmine/ingest.hpp"
#include "accmine/mcu.hpp"

namespace accmine::config {

struct PipelineConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path snapshot_dir = "snapshot";
  std::filesystem::path out_dir = "out";
  std::filesystem::path system_prompt_path;
  double ratio = 0.8;
  std::uint64_t seed = 42;
  int jobs = 1;
  mcu::CompilerConfig compiler;
  ingest::RemoteConfig remote;

  static PipelineConfig load(const std::filesystem::path& file);

  // Effective settings echoed into artifacts for provenance.
  nlohmann::json echo() const;
};

}  // namespace accmine::config
