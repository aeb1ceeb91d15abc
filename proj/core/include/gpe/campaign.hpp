#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gpe/config.hpp"
#include "gpe/echo.hpp"
#include "gpe/emit.hpp"

namespace gpe {

std::string code_version();

/// Everything needed to reproduce a campaign: the fully resolved config plus
/// the code version. Output file names are relative to the output directory.
struct RunManifest {
  std::string config_json;  // resolved, execution keys included
  std::string code_version;
  std::uint64_t master_seed = 0;
  std::string started_utc;
  std::string finished_utc;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;
  std::vector<std::string> failures;
};

std::string manifest_json(const RunManifest& manifest);

struct CampaignResult {
  int exit_status = 0;  // 0 when every run succeeded
  RunManifest manifest;
  std::vector<RunRecord> runs;
  std::vector<EchoCurve> curves;  // parallel to runs; empty for failed runs
  std::optional<ScalingRecord> scaling;
  std::optional<GroundStateRecord> ground;
};

struct CampaignOptions {
  std::ostream* log = nullptr;  // progress messages, if set
};

/// Executes the configured mode and writes its artifacts into
/// config.output_dir: curve_NNN.csv per run, summary.json, manifest.json and,
/// when requested, ground_state*.ckpt checkpoints and snapshots/ spills.
/// Every sweep value reuses the same master seed. A solver failure marks its
/// run as failed and the campaign moves on to the remaining values.
CampaignResult run_campaign(const CampaignConfig& config, const CampaignOptions& options = {});

}  // namespace gpe
