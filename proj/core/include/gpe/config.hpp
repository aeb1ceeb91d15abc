#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gpe/echo.hpp"

namespace gpe {

enum class CampaignMode { SingleEcho, SweepEpsilon, SweepNatoms, SweepDisplacement, GroundStateOnly };

std::string_view to_string(CampaignMode mode);
CampaignMode parse_mode(std::string_view text);

/// Which physical quantity a sweep varies ("" for non-sweep modes).
std::string_view swept_parameter(CampaignMode mode);

enum class FitTMode {
  Classical,  // T held at the classical oscillation period for the displacement
  Free,       // T fitted, started from the classical period
};

struct EmitSet {
  bool curves_csv = true;
  bool summary_json = true;
  bool checkpoints = false;
};

struct CampaignConfig {
  CampaignMode mode = CampaignMode::SingleEcho;
  EchoConfig base{};
  std::vector<double> sweep_values;
  std::size_t workers = 1;
  std::filesystem::path output_dir = "gpe-echo-out";
  EmitSet emit{};
  FitTMode fit_T = FitTMode::Classical;
  /// Spill every realization's state every this many samples (0 = never).
  std::size_t snapshot_every = 0;

  /// Throws ConfigError on any constraint violation.
  void validate() const;
};

/// Parses a YAML (or JSON) campaign description. Keys are order-insensitive;
/// unknown keys are rejected; missing keys take the documented defaults.
/// A run manifest written by run_campaign is accepted too: its embedded
/// `config` section is used.
CampaignConfig parse_config(std::string_view text, const std::string& source = "<string>");
CampaignConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration as JSON text, in the same schema
/// parse_config reads. With include_execution = false the scheduling/output
/// keys (workers, output_dir) are omitted, so the result depends only on
/// what determines the numbers.
std::string resolved_config_json(const CampaignConfig& config, bool include_execution = true);

}  // namespace gpe
