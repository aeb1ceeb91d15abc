#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gpe/analysis.hpp"
#include "gpe/echo.hpp"

namespace gpe {

/// Columns of a curve CSV file (`t,F,F_a,F_std`).
struct CurveTable {
  std::vector<double> t;
  std::vector<double> F;
  std::vector<double> F_a;
  std::vector<double> F_std;
};

/// Writes `t,F,F_a,F_std`, one row per sample, 17 significant digits,
/// newline-terminated. F_std is the population spread over pairs (0 when
/// the curve has a single pair or no per-pair data).
void emit_curve_csv(const EchoCurve& curve, const std::filesystem::path& path);
std::string curve_csv(const EchoCurve& curve);

/// Parses a file written by emit_curve_csv. Throws IoError on malformed input.
CurveTable read_curve_csv(const std::filesystem::path& path);

/// One echo experiment's entry in the campaign summary.
struct RunRecord {
  std::size_t index = 0;
  std::string parameter;  // swept quantity, empty for single runs
  double value = 0.0;
  std::string status = "ok";  // "ok" or "failed"
  std::string error;
  std::string curve_file;
  std::vector<std::uint64_t> seeds;
  double g_eff = 0.0;
  double ground_state_energy = 0.0;
  std::optional<double> classical_period;
  std::optional<double> tau_c_crossing;  // nullopt = not reached
  std::optional<FermiFitResult> fit;
  std::string fit_error;
};

struct ScalingRecord {
  std::string parameter;  // "epsilon" or "n_atoms"
  std::string abscissa;   // "-ln(epsilon)" or "ln(n_atoms)"
  ScalingFit fit;
};

struct GroundStateRecord {
  double g_eff = 0.0;
  double energy = 0.0;
  double chemical_potential = 0.0;
  std::size_t steps = 0;
  double half_length = 0.0;                 // L_ho, density > 1e-4 of peak
  std::optional<double> half_length_um;     // when physical parameters are known
  std::string checkpoint_file;
};

/// Deterministic campaign summary: resolved config (execution keys
/// excluded), runs, scaling fits. Values that were not obtained are
/// written as JSON null.
std::string summary_json(const std::string& resolved_config_json, const std::string& code_version,
                         const std::vector<RunRecord>& runs, const std::optional<ScalingRecord>& scaling,
                         const std::optional<GroundStateRecord>& ground);

void emit_summary_json(const std::filesystem::path& path, const std::string& resolved_config_json,
                       const std::string& code_version, const std::vector<RunRecord>& runs,
                       const std::optional<ScalingRecord>& scaling,
                       const std::optional<GroundStateRecord>& ground);

/// Fit record for the `fit` subcommand (no campaign context).
std::string fit_report_json(std::optional<double> tau_c_crossing, const std::optional<FermiFitResult>& fit,
                            const std::string& fit_error);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gpe
