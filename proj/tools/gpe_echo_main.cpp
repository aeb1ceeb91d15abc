#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "gpe/analysis.hpp"
#include "gpe/campaign.hpp"
#include "gpe/config.hpp"
#include "gpe/emit.hpp"
#include "gpe/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRunFailed = 1;
constexpr int kExitUsage = 2;

std::size_t default_workers() {
  const char* env = std::getenv("GPE_ECHO_WORKERS");
  if (!env || !*env) return 0;
  std::size_t value = 0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    std::cerr << "gpe-echo: ignoring invalid GPE_ECHO_WORKERS='" << text << "'\n";
    return 0;
  }
  return value;
}

struct Overrides {
  std::size_t workers = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--workers", o.workers, "Concurrent realizations (default: $GPE_ECHO_WORKERS or config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Override the master seed");
  cmd->add_option("--out", o.out, "Override the output directory");
}

void apply(gpe::CampaignConfig& cfg, const Overrides& o) {
  if (const std::size_t env = default_workers(); env > 0) cfg.workers = env;
  if (o.workers > 0) cfg.workers = o.workers;
  if (o.seed) cfg.base.master_seed = *o.seed;
  if (!o.out.empty()) cfg.output_dir = o.out;
}

int run(const std::string& path, const Overrides& o, bool ground_only) {
  gpe::CampaignConfig cfg = gpe::load_config(path);
  if (ground_only) cfg.mode = gpe::CampaignMode::GroundStateOnly;
  apply(cfg, o);
  const auto result = gpe::run_campaign(cfg, {&std::cerr});
  std::cerr << "gpe-echo: wrote " << result.manifest.outputs.size() + 1 << " files to " << cfg.output_dir.string()
            << " in " << result.manifest.wall_seconds << " s\n";
  if (result.ground) {
    std::cout << "energy " << result.ground->energy << "\nchemical_potential " << result.ground->chemical_potential
              << "\nhalf_length " << result.ground->half_length << '\n';
    if (result.ground->half_length_um) std::cout << "half_length_um " << *result.ground->half_length_um << '\n';
  }
  for (const auto& f : result.manifest.failures) std::cerr << "gpe-echo: failed " << f << '\n';
  return result.exit_status == 0 ? kExitOk : kExitRunFailed;
}

int fit(const std::string& path, std::optional<double> fixed_T) {
  const gpe::CurveTable table = gpe::read_curve_csv(path);
  const auto tau = gpe::critical_time(table.t, table.F);
  std::optional<gpe::FermiFitResult> result;
  std::string error;
  try {
    gpe::FermiFitOptions opts;
    opts.fixed_T = fixed_T;
    result = gpe::fermi_fit(table.t, table.F, opts);
  } catch (const gpe::FitError& e) {
    error = e.what();
  }
  std::cout << gpe::fit_report_json(tau, result, error);
  return result ? kExitOk : kExitRunFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loschmidt echo of a 1D Gross-Pitaevskii condensate in a speckle-perturbed anharmonic trap"};
  app.set_version_flag("--version", gpe::code_version());
  app.require_subcommand(1);

  Overrides run_o;
  std::string run_cfg;
  auto* run_cmd = app.add_subcommand("run", "Execute the campaign described by a config or manifest");
  run_cmd->add_option("config", run_cfg, "YAML/JSON config or manifest.json")->required()->check(CLI::ExistingFile);
  add_overrides(run_cmd, run_o);

  Overrides gs_o;
  std::string gs_cfg;
  auto* gs_cmd = app.add_subcommand("ground-state", "Relax the trap ground state and write a checkpoint");
  gs_cmd->add_option("config", gs_cfg, "YAML/JSON config")->required()->check(CLI::ExistingFile);
  add_overrides(gs_cmd, gs_o);

  std::string curve_path;
  std::optional<double> fixed_T;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the Fermi decay to a curve CSV and print JSON");
  fit_cmd->add_option("curve", curve_path, "curve CSV (t,F,...)")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--fix-T", fixed_T, "Hold the decay width at this value")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(run_cfg, run_o, false);
    if (*gs_cmd) return run(gs_cfg, gs_o, true);
    if (*fit_cmd) return fit(curve_path, fixed_T);
  } catch (const gpe::ConfigError& e) {
    std::cerr << "gpe-echo: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "gpe-echo: " << e.what() << '\n';
    return kExitRunFailed;
  }
  return kExitUsage;
}
