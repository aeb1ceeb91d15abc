#include "gpe/campaign.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ctime>
#include <filesystem>
#include <map>
#include <ostream>

#include "gpe/checkpoint.hpp"
#include "gpe/error.hpp"
#include "json_detail.hpp"

#ifndef GPE_ECHO_VERSION
#define GPE_ECHO_VERSION "unknown"
#endif

namespace gpe {
namespace {

namespace fs = std::filesystem;

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string indexed_name(const char* stem, std::size_t index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu%s", stem, index, ext);
  return buf;
}

EchoConfig config_for_value(const CampaignConfig& cfg, double value) {
  EchoConfig e = cfg.base;
  switch (cfg.mode) {
    case CampaignMode::SweepEpsilon: e.speckle.epsilon = value; break;
    case CampaignMode::SweepNatoms: e.n_atoms = value; break;
    case CampaignMode::SweepDisplacement: e.displacement = value; break;
    default: break;
  }
  return e;
}

class Logger {
 public:
  explicit Logger(std::ostream* out) : out_(out) {}
  template <class... Args>
  void operator()(const Args&... args) const {
    if (!out_) return;
    ((*out_) << ... << args) << '\n';
    out_->flush();
  }

 private:
  std::ostream* out_;
};

}  // namespace

std::string code_version() { return GPE_ECHO_VERSION; }

std::string manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["manifest_version"] = 1;
  j["code_version"] = m.code_version;
  j["master_seed"] = m.master_seed;
  j["config"] = nlohmann::json::parse(m.config_json);
  j["started_utc"] = m.started_utc;
  j["finished_utc"] = m.finished_utc;
  j["wall_seconds"] = m.wall_seconds;
  j["outputs"] = m.outputs;
  j["failures"] = m.failures;
  return j.dump(2) + "\n";
}

CampaignResult run_campaign(const CampaignConfig& config, const CampaignOptions& options) {
  config.validate();
  const Logger log(options.log);
  const auto t0 = std::chrono::steady_clock::now();

  CampaignResult result;
  RunManifest& manifest = result.manifest;
  manifest.config_json = resolved_config_json(config, true);
  manifest.code_version = code_version();
  manifest.master_seed = config.base.master_seed;
  manifest.started_utc = utc_now();

  {
    const EchoConfig& e = config.base;
    const double k_max = std::numbers::pi * static_cast<double>(e.grid_points) / e.grid_length;
    if (config.mode != CampaignMode::GroundStateOnly && 0.5 * k_max * k_max * e.dt >= std::numbers::pi) {
      log("[warning] dt=", e.dt, " exceeds the split-step phase limit for ", e.grid_points, " points over L=",
          e.grid_length, "; expect spurious decay");
    }
  }

  const fs::path out_dir = config.output_dir;
  fs::create_directories(out_dir);
  const auto record_output = [&](const fs::path& rel) { manifest.outputs.push_back(rel.generic_string()); };

  if (config.mode == CampaignMode::GroundStateOnly) {
    const EchoConfig& e = config.base;
    log("[ground-state] relaxing g_eff=", e.g_eff(), " on ", e.grid_points, " points");
    const GroundState gs = echo_ground_state(e);
    const auto grid = gs.psi.grid_ptr();
    const auto parts = gpe_energy_parts(gs.psi, trap_potential(grid, e.trap), e.g_eff());
    GroundStateRecord rec;
    rec.g_eff = e.g_eff();
    rec.energy = gs.energy;
    rec.chemical_potential = parts.chemical_potential();
    rec.steps = gs.steps;
    rec.half_length = condensate_half_length(gs.psi);
    if (e.physical) rec.half_length_um = rec.half_length * oscillator_length(*e.physical) * 1e6;
    rec.checkpoint_file = "ground_state.ckpt";
    save_checkpoint(out_dir / rec.checkpoint_file, gs.psi, rec.g_eff, e.trap.quartic_K, gs.energy);
    record_output(rec.checkpoint_file);
    log("[ground-state] E=", gs.energy, " steps=", gs.steps, " half-length=", rec.half_length, " L_ho");
    result.ground = rec;
  } else {
    const std::string parameter(swept_parameter(config.mode));
    const std::vector<double> values =
        parameter.empty() ? std::vector<double>{0.0} : config.sweep_values;
    std::map<std::pair<double, double>, GroundState> ground_cache;  // keyed on (g_eff, K)

    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      const EchoConfig e = config_for_value(config, values[idx]);
      RunRecord rec;
      rec.index = idx;
      rec.parameter = parameter;
      rec.value = parameter.empty() ? 0.0 : values[idx];
      rec.g_eff = e.g_eff();
      if (e.displacement > 0.0) rec.classical_period = classical_period(e.trap, e.displacement);
      EchoCurve curve;
      try {
        const auto key = std::make_pair(e.g_eff(), e.trap.quartic_K);
        auto it = ground_cache.find(key);
        if (it == ground_cache.end()) {
          log("[run ", idx, "] relaxing ground state, g_eff=", e.g_eff());
          it = ground_cache.emplace(key, echo_ground_state(e)).first;
        }
        if (config.emit.checkpoints) {
          const std::string name = indexed_name("ground_state", idx, ".ckpt");
          save_checkpoint(out_dir / name, it->second.psi, e.g_eff(), e.trap.quartic_K, it->second.energy);
          record_output(name);
        }

        EchoOptions opts;
        opts.workers = config.workers;
        opts.ground = it->second;
        if (config.snapshot_every > 0) {
          const fs::path snap_dir = out_dir / "snapshots";
          fs::create_directories(snap_dir);
          opts.snapshot_every = config.snapshot_every;
          opts.snapshot_sink = [&, idx](std::size_t r, std::size_t k, const Wavefunction& psi) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "run%03zu_r%02zu_s%06zu.ckpt", idx, r, k);
            const fs::path rel = fs::path("snapshots") / buf;
            save_checkpoint(out_dir / rel, psi, e.g_eff(), e.trap.quartic_K, 0.0);
            record_output(rel);
          };
        }
        log("[run ", idx, "] ", parameter.empty() ? std::string("single echo") : parameter + "=" + std::to_string(values[idx]),
            ", ", e.n_realizations, " realizations to t=", e.t_max);
        curve = run_echo(e, opts);
        rec.seeds = curve.seeds;
        rec.ground_state_energy = curve.ground_state_energy;
        rec.tau_c_crossing = critical_time(curve);

        try {
          FermiFitOptions fit_opts;
          if (config.fit_T == FitTMode::Classical && rec.classical_period) {
            fit_opts.fixed_T = rec.classical_period;
          } else {
            fit_opts.initial_T = rec.classical_period;
          }
          rec.fit = fermi_fit(curve.times, curve.fidelity, fit_opts);
        } catch (const FitError& err) {
          rec.fit_error = err.what();
        }

        if (config.emit.curves_csv) {
          rec.curve_file = indexed_name("curve", idx, ".csv");
          emit_curve_csv(curve, out_dir / rec.curve_file);
          record_output(rec.curve_file);
        }
        log("[run ", idx, "] tau_c(crossing)=",
            rec.tau_c_crossing ? std::to_string(*rec.tau_c_crossing) : std::string("not reached"),
            rec.fit ? " tau_c(fit)=" + std::to_string(rec.fit->tau_c) : std::string());
      } catch (const SolverError& err) {
        rec.status = "failed";
        rec.error = err.what();
        manifest.failures.push_back("run " + std::to_string(idx) + ": " + err.what());
        log("[run ", idx, "] FAILED: ", err.what());
      } catch (const InvalidArgument& err) {
        rec.status = "failed";
        rec.error = err.what();
        manifest.failures.push_back("run " + std::to_string(idx) + ": " + err.what());
        log("[run ", idx, "] FAILED: ", err.what());
      }
      result.runs.push_back(rec);
      result.curves.push_back(std::move(curve));
    }

    if (config.mode == CampaignMode::SweepEpsilon || config.mode == CampaignMode::SweepNatoms) {
      std::vector<std::pair<double, double>> records;
      for (const auto& r : result.runs) {
        if (r.status == "ok" && r.tau_c_crossing) records.emplace_back(r.value, *r.tau_c_crossing);
      }
      try {
        ScalingRecord s;
        s.parameter = parameter;
        if (config.mode == CampaignMode::SweepEpsilon) {
          s.abscissa = "-ln(epsilon)";
          s.fit = scaling_fit_epsilon(records);
        } else {
          s.abscissa = "ln(n_atoms)";
          s.fit = scaling_fit_natoms(records);
        }
        result.scaling = s;
        log("[scaling] slope=", s.fit.slope, " r^2=", s.fit.r_squared);
      } catch (const FitError& err) {
        log("[scaling] not reported: ", err.what());
      }
    }
  }

  if (config.emit.summary_json) {
    emit_summary_json(out_dir / "summary.json", resolved_config_json(config, false), code_version(), result.runs,
                      result.scaling, result.ground);
    record_output("summary.json");
  }

  manifest.finished_utc = utc_now();
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_text_file(out_dir / "manifest.json", manifest_json(manifest));
  result.exit_status = manifest.failures.empty() ? 0 : 1;
  return result;
}

}  // namespace gpe
