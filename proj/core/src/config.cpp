#include "gpe/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "gpe/error.hpp"
#include "json_detail.hpp"

namespace gpe {
namespace {

struct ModeName {
  CampaignMode mode;
  std::string_view name;
};

constexpr ModeName kModes[] = {
    {CampaignMode::SingleEcho, "single-echo"},
    {CampaignMode::SweepEpsilon, "sweep-epsilon"},
    {CampaignMode::SweepNatoms, "sweep-natoms"},
    {CampaignMode::SweepDisplacement, "sweep-displacement"},
    {CampaignMode::GroundStateOnly, "ground-state-only"},
};

// Reads a YAML mapping, tracking which keys were consumed so leftovers can
// be reported as unknown.
class Section {
 public:
  Section(const YAML::Node& node, std::string name, const std::string& source)
      : node_(node), name_(std::move(name)), source_(source) {
    if (node_ && !node_.IsMap()) fail(node_, "section '" + name_ + "' must be a mapping");
  }

  template <class T>
  void read(const std::string& key, T& out) {
    allowed_.insert(key);
    if (!node_) return;
    const YAML::Node value = node_[key];
    if (!value) return;
    try {
      out = value.as<T>();
    } catch (const YAML::Exception&) {
      fail(value, "invalid value for '" + qualified(key) + "'");
    }
  }

  YAML::Node child(const std::string& key) {
    allowed_.insert(key);
    return node_ ? node_[key] : YAML::Node();
  }

  void finish() const {
    if (!node_) return;
    std::set<std::string> seen;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!allowed_.contains(key)) fail(kv.first, "unknown key '" + qualified(key) + "'");
      if (!seen.insert(key).second) fail(kv.first, "duplicate key '" + qualified(key) + "'");
    }
  }

  [[noreturn]] void fail(const YAML::Node& at, const std::string& what) const {
    const auto mark = at.Mark();
    std::ostringstream msg;
    msg << source_;
    if (mark.line >= 0) msg << ":" << (mark.line + 1) << ":" << (mark.column + 1);
    msg << ": " << what;
    throw ConfigError(msg.str());
  }

  std::string qualified(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

 private:
  YAML::Node node_;
  std::string name_;
  const std::string& source_;
  std::set<std::string> allowed_;
};

std::vector<std::string> emit_names(const EmitSet& e) {
  std::vector<std::string> out;
  if (e.curves_csv) out.emplace_back("curves-csv");
  if (e.summary_json) out.emplace_back("summary-json");
  if (e.checkpoints) out.emplace_back("checkpoints");
  return out;
}

}  // namespace

std::string_view to_string(CampaignMode mode) {
  for (const auto& m : kModes) {
    if (m.mode == mode) return m.name;
  }
  return "unknown";
}

CampaignMode parse_mode(std::string_view text) {
  for (const auto& m : kModes) {
    if (m.name == text) return m.mode;
  }
  throw ConfigError("unknown mode '" + std::string(text) + "'");
}

std::string_view swept_parameter(CampaignMode mode) {
  switch (mode) {
    case CampaignMode::SweepEpsilon: return "epsilon";
    case CampaignMode::SweepNatoms: return "n_atoms";
    case CampaignMode::SweepDisplacement: return "displacement";
    default: return "";
  }
}

void CampaignConfig::validate() const {
  const bool sweep = !swept_parameter(mode).empty();
  if (sweep && sweep_values.empty()) throw ConfigError("sweep mode requires non-empty sweep_values");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  for (double v : sweep_values) {
    if (!std::isfinite(v)) throw ConfigError("sweep_values must be finite");
    if (mode == CampaignMode::SweepNatoms && !(v > 0.0)) throw ConfigError("n_atoms sweep values must be positive");
    if (mode != CampaignMode::SweepNatoms && v < 0.0) throw ConfigError("sweep values must be non-negative");
  }
  try {
    base.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
}

CampaignConfig parse_config(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": parse error: " + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError(source + ": configuration is empty");
  if (!root.IsMap()) throw ConfigError(source + ": configuration must be a mapping");
  if (root["manifest_version"] && root["config"]) root = root["config"];

  CampaignConfig cfg;
  EchoConfig& e = cfg.base;
  Section top(root, "", source);

  std::string mode = std::string(to_string(cfg.mode));
  top.read("mode", mode);
  try {
    cfg.mode = parse_mode(mode);
  } catch (const ConfigError&) {
    top.fail(root["mode"], "unknown mode '" + mode + "'");
  }
  top.read("sweep_values", cfg.sweep_values);
  top.read("workers", cfg.workers);
  std::string out_dir = cfg.output_dir.string();
  top.read("output_dir", out_dir);
  cfg.output_dir = out_dir;
  top.read("snapshot_every", cfg.snapshot_every);

  if (const auto emit = top.child("emit")) {
    if (!emit.IsSequence()) top.fail(emit, "'emit' must be a list");
    cfg.emit = EmitSet{false, false, false};
    for (const auto& item : emit) {
      const auto name = item.as<std::string>();
      if (name == "curves-csv") cfg.emit.curves_csv = true;
      else if (name == "summary-json") cfg.emit.summary_json = true;
      else if (name == "checkpoints") cfg.emit.checkpoints = true;
      else top.fail(item, "unknown emit target '" + name + "'");
    }
  }
  std::string fit_t = "classical";
  top.read("fit_T", fit_t);
  if (fit_t == "classical") cfg.fit_T = FitTMode::Classical;
  else if (fit_t == "free") cfg.fit_T = FitTMode::Free;
  else top.fail(root["fit_T"], "fit_T must be 'classical' or 'free'");

  top.read("epsilon", e.speckle.epsilon);
  top.read("displacement", e.displacement);
  top.read("n_realizations", e.n_realizations);
  top.read("master_seed", e.master_seed);
  top.read("quartic_K", e.trap.quartic_K);
  top.read("trap_center", e.trap.center);
  top.read("n_atoms", e.n_atoms);
  top.read("coupling", e.coupling);

  Section grid(top.child("grid"), "grid", source);
  grid.read("length", e.grid_length);
  grid.read("points", e.grid_points);
  grid.finish();

  Section speckle(top.child("speckle"), "speckle", source);
  e.speckle.n_max = max_speckle_mode(e.grid_length);
  speckle.read("n_min", e.speckle.n_min);
  speckle.read("n_max", e.speckle.n_max);
  speckle.finish();

  Section time(top.child("time"), "time", source);
  time.read("dt", e.dt);
  time.read("t_max", e.t_max);
  time.read("sample_interval", e.sample_interval);
  time.finish();

  Section ground(top.child("ground_state"), "ground_state", source);
  ground.read("dt_imag", e.ground.dt_imag);
  ground.read("energy_tol", e.ground.energy_tol);
  ground.read("max_steps", e.ground.max_steps);
  ground.finish();

  if (const auto phys_node = top.child("physical")) {
    PhysicalParams p = PhysicalParams::rubidium87_reference();
    Section phys(phys_node, "physical", source);
    phys.read("scattering_length", p.scattering_length);
    phys.read("omega_z", p.omega_z);
    phys.read("omega_perp", p.omega_perp);
    phys.read("atom_mass", p.atom_mass);
    phys.finish();
    e.physical = p;
  }
  top.finish();

  cfg.validate();
  return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

namespace detail {

nlohmann::json config_to_json(const CampaignConfig& cfg, bool include_execution) {
  const EchoConfig& e = cfg.base;
  nlohmann::json j;
  j["mode"] = std::string(to_string(cfg.mode));
  j["sweep_values"] = cfg.sweep_values;
  if (include_execution) {
    j["workers"] = cfg.workers;
    j["output_dir"] = cfg.output_dir.string();
  }
  j["emit"] = emit_names(cfg.emit);
  j["fit_T"] = cfg.fit_T == FitTMode::Classical ? "classical" : "free";
  j["snapshot_every"] = cfg.snapshot_every;
  j["epsilon"] = e.speckle.epsilon;
  j["displacement"] = e.displacement;
  j["n_realizations"] = e.n_realizations;
  j["master_seed"] = e.master_seed;
  j["quartic_K"] = e.trap.quartic_K;
  j["trap_center"] = e.trap.center;
  j["n_atoms"] = e.n_atoms;
  j["coupling"] = e.coupling;
  j["grid"] = {{"length", e.grid_length}, {"points", e.grid_points}};
  j["speckle"] = {{"n_min", e.speckle.n_min}, {"n_max", e.speckle.n_max}};
  j["time"] = {{"dt", e.dt}, {"t_max", e.t_max}, {"sample_interval", e.sample_interval}};
  j["ground_state"] = {
      {"dt_imag", e.ground.dt_imag}, {"energy_tol", e.ground.energy_tol}, {"max_steps", e.ground.max_steps}};
  if (e.physical) {
    j["physical"] = {{"scattering_length", e.physical->scattering_length},
                     {"omega_z", e.physical->omega_z},
                     {"omega_perp", e.physical->omega_perp},
                     {"atom_mass", e.physical->atom_mass}};
  }
  return j;
}

}  // namespace detail

std::string resolved_config_json(const CampaignConfig& config, bool include_execution) {
  return detail::config_to_json(config, include_execution).dump(2);
}

}  // namespace gpe
