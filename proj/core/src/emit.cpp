#include "gpe/emit.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gpe/error.hpp"

namespace gpe {
namespace {

using nlohmann::json;

void append_number(std::string& out, double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(n));
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json run_to_json(const RunRecord& r) {
  json j;
  j["index"] = r.index;
  if (!r.parameter.empty()) {
    j["parameter"] = r.parameter;
    j["value"] = r.value;
  }
  j["status"] = r.status;
  if (!r.error.empty()) j["error"] = r.error;
  j["curve_file"] = r.curve_file.empty() ? json(nullptr) : json(r.curve_file);
  j["seeds"] = r.seeds;
  j["g_eff"] = r.g_eff;
  j["ground_state_energy"] = r.ground_state_energy;
  j["classical_period"] = optional_number(r.classical_period);
  j["tau_c_crossing"] = optional_number(r.tau_c_crossing);
  if (r.fit) {
    j["tau_c_fit"] = r.fit->tau_c;
    j["T"] = r.fit->T;
    j["f_inf"] = r.fit->f_inf;
    j["residual_rms"] = r.fit->residual_rms;
    j["T_was_fixed"] = r.fit->T_was_fixed;
  } else {
    j["tau_c_fit"] = nullptr;
    j["T"] = nullptr;
    j["f_inf"] = nullptr;
    j["residual_rms"] = nullptr;
    j["T_was_fixed"] = nullptr;
  }
  if (!r.fit_error.empty()) j["fit_error"] = r.fit_error;
  return j;
}

}  // namespace

std::string curve_csv(const EchoCurve& curve) {
  if (curve.size() == 0) throw InvalidArgument("cannot emit an empty curve");
  std::vector<double> spread(curve.size(), 0.0);
  if (curve.has_per_pair() && curve.n_pairs > 1) spread = pairwise_stats(curve).stddev;
  std::string out = "t,F,F_a,F_std\n";
  out.reserve(out.size() + curve.size() * 80);
  for (std::size_t k = 0; k < curve.size(); ++k) {
    append_number(out, curve.times[k]);
    out += ',';
    append_number(out, curve.fidelity[k]);
    out += ',';
    append_number(out, curve.amplitude_fidelity[k]);
    out += ',';
    append_number(out, spread[k]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void emit_curve_csv(const EchoCurve& curve, const std::filesystem::path& path) {
  write_text_file(path, curve_csv(curve));
}

CurveTable read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open curve " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,F", 0) != 0) {
    throw IoError(path.string() + ": missing 't,F,...' header");
  }
  CurveTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double cols[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t ncol = 0;
    std::size_t pos = 0;
    while (pos <= line.size() && ncol < 4) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      const char* first = line.data() + pos;
      const char* last = line.data() + end;
      const auto [ptr, ec] = std::from_chars(first, last, cols[ncol]);
      if (ec != std::errc() || ptr != last) {
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
      }
      ++ncol;
      pos = end + 1;
    }
    if (ncol < 2) throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected at least t,F");
    table.t.push_back(cols[0]);
    table.F.push_back(cols[1]);
    table.F_a.push_back(cols[2]);
    table.F_std.push_back(cols[3]);
  }
  if (table.t.empty()) throw IoError(path.string() + ": no samples");
  return table;
}

std::string summary_json(const std::string& resolved_config_json, const std::string& code_version,
                         const std::vector<RunRecord>& runs, const std::optional<ScalingRecord>& scaling,
                         const std::optional<GroundStateRecord>& ground) {
  json j;
  j["format"] = "gpe-echo-summary";
  j["format_version"] = 1;
  j["code_version"] = code_version;
  j["config"] = json::parse(resolved_config_json);
  json run_list = json::array();
  for (const auto& r : runs) run_list.push_back(run_to_json(r));
  j["runs"] = run_list;
  if (scaling) {
    json pts = json::array();
    for (const auto& [x, y] : scaling->fit.points) pts.push_back({x, y});
    j["scaling"] = {{"parameter", scaling->parameter},
                    {"abscissa", scaling->abscissa},
                    {"slope", scaling->fit.slope},
                    {"intercept", scaling->fit.intercept},
                    {"r_squared", scaling->fit.r_squared},
                    {"points", pts}};
  } else {
    j["scaling"] = nullptr;
  }
  if (ground) {
    j["ground_state"] = {{"g_eff", ground->g_eff},
                         {"energy", ground->energy},
                         {"chemical_potential", ground->chemical_potential},
                         {"steps", ground->steps},
                         {"half_length", ground->half_length},
                         {"half_length_um", optional_number(ground->half_length_um)},
                         {"checkpoint_file", ground->checkpoint_file.empty() ? json(nullptr)
                                                                             : json(ground->checkpoint_file)}};
  }
  return j.dump(2) + "\n";
}

void emit_summary_json(const std::filesystem::path& path, const std::string& resolved_config_json,
                       const std::string& code_version, const std::vector<RunRecord>& runs,
                       const std::optional<ScalingRecord>& scaling,
                       const std::optional<GroundStateRecord>& ground) {
  write_text_file(path, summary_json(resolved_config_json, code_version, runs, scaling, ground));
}

std::string fit_report_json(std::optional<double> tau_c_crossing, const std::optional<FermiFitResult>& fit,
                            const std::string& fit_error) {
  RunRecord r;
  r.tau_c_crossing = tau_c_crossing;
  r.fit = fit;
  r.fit_error = fit_error;
  json j;
  j["tau_c_crossing"] = optional_number(tau_c_crossing);
  const json full = run_to_json(r);
  for (const char* key : {"tau_c_fit", "T", "f_inf", "residual_rms", "T_was_fixed"}) j[key] = full[key];
  if (!fit_error.empty()) j["fit_error"] = fit_error;
  return j.dump(2) + "\n";
}

}  // namespace gpe
