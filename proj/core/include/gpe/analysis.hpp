#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gpe/echo.hpp"

namespace gpe {

/// Parameters of the Fermi-like decay
///   f(t) = (1 - f_inf) / (1 + exp((t - tau_c) / T)) + f_inf.
struct FermiParams {
  double tau_c = 0.0;
  double T = 1.0;
  double f_inf = 0.0;
};

double fermi_curve(double t, const FermiParams& p);

/// Closed-form inverse: the time at which fermi_curve reaches `level`
/// (f_inf < level < 1). Throws InvalidArgument outside that range.
double fermi_inverse(double level, const FermiParams& p);

/// Fraction of the maximum fidelity that defines the critical time.
inline constexpr double kCriticalFraction = 0.6;

/// First downward crossing of kCriticalFraction * max(values), linearly
/// interpolated between the bracketing samples; nullopt when the curve never
/// crosses inside the window.
std::optional<double> critical_time(std::span<const double> times, std::span<const double> values);
std::optional<double> critical_time(const EchoCurve& curve);

struct FermiFitResult {
  double tau_c = 0.0;
  double T = 0.0;
  double f_inf = 0.0;
  double residual_rms = 0.0;
  bool T_was_fixed = false;
  std::size_t iterations = 0;

  FermiParams params() const { return {tau_c, T, f_inf}; }
};

struct FermiFitOptions {
  /// Hold T at this value and fit (tau_c, f_inf) only.
  std::optional<double> fixed_T;
  /// Starting T for a free fit; estimated from the curve's decay width if absent.
  std::optional<double> initial_T;
  std::size_t max_iterations = 500;
  double relative_tolerance = 1e-10;
};

/// Unweighted least-squares fit of the Fermi model by Levenberg-Marquardt.
/// Starts from the 0.6 crossing (tau_c), the mean of the last tenth of the
/// samples (f_inf) and fixed_T / initial_T. f_inf is kept inside [0, 1).
/// Throws FitError if the data does not contain both a plateau (> 0.9) and
/// a collapse (< 0.6 max), or if the iteration diverges.
FermiFitResult fermi_fit(std::span<const double> times, std::span<const double> values,
                         const FermiFitOptions& options = {});
FermiFitResult fermi_fit(const EchoCurve& curve, std::optional<double> fixed_T = std::nullopt);

/// Least-squares line tau_c = intercept + slope * x through the records.
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (x, tau_c) as fitted
};

/// Ordinary least squares of y on x. Needs >= 3 points and non-degenerate x.
ScalingFit linear_fit(std::span<const std::pair<double, double>> points);

/// Regresses tau_c on -ln(eps); the slope estimates t_0 in tau_c ~ -t_0 ln eps.
/// Records are (eps, tau_c); needs >= 3 distinct positive eps.
ScalingFit scaling_fit_epsilon(std::span<const std::pair<double, double>> records);

/// Smallest atom number included in the logarithmic atom-number fit.
inline constexpr double kMinAtomsForScaling = 2e4;

/// Regresses tau_c on ln(N_A) over records with N_A >= kMinAtomsForScaling
/// (smaller condensates are dropped); needs >= 3 remaining records.
ScalingFit scaling_fit_natoms(std::span<const std::pair<double, double>> records);

}  // namespace gpe
