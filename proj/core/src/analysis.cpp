#include "gpe/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gpe/error.hpp"

namespace gpe {
namespace {

// 1 / (1 + exp(u)) without overflow.
double logistic_tail(double u) {
  if (u > 0.0) {
    const double e = std::exp(-u);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(u));
}

double sum_squares(std::span<const double> t, std::span<const double> y, const FermiParams& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = fermi_curve(t[i], p) - y[i];
    s += r * r;
  }
  return s;
}

// Decay width from where the normalised sigmoid passes 3/4 and 1/4:
// those levels are T ln 3 either side of tau_c.
std::optional<double> estimate_width(std::span<const double> t, std::span<const double> y, double f_inf) {
  const double top = *std::max_element(y.begin(), y.end());
  const auto crossing = [&](double level) -> std::optional<double> {
    const double target = f_inf + level * (top - f_inf);
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (y[i - 1] >= target && y[i] < target) {
        return t[i - 1] + (y[i - 1] - target) / (y[i - 1] - y[i]) * (t[i] - t[i - 1]);
      }
    }
    return std::nullopt;
  };
  const auto upper = crossing(0.75);
  const auto lower = crossing(0.25);
  if (!upper || !lower || !(*lower > *upper)) return std::nullopt;
  return (*lower - *upper) / (2.0 * std::log(3.0));
}

}  // namespace

double fermi_curve(double t, const FermiParams& p) {
  return (1.0 - p.f_inf) * logistic_tail((t - p.tau_c) / p.T) + p.f_inf;
}

double fermi_inverse(double level, const FermiParams& p) {
  if (!(level > p.f_inf && level < 1.0)) {
    throw InvalidArgument("level must lie strictly between f_inf and 1");
  }
  return p.tau_c + p.T * std::log((1.0 - p.f_inf) / (level - p.f_inf) - 1.0);
}

std::optional<double> critical_time(std::span<const double> times, std::span<const double> values) {
  if (times.empty() || times.size() != values.size()) {
    throw InvalidArgument("critical_time needs a non-empty curve with matching time axis");
  }
  const double threshold = kCriticalFraction * *std::max_element(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i - 1] >= threshold && values[i] < threshold) {
      const double frac = (values[i - 1] - threshold) / (values[i - 1] - values[i]);
      return times[i - 1] + frac * (times[i] - times[i - 1]);
    }
  }
  return std::nullopt;
}

std::optional<double> critical_time(const EchoCurve& curve) { return critical_time(curve.times, curve.fidelity); }

FermiFitResult fermi_fit(std::span<const double> t, std::span<const double> y, const FermiFitOptions& options) {
  if (t.size() != y.size() || t.size() < 4) throw FitError("fermi_fit needs at least 4 samples");
  const double top = *std::max_element(y.begin(), y.end());
  const bool has_plateau = std::any_of(y.begin(), y.end(), [](double v) { return v > 0.9; });
  const auto crossing = critical_time(t, y);
  if (!has_plateau || !crossing) throw FitError("curve does not capture the collapse (needs F > 0.9 and F < 0.6 max)");
  if (options.fixed_T && !(*options.fixed_T > 0.0)) throw FitError("fixed T must be positive");

  const std::size_t tail = std::max<std::size_t>(1, t.size() / 10);
  double f_inf = std::accumulate(y.end() - static_cast<std::ptrdiff_t>(tail), y.end(), 0.0) / static_cast<double>(tail);
  f_inf = std::clamp(f_inf, 0.0, 0.5 * top);

  FermiParams p{.tau_c = *crossing, .T = 1.0, .f_inf = f_inf};
  if (options.fixed_T) {
    p.T = *options.fixed_T;
  } else if (options.initial_T) {
    p.T = *options.initial_T;
  } else {
    p.T = estimate_width(t, y, f_inf).value_or(0.05 * (t.back() - t.front()));
  }

  const bool free_T = !options.fixed_T;
  const Eigen::Index np = free_T ? 3 : 2;
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd jac(n, np);
  Eigen::VectorXd res(n);

  const auto project = [](FermiParams q) {
    q.f_inf = std::clamp(q.f_inf, 0.0, 1.0 - 1e-12);
    return q;
  };

  double ssr = sum_squares(t, y, p);
  double lambda = 1e-3;
  std::size_t iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ti = t[static_cast<std::size_t>(i)];
      const double u = (ti - p.tau_c) / p.T;
      const double s = logistic_tail(u);
      const double ds = s * (1.0 - s);
      res(i) = fermi_curve(ti, p) - y[static_cast<std::size_t>(i)];
      jac(i, 0) = (1.0 - p.f_inf) * ds / p.T;
      jac(i, 1) = 1.0 - s;
      if (free_T) jac(i, 2) = (1.0 - p.f_inf) * ds * (ti - p.tau_c) / (p.T * p.T);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * res;
    if (ssr == 0.0 || grad.norm() == 0.0) break;

    bool accepted = false;
    double previous = ssr;
    while (lambda < 1e16) {
      Eigen::MatrixXd damped = jtj;
      for (Eigen::Index k = 0; k < np; ++k) damped(k, k) += lambda * std::max(jtj(k, k), 1e-300);
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      FermiParams trial = p;
      trial.tau_c += step(0);
      trial.f_inf += step(1);
      if (free_T) trial.T += step(2);
      trial = project(trial);
      const double trial_ssr = (trial.T > 0.0) ? sum_squares(t, y, trial) : std::numeric_limits<double>::infinity();
      if (std::isfinite(trial_ssr) && trial_ssr < ssr) {
        p = trial;
        ssr = trial_ssr;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) break;
    if ((previous - ssr) <= options.relative_tolerance * previous) break;
  }

  if (!std::isfinite(p.tau_c) || !std::isfinite(p.T) || !(p.T > 0.0) || !std::isfinite(ssr)) {
    throw FitError("Fermi fit diverged");
  }
  return FermiFitResult{.tau_c = p.tau_c,
                        .T = p.T,
                        .f_inf = p.f_inf,
                        .residual_rms = std::sqrt(ssr / static_cast<double>(n)),
                        .T_was_fixed = !free_T,
                        .iterations = iter};
}

FermiFitResult fermi_fit(const EchoCurve& curve, std::optional<double> fixed_T) {
  FermiFitOptions opts;
  opts.fixed_T = fixed_T;
  return fermi_fit(curve.times, curve.fidelity, opts);
}

ScalingFit linear_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw FitError("a scaling fit needs at least 3 records");
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (!(sxx > 1e-14 * std::max(1.0, mx * mx))) throw FitError("degenerate abscissas in scaling fit");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - (fit.intercept + fit.slope * x);
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  fit.points.assign(points.begin(), points.end());
  return fit;
}

ScalingFit scaling_fit_epsilon(std::span<const std::pair<double, double>> records) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [eps, tau] : records) {
    if (!(eps > 0.0)) throw FitError("epsilon must be positive in a scaling fit");
    pts.emplace_back(-std::log(eps), tau);
  }
  return linear_fit(pts);
}

ScalingFit scaling_fit_natoms(std::span<const std::pair<double, double>> records) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [atoms, tau] : records) {
    if (atoms >= kMinAtomsForScaling) pts.emplace_back(std::log(atoms), tau);
  }
  return linear_fit(pts);
}

}  // namespace gpe
