#include <doctest.h>

#include <cmath>
#include <random>

#include "gpe/analysis.hpp"
#include "gpe/error.hpp"

namespace {

struct Series {
  std::vector<double> t, f;
};

Series synthetic(const gpe::FermiParams& p, double t_max = 60.0, double dt = 0.1) {
  Series s;
  for (int k = 0; k * dt <= t_max + 1e-9; ++k) {
    const double t = k * dt;
    s.t.push_back(t);
    s.f.push_back((1.0 - p.f_inf) / (1.0 + std::exp((t - p.tau_c) / p.T)) + p.f_inf);
  }
  return s;
}

}  // namespace

TEST_CASE("Fermi curve and its inverse") {
  const gpe::FermiParams p{38.0, 4.86, 0.05};
  CHECK(gpe::fermi_curve(38.0, p) == doctest::Approx(0.525));
  CHECK(gpe::fermi_curve(0.0, p) > 0.9995);
  CHECK(gpe::fermi_curve(1e4, p) == doctest::Approx(0.05));
  for (double level : {0.9, 0.6, 0.2}) {
    CHECK(gpe::fermi_curve(gpe::fermi_inverse(level, p), p) == doctest::Approx(level).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gpe::fermi_inverse(0.01, p), gpe::InvalidArgument);
}

TEST_CASE("critical time interpolates the 0.6 crossing") {
  const std::vector<double> t{0, 1, 2, 3};
  CHECK(*gpe::critical_time(t, std::vector<double>{1.0, 0.8, 0.4, 0.2}) == doctest::Approx(1.5));
  // Relative to the maximum, not to 1.
  CHECK(*gpe::critical_time(t, std::vector<double>{0.5, 0.5, 0.2, 0.1}) == doctest::Approx(1.0 + 0.2 / 0.3));
  CHECK_FALSE(gpe::critical_time(t, std::vector<double>{1.0, 0.9, 0.8, 0.7}).has_value());
  // First crossing wins even if the curve recovers.
  CHECK(*gpe::critical_time(t, std::vector<double>{1.0, 0.5, 0.9, 0.1}) == doctest::Approx(0.8));
}

TEST_CASE("critical time matches the analytic Fermi crossing") {
  const gpe::FermiParams p{38.0, 4.86, 0.05};
  const auto s = synthetic(p, 60.0, 0.01);
  const double fmax = *std::max_element(s.f.begin(), s.f.end());
  CHECK(*gpe::critical_time(s.t, s.f) == doctest::Approx(gpe::fermi_inverse(0.6 * fmax, p)).epsilon(1e-5));
}

TEST_CASE("noiseless data are recovered exactly") {
  for (const gpe::FermiParams p : {gpe::FermiParams{38.0, 4.86, 0.05}, gpe::FermiParams{20.0, 2.0, 0.3},
                                   gpe::FermiParams{45.0, 5.56, 0.0}}) {
    const auto s = synthetic(p);
    const auto free = gpe::fermi_fit(s.t, s.f);
    CHECK(std::abs(free.tau_c - p.tau_c) < 1e-6);
    CHECK(std::abs(free.T - p.T) < 1e-6);
    CHECK(std::abs(free.f_inf - p.f_inf) < 1e-6);
    CHECK(free.residual_rms < 1e-8);
    CHECK_FALSE(free.T_was_fixed);
    gpe::FermiFitOptions fixed;
    fixed.fixed_T = p.T;
    const auto held = gpe::fermi_fit(s.t, s.f, fixed);
    CHECK(held.T == p.T);
    CHECK(held.T_was_fixed);
    CHECK(std::abs(held.tau_c - p.tau_c) < 1e-6);
  }
}

TEST_CASE("noisy data keep tau_c within 0.3") {
  const gpe::FermiParams p{38.0, 4.86, 0.05};
  const auto clean = synthetic(p);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = clean.f;
    for (auto& x : f) x += noise(rng);
    CHECK(std::abs(gpe::fermi_fit(clean.t, f).tau_c - p.tau_c) < 0.3);
  }
}

TEST_CASE("fit preconditions") {
  const std::vector<double> t{0, 1, 2, 3, 4};
  CHECK_THROWS_AS(gpe::fermi_fit(t, std::vector<double>{1, 0.99, 0.98, 0.97, 0.96}), gpe::FitError);
  CHECK_THROWS_AS(gpe::fermi_fit(t, std::vector<double>{0.5, 0.4, 0.2, 0.1, 0.1}), gpe::FitError);
}

TEST_CASE("linear and scaling fits") {
  const std::vector<std::pair<double, double>> line{{1, 3}, {2, 5}, {3, 7}, {4, 9}};
  const auto fit = gpe::linear_fit(line);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(gpe::linear_fit(std::vector<std::pair<double, double>>{{1, 1}, {2, 2}}), gpe::FitError);
  CHECK_THROWS_AS(gpe::linear_fit(std::vector<std::pair<double, double>>{{1, 1}, {1, 2}, {1, 3}}), gpe::FitError);

  std::vector<std::pair<double, double>> eps;
  for (double e : {1e-3, 1e-5, 1e-7}) eps.emplace_back(e, -3.3 * std::log(e) + 0.5);
  const auto se = gpe::scaling_fit_epsilon(eps);
  CHECK(se.slope == doctest::Approx(3.3));
  CHECK(se.intercept == doctest::Approx(0.5));

  std::vector<std::pair<double, double>> na;
  for (double n : {1e4, 2e4, 5e4, 1e5}) na.emplace_back(n, 60.0 - 4.0 * std::log(n));
  const auto sn = gpe::scaling_fit_natoms(na);
  CHECK(sn.points.size() == 3);
  CHECK(sn.slope == doctest::Approx(-4.0));
  CHECK_THROWS_AS(gpe::scaling_fit_natoms(std::vector<std::pair<double, double>>{{1e3, 1}, {1e4, 2}, {3e4, 3}}),
                  gpe::FitError);
}
