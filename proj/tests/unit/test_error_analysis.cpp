#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ifbc/error.hpp"
#include "ifbc/error_analysis.hpp"

using namespace ifbc;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

const Filter kFilter({0.4, 0.2, 0.1});

}  // namespace

TEST_CASE("error propagation preconditions") {
  const std::vector<double> s{1.0, -2.0, 0.5, 0.25, 1.5};
  const auto u = constant_error_extension(s, 3);
  CHECK_THROWS_AS(error_propagation(StructuredOperator(kFilter, BoundaryKind::Reflective, 11), u, 2), InvalidArgument);
  CHECK_THROWS_AS(error_propagation(StructuredOperator(kFilter, BoundaryKind::Periodic, 12), u, 2), InvalidArgument);
  CHECK_NOTHROW(error_propagation(StructuredOperator(kFilter, BoundaryKind::Periodic, 11), u, 2));
}

TEST_CASE("zero chi and zero pad give zero errors") {
  const std::vector<double> zeros(12, 0.0);
  const auto e = estimate_boundary_error(zeros, kFilter, 4, 5);
  for (const auto& step : e.per_step)
    for (double v : step) CHECK(v == 0.0);
  std::mt19937_64 rng(1);
  const auto s = random_vector(12, rng);
  const auto e0 = estimate_boundary_error(s, kFilter, 0, 5);
  for (const auto& step : e0.per_step)
    for (double v : step) CHECK(v == 0.0);
}

TEST_CASE("finite propagation speed") {
  std::mt19937_64 rng(2);
  const std::size_t n = 60;
  const auto s = random_vector(n, rng);
  const std::size_t l = kFilter.length();
  const std::size_t steps = 6;
  const auto e = estimate_boundary_error(s, kFilter, steps * l, steps);
  REQUIRE(e.per_step.size() == steps);
  double chi = 0.0;
  for (double v : s) chi = std::max(chi, std::abs(v));
  CHECK(e.chi == chi);
  for (std::size_t k = 1; k <= steps; ++k) {
    const auto& err = e.per_step[k - 1];
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t dist = std::min(i + 1, n - i);  // distance to the nearest pad sample
      if (dist > k * l) CHECK(err[i] == 0.0);
    }
    CHECK(err[0] != 0.0);
    CHECK(err[n - 1] != 0.0);
  }
}

TEST_CASE("one step against a brute-force stencil") {
  const std::vector<double> s{1.0, -3.0, 2.0, 0.5, 0.0, 1.0, 2.0, -1.0};
  const std::size_t p = 2;
  const auto e = estimate_boundary_error(s, kFilter, p, 1);
  const double chi = 3.0;
  std::vector<double> u(s.size() + 2 * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) u[i] = u[u.size() - 1 - i] = chi;
  const std::size_t big = u.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t c = i + p;
    double wu = 0.0;
    for (std::ptrdiff_t d = -2; d <= 2; ++d) {
      const auto j = static_cast<std::size_t>((static_cast<std::ptrdiff_t>(c + big) + d)) % big;
      wu += kFilter[static_cast<std::size_t>(std::abs(d))] * u[j];
    }
    CHECK(e.per_step[0][i] == doctest::Approx(u[c] - wu).epsilon(1e-14));
  }
}

TEST_CASE("upper bound is the running max of absolute errors") {
  const std::vector<std::vector<double>> seq{{1.0, -2.0}, {-3.0, 1.0}};
  CHECK(error_upper_bound(seq) == std::vector<double>{3.0, 2.0});
  const std::vector<std::vector<double>> reversed{seq[1], seq[0]};
  CHECK(error_upper_bound(reversed) == error_upper_bound(seq));
  CHECK(error_upper_bound(std::vector<std::vector<double>>{{-1.5, 0.5}}) == std::vector<double>{1.5, 0.5});
  CHECK_THROWS_AS(error_upper_bound(std::vector<std::vector<double>>{}), InvalidArgument);
  CHECK_THROWS_AS(error_upper_bound(std::vector<std::vector<double>>{{1.0}, {1.0, 2.0}}), InvalidArgument);

  std::mt19937_64 rng(3);
  const auto s = random_vector(40, rng);
  const auto e5 = estimate_boundary_error(s, kFilter, 10, 5);
  const auto e9 = estimate_boundary_error(s, kFilter, 10, 9);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(e9.upper_bound[i] >= e5.upper_bound[i]);
    double m = 0.0;
    for (std::size_t k = 0; k < 5; ++k) m = std::max(m, std::abs(e5.per_step[k][i]));
    CHECK(e5.upper_bound[i] == m);
  }
}

TEST_CASE("actual and relative errors") {
  const std::vector<double> exact{1.0, -2.0, 0.5};
  CHECK(actual_error(exact, exact) == std::vector<double>{0.0, 0.0, 0.0});
  const std::vector<double> shifted{1.25, -1.75, 0.75};
  for (double v : actual_error(shifted, exact)) CHECK(v == doctest::Approx(0.25));
  CHECK(relative_error(exact, exact) == 0.0);
  const std::vector<double> scaled{1.1, -2.2, 0.55};
  CHECK(relative_error(scaled, exact) == doctest::Approx(0.1));
  std::vector<double> scaled_both(3), exact_scaled(3);
  for (std::size_t i = 0; i < 3; ++i) {
    scaled_both[i] = -7.0 * scaled[i];
    exact_scaled[i] = -7.0 * exact[i];
  }
  CHECK(relative_error(scaled_both, exact_scaled) == doctest::Approx(relative_error(scaled, exact)));
  CHECK_THROWS_AS(relative_error(exact, std::vector<double>{0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(actual_error(exact, std::vector<double>{1.0}), InvalidArgument);
  CHECK(relative_upper_bound(std::vector<double>{0.5, 1.0, 0.2}, exact) == doctest::Approx(0.5));
  CHECK(reach_pad(9, kFilter) == 18);
}

TEST_CASE("dominant period of synthetic curves") {
  const double dt = 0.01;
  std::vector<double> c(300);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::sin(2.0 * M_PI * static_cast<double>(i) * dt / 0.5);
  CHECK(dominant_period(c, dt) == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::abs(std::sin(2.0 * M_PI * static_cast<double>(i) * dt / 0.5));
  CHECK(dominant_period(c, dt) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(dominant_period(std::vector<double>(50, 1.0), dt), DomainError);
  CHECK_THROWS_AS(dominant_period(std::vector<double>{1, 2, 3}, dt), DomainError);
}

TEST_CASE("phase sweep") {
  PhaseSweepConfig cfg;
  cfg.span = 0.5;
  cfg.threads = 2;
  const auto gen = sine_plus_constant(0.5, 1.0, 2.0);
  const auto rows = phase_sweep(gen, cfg);
  REQUIRE(rows.size() == 51);
  for (std::size_t m = 0; m < rows.size(); ++m) {
    CHECK(rows[m].endpoint == doctest::Approx(0.01 * static_cast<double>(m)));
    CHECK(rows[m].n == 334 + m);
    CHECK(rows[m].err_rel.size() == 3);
    CHECK(rows[m].steps >= 1);
    const auto best = std::min_element(rows[m].err_rel.begin(), rows[m].err_rel.end()) - rows[m].err_rel.begin();
    CHECK(rows[m].best == cfg.kinds[static_cast<std::size_t>(best)]);
  }
  // single-threaded run is identical
  cfg.threads = 1;
  const auto serial = phase_sweep(gen, cfg);
  for (std::size_t m = 0; m < rows.size(); ++m) {
    CHECK(serial[m].ub_rel == rows[m].ub_rel);
    CHECK(serial[m].err_rel == rows[m].err_rel);
  }
  // n = 350 samples span exactly 7 periods: periodic extension is exact there
  std::vector<double> periodic;
  for (const auto& r : rows) periodic.push_back(r.err_rel[0]);
  const auto argmin = std::min_element(periodic.begin(), periodic.end()) - periodic.begin();
  CHECK(argmin == 16);
  CHECK(rows[16].n == 350);
  CHECK(periodic[16] < 1e-2);
  cfg.kinds.clear();
  CHECK_THROWS_AS(phase_sweep(gen, cfg), InvalidArgument);
  PhaseSweepConfig flat;
  flat.span = 0.0;
  CHECK_THROWS_AS(phase_sweep(SweepGenerator{[](double) { return 1.0; }, [](double) { return 0.0; }}, flat),
                  DomainError);
}
