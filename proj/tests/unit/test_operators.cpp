#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ifbc/error.hpp"
#include "ifbc/operators.hpp"
#include "support/dense_oracle.hpp"
#include "support/random_filters.hpp"

using namespace ifbc;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<double> sorted_real_eigenvalues(const Eigen::MatrixXd& m, bool symmetric) {
  std::vector<double> out;
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i].real());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

const Filter kFilter3({3.0 / 9.0, 2.0 / 9.0, 1.0 / 9.0});

}  // namespace

TEST_CASE("admissibility of the filter length") {
  CHECK_NOTHROW(StructuredOperator(kFilter3, BoundaryKind::Periodic, 5));
  CHECK_THROWS_AS(StructuredOperator(kFilter3, BoundaryKind::Periodic, 4), InvalidArgument);
}

TEST_CASE("apply on documented inputs") {
  const std::size_t n = 9;
  const std::vector<double> ones(n, 1.0);
  for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Reflective}) {
    const StructuredOperator op(kFilter3, kind, n);
    for (double v : op.apply(ones)) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  }
  std::vector<double> ramp(n);
  for (std::size_t j = 0; j < n; ++j) ramp[j] = static_cast<double>(j);
  const auto y = StructuredOperator(kFilter3, BoundaryKind::AntiReflective, n).apply(ramp);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(y[j] - ramp[j]) < 1e-12);
  const auto z = StructuredOperator(kFilter3, BoundaryKind::Zero, n).apply(ones);
  CHECK(z[0] == doctest::Approx(2.0 / 3.0));
  CHECK(z[4] == doctest::Approx(1.0));
  CHECK_THROWS_AS(StructuredOperator(kFilter3, BoundaryKind::Zero, n).apply(std::vector<double>(n + 1)), InvalidArgument);
}

TEST_CASE("dense materialization") {
  const Filter w({0.5, 0.25});
  const auto c = to_dense(StructuredOperator(w, BoundaryKind::Periodic, 4));
  CHECK(c(0, 0) == 0.5);
  CHECK(c(0, 1) == 0.25);
  CHECK(c(0, 2) == 0.0);
  CHECK(c(0, 3) == 0.25);
  const auto a = to_dense(StructuredOperator(kFilter3, BoundaryKind::AntiReflective, 8));
  CHECK(a(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  for (int j = 1; j < 8; ++j) CHECK(a(0, j) == 0.0);
  CHECK(a(7, 7) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("matrix-free apply matches the independently assembled matrices") {
  std::mt19937_64 rng(101);
  for (long n : {5L, 8L, 16L, 33L}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto w = testing::random_filter(testing::random_length(static_cast<std::size_t>((n - 1) / 2), rng), rng);
      for (auto kind : kAllBoundaryKinds) {
        CAPTURE(n);
        CAPTURE(to_string(kind));
        const StructuredOperator op(w, kind, static_cast<std::size_t>(n));
        const Eigen::MatrixXd m = oracle::dense(w, kind, n);
        CHECK((to_dense(op) - m).cwiseAbs().maxCoeff() < 1e-13);
        const auto x = random_vector(static_cast<std::size_t>(n), rng);
        const Eigen::VectorXd expected = m * Eigen::Map<const Eigen::VectorXd>(x.data(), n);
        const auto y = op.apply(x);
        for (long i = 0; i < n; ++i) CHECK(std::abs(y[static_cast<std::size_t>(i)] - expected[i]) < 1e-13);
        // row sums
        const Eigen::VectorXd rows = m.rowwise().sum();
        if (kind == BoundaryKind::Zero) {
          CHECK(rows[0] < 1.0);
        } else {
          CHECK((rows.array() - 1.0).abs().maxCoeff() < 1e-13);
        }
        if (kind != BoundaryKind::AntiReflective) CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-15);
      }
    }
  }
}

TEST_CASE("closed-form eigenvalues") {
  SUBCASE("documented periodic value") {
    const auto sp = eigenvalues(StructuredOperator(kFilter3, BoundaryKind::Periodic, 8));
    const auto it = std::find_if(sp.eigenvalues.begin(), sp.eigenvalues.end(),
                                 [](double v) { return std::abs(v - 1.0 / 9.0) < 1e-14; });
    CHECK(it != sp.eigenvalues.end());
    CHECK(sp.eigenvalues.front() == doctest::Approx(1.0));
  }
  SUBCASE("zero kind has no formula") {
    CHECK_THROWS_AS(eigenvalues(StructuredOperator(kFilter3, BoundaryKind::Zero, 8)), Unsupported);
    const auto sp = dense_eigenvalues(StructuredOperator(kFilter3, BoundaryKind::Zero, 8));
    CHECK(sp.eigenvalues.size() == 8);
    CHECK(sp.eigenvalues.front() < 1.0);
  }
  SUBCASE("formulas match the oracle spectra") {
    std::mt19937_64 rng(202);
    for (long n : {8L, 16L, 33L}) {
      const auto w = testing::random_filter(testing::random_length(static_cast<std::size_t>((n - 1) / 2), rng), rng);
      for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Reflective, BoundaryKind::AntiReflective}) {
        const StructuredOperator op(w, kind, static_cast<std::size_t>(n));
        const auto closed = eigenvalues(op);
        const auto numeric = sorted_real_eigenvalues(oracle::dense(w, kind, n), kind != BoundaryKind::AntiReflective);
        REQUIRE(closed.eigenvalues.size() == numeric.size());
        for (std::size_t i = 0; i < numeric.size(); ++i) CHECK(std::abs(closed.eigenvalues[i] - numeric[i]) < 1e-10);
        CHECK(closed.unit_multiplicity >= (kind == BoundaryKind::AntiReflective ? 2u : 1u));
      }
    }
  }
}

TEST_CASE("make_spectrum counts multiplicities") {
  const auto sp = make_spectrum({0.5, 1.0, 1e-12, 1.0 - 1e-11, 0.0});
  CHECK(sp.eigenvalues == std::vector<double>{1.0, 1.0 - 1e-11, 0.5, 1e-12, 0.0});
  CHECK(sp.unit_multiplicity == 2);
  CHECK(sp.zero_multiplicity == 2);
}

TEST_CASE("doubled filters have spectra in [0, 1]") {
  std::mt19937_64 rng(303);
  for (std::size_t n : {9u, 16u, 33u}) {
    const auto v = testing::random_filter(testing::random_length((n - 1) / 4, rng), rng);
    const auto w = convolve_self(v);
    std::size_t expected_unit = 1;
    for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Reflective, BoundaryKind::AntiReflective}) {
      expected_unit = kind == BoundaryKind::AntiReflective ? 2 : 1;
      const auto sp = dense_eigenvalues(StructuredOperator(w, kind, n));
      CHECK(sp.eigenvalues.front() <= 1.0 + 1e-10);
      CHECK(sp.eigenvalues.back() >= -1e-10);
      CHECK(sp.unit_multiplicity == expected_unit);
    }
  }
}

TEST_CASE("unit eigenvectors") {
  CHECK(unit_eigenvectors(BoundaryKind::Periodic, 5) == std::vector<std::vector<double>>{{1, 1, 1, 1, 1}});
  CHECK(unit_eigenvectors(BoundaryKind::AntiReflective, 4) ==
        std::vector<std::vector<double>>{{0, 1, 2, 3}, {3, 2, 1, 0}});
  CHECK_THROWS_AS(unit_eigenvectors(BoundaryKind::Zero, 4), Unsupported);
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 12 + static_cast<std::size_t>(trial);
    const auto w = testing::random_filter(testing::random_length((n - 1) / 2, rng), rng);
    for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Reflective, BoundaryKind::AntiReflective}) {
      const StructuredOperator op(w, kind, n);
      for (const auto& u : unit_eigenvectors(kind, n)) {
        const auto y = op.apply(u);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - u[i]) < 1e-12);
      }
    }
  }
}

TEST_CASE("diagonalized powers") {
  std::mt19937_64 rng(505);
  const std::size_t n = 20;
  const auto w = testing::random_filter(4, rng);
  const auto s = random_vector(n, rng);
  for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Reflective, BoundaryKind::AntiReflective}) {
    CAPTURE(to_string(kind));
    const StructuredOperator op(w, kind, n);
    const auto k0 = diagonalized_power_apply(op, s, 0);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(k0[i] - s[i]) < 1e-12);
    const auto k1 = diagonalized_power_apply(op, s, 1);
    const auto ws = op.apply(s);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(k1[i] - (s[i] - ws[i])) < 1e-12);
    const auto k7 = diagonalized_power_apply(op, s, 7);
    const auto it = iterate_residual(op, s, 7);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(k7[i] - it[i]) < 1e-11);
  }
  const StructuredOperator p(w, BoundaryKind::Periodic, n);
  const auto direct = diagonalized_power_apply(p, s, 30, TransformPath::Direct);
  const auto fast = diagonalized_power_apply(p, s, 30, TransformPath::Fast);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(direct[i] - fast[i]) < 1e-11);
  CHECK_THROWS_AS(diagonalized_power_apply(StructuredOperator(w, BoundaryKind::Reflective, n), s, 3, TransformPath::Fast),
                  Unsupported);
  CHECK_THROWS_AS(diagonalized_power_apply(StructuredOperator(w, BoundaryKind::Zero, n), s, 3), Unsupported);
}

TEST_CASE("transform diagonalizes the dense operator") {
  // Q D Q^{-1} e_j reproduces column j: (I - W) e_j = diagonalized_power_apply(e_j, 1)
  std::mt19937_64 rng(606);
  const std::size_t n = 14;
  const auto w = testing::random_filter(5, rng);
  for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Reflective, BoundaryKind::AntiReflective}) {
    const Eigen::MatrixXd m = oracle::dense(w, kind, static_cast<long>(n));
    const StructuredOperator op(w, kind, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> e(n, 0.0);
      e[j] = 1.0;
      const auto col = diagonalized_power_apply(op, e, 1);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs((e[i] - col[i]) - m(static_cast<long>(i), static_cast<long>(j))) < 1e-10);
    }
  }
}

TEST_CASE("dense size guard") {
  const Filter w({0.5, 0.25});
  CHECK_THROWS_AS(to_dense(StructuredOperator(w, BoundaryKind::Periodic, kMaxDenseSize + 1)), InvalidArgument);
}
