#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ifbc/error.hpp"
#include "ifbc/transforms.hpp"

using namespace ifbc;
namespace tr = ifbc::transforms;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// y = M x with M given entrywise
template <class Entry>
std::vector<double> matvec(std::size_t n, std::size_t m, const std::vector<double>& x, Entry entry) {
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) y[i] += entry(i, j) * x[j];
  return y;
}

}  // namespace

TEST_CASE("dft matches the printed matrix and is unitary") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1, 2, 5, 8, 33}) {
    const auto re = random_vector(n, rng);
    const auto im = random_vector(n, rng);
    std::vector<Complex> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = {re[j], im[j]};
    const auto y = tr::dft(x);
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        acc += std::polar(1.0 / std::sqrt(static_cast<double>(n)), 2.0 * M_PI * static_cast<double>(i * j) / static_cast<double>(n)) * x[j];
      CHECK(std::abs(y[i] - acc) < 1e-12);
    }
    const auto back = tr::idft(y);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(back[j] - x[j]) < 1e-12);
    const auto fast = tr::dft_fast(x);
    const auto fast_back = tr::idft_fast(y);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(fast[j] - y[j]) < 1e-11);
      CHECK(std::abs(fast_back[j] - x[j]) < 1e-11);
    }
  }
}

TEST_CASE("dct3 entries and orthogonality") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1, 4, 9, 32}) {
    const auto x = random_vector(n, rng);
    const auto expected = matvec(n, n, x, [n](std::size_t i, std::size_t j) {
      const double scale = std::sqrt((i == 0 ? 1.0 : 2.0) / static_cast<double>(n));
      return scale * std::cos(static_cast<double>(i * (2 * j + 1)) * M_PI / (2.0 * static_cast<double>(n)));
    });
    const auto y = tr::dct3(x);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(norm(y) == doctest::Approx(norm(x)).epsilon(1e-12));
    const auto back = tr::dct3_transpose(y);
    for (std::size_t i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
  }
}

TEST_CASE("dst1 of a basis vector and self-inversion") {
  const auto y = tr::dst1(std::vector<double>{1.0, 0.0, 0.0});
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(y[i] == doctest::Approx(std::sqrt(0.5) * std::sin(static_cast<double>(i + 1) * M_PI / 4.0)).epsilon(1e-14));
  std::mt19937_64 rng(9);
  for (std::size_t m : {1, 6, 31}) {
    const auto x = random_vector(m, rng);
    const auto s = tr::dst1(x);
    CHECK(norm(s) == doctest::Approx(norm(x)).epsilon(1e-12));
    const auto back = tr::dst1(s);
    for (std::size_t i = 0; i < m; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
  }
}

TEST_CASE("anti-reflective transform") {
  CHECK(tr::art_eta(4) == doctest::Approx(std::sqrt(14.0)));
  std::mt19937_64 rng(13);
  for (std::size_t n : {3, 4, 10, 40}) {
    const auto c = random_vector(n, rng);
    const double eta = tr::art_eta(n);
    const std::size_t m = n - 2;
    const auto expected = matvec(n, n, c, [&](std::size_t i, std::size_t j) {
      if (j == 0) return static_cast<double>(n - 1 - i) / eta;
      if (j == n - 1) return static_cast<double>(i) / eta;
      if (i == 0 || i == n - 1) return 0.0;
      return std::sqrt(2.0 / static_cast<double>(m + 1)) * std::sin(static_cast<double>(i * j) * M_PI / static_cast<double>(m + 1));
    });
    const auto y = tr::art(c);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    const auto back = tr::art_inverse(y);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - c[i]) < 1e-11);
  }
  // first column has unit norm
  std::vector<double> e0(8, 0.0);
  e0[0] = 1.0;
  CHECK(norm(tr::art(e0)) == doctest::Approx(1.0).epsilon(1e-14));
  // not orthogonal: the two ramp columns overlap
  std::vector<double> e1(8, 0.0);
  e1[7] = 1.0;
  const auto a = tr::art(e0);
  const auto b = tr::art(e1);
  double dot = 0.0;
  for (std::size_t i = 0; i < 8; ++i) dot += a[i] * b[i];
  CHECK(dot > 0.1);
  CHECK_THROWS_AS(tr::art(std::vector<double>{1.0, 2.0}), InvalidArgument);
}
