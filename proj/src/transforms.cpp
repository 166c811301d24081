#include "ifbc/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "ifbc/error.hpp"

namespace ifbc::transforms {
namespace {

constexpr double kPi = std::numbers::pi;

// exp(sign * 2 pi i k / n) with k reduced mod n so the angle stays small
Complex root_of_unity(std::size_t k, std::size_t n, double sign) {
  const double angle = sign * 2.0 * kPi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Complex> direct_dft(std::span<const Complex> x, double sign) {
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument("transform of an empty vector");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) acc += root_of_unity(i * j, n, sign) * x[j];
    y[i] = acc * scale;
  }
  return y;
}

// Planner calls are not thread-safe in FFTW; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> fftw_dft(std::span<const Complex> x, int direction) {
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument("transform of an empty vector");
  std::vector<Complex> in(x.begin(), x.end());
  std::vector<Complex> out(n);
  auto* in_ptr = reinterpret_cast<fftw_complex*>(in.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), in_ptr, out_ptr, direction, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error("FFTW failed to create a plan");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace

std::vector<Complex> dft(std::span<const Complex> x) { return direct_dft(x, +1.0); }
std::vector<Complex> idft(std::span<const Complex> x) { return direct_dft(x, -1.0); }

// FFTW_BACKWARD uses exp(+2 pi i jk/n), matching Q^P.
std::vector<Complex> dft_fast(std::span<const Complex> x) { return fftw_dft(x, FFTW_BACKWARD); }
std::vector<Complex> idft_fast(std::span<const Complex> x) { return fftw_dft(x, FFTW_FORWARD); }

namespace {

double dct_entry(std::size_t i, std::size_t j, std::size_t n) {
  // 0-based i, j: sqrt((2 - delta_{i0}) / n) cos(i (2j+1) pi / (2n))
  const double nn = static_cast<double>(n);
  const double scale = std::sqrt((i == 0 ? 1.0 : 2.0) / nn);
  const std::size_t k = (i * (2 * j + 1)) % (4 * n);
  return scale * std::cos(static_cast<double>(k) * kPi / (2.0 * nn));
}

}  // namespace

std::vector<double> dct3(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument("transform of an empty vector");
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += dct_entry(i, j, n) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> dct3_transpose(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument("transform of an empty vector");
  std::vector<double> y(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += dct_entry(i, j, n) * x[i];
    y[j] = acc;
  }
  return y;
}

std::vector<double> dst1(std::span<const double> x) {
  const std::size_t m = x.size();
  if (m == 0) throw InvalidArgument("transform of an empty vector");
  const double period = static_cast<double>(m + 1);
  const double scale = std::sqrt(2.0 / period);
  std::vector<double> y(m, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t k = (i * j) % (2 * (m + 1));
      acc += std::sin(static_cast<double>(k) * kPi / period) * x[j - 1];
    }
    y[i - 1] = scale * acc;
  }
  return y;
}

double art_eta(std::size_t n) {
  const double nn = static_cast<double>(n);
  // sum_{j=0}^{n-1} j^2 = (n-1) n (2n-1) / 6
  return std::sqrt((nn - 1.0) * nn * (2.0 * nn - 1.0) / 6.0);
}

std::vector<double> art(std::span<const double> c) {
  const std::size_t n = c.size();
  if (n < 3) throw InvalidArgument("anti-reflective transform needs n >= 3");
  const double eta = art_eta(n);
  const double first = c[0] / eta;
  const double last = c[n - 1] / eta;
  const auto interior = dst1(c.subspan(1, n - 2));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<double>(n - 1 - i) * first + static_cast<double>(i) * last;
    if (i > 0 && i + 1 < n) y[i] += interior[i - 1];
  }
  return y;
}

std::vector<double> art_inverse(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 3) throw InvalidArgument("anti-reflective transform needs n >= 3");
  const double eta = art_eta(n);
  const double nm1 = static_cast<double>(n - 1);
  const double c_first = eta * y[0] / nm1;
  const double c_last = eta * y[n - 1] / nm1;
  std::vector<double> rest(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    rest[i - 1] = y[i] - (static_cast<double>(n - 1 - i) * c_first + static_cast<double>(i) * c_last) / eta;
  }
  const auto interior = dst1(rest);
  std::vector<double> c(n);
  c[0] = c_first;
  c[n - 1] = c_last;
  std::copy(interior.begin(), interior.end(), c.begin() + 1);
  return c;
}

}  // namespace ifbc::transforms
