#include "ifbc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ifbc/error.hpp"
#include "ifbc/transforms.hpp"

namespace ifbc {
namespace {

constexpr double kPi = std::numbers::pi;

// w_0 + 2 sum_j w_j cos(j * step * pi / denom), with j * step reduced mod 2 denom
double cosine_symbol(const Filter& w, std::size_t step, std::size_t denom) {
  double acc = 0.0;
  for (std::size_t j = w.length(); j >= 1; --j) {
    const std::size_t k = (j * step) % (2 * denom);
    acc += w[j] * std::cos(static_cast<double>(k) * kPi / static_cast<double>(denom));
  }
  return w[0] + 2.0 * acc;
}

void require_diagonalizable(BoundaryKind kind) {
  if (kind == BoundaryKind::Zero) {
    throw Unsupported("zero boundary (Toeplitz) operators have no closed-form spectrum or fast transform");
  }
}

void require_size(const StructuredOperator& op, std::size_t got) {
  if (got != op.size()) {
    throw InvalidArgument("dimension mismatch: operator is " + std::to_string(op.size()) + ", vector is " +
                          std::to_string(got));
  }
}

// Q diag(g(lambda)) Q^{-1} s for the kind's transform
std::vector<double> spectral_map(const StructuredOperator& op, std::span<const double> s,
                                 const std::function<double(double)>& g, TransformPath path) {
  require_diagonalizable(op.kind());
  require_size(op, s.size());
  if (path == TransformPath::Fast && op.kind() != BoundaryKind::Periodic) {
    throw Unsupported("the fast transform path exists only for periodic operators");
  }
  const auto lambda = transform_ordered_eigenvalues(op);
  const std::size_t n = op.size();
  switch (op.kind()) {
    case BoundaryKind::Periodic: {
      std::vector<Complex> x(s.begin(), s.end());
      auto c = path == TransformPath::Fast ? transforms::idft_fast(x) : transforms::idft(x);
      for (std::size_t i = 0; i < n; ++i) c[i] *= g(lambda[i]);
      const auto y = path == TransformPath::Fast ? transforms::dft_fast(c) : transforms::dft(c);
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = y[i].real();
      return out;
    }
    case BoundaryKind::Reflective: {
      auto c = transforms::dct3(s);
      for (std::size_t i = 0; i < n; ++i) c[i] *= g(lambda[i]);
      return transforms::dct3_transpose(c);
    }
    case BoundaryKind::AntiReflective: {
      auto c = transforms::art_inverse(s);
      for (std::size_t i = 0; i < n; ++i) c[i] *= g(lambda[i]);
      return transforms::art(c);
    }
    case BoundaryKind::Zero: break;
  }
  return {};
}

}  // namespace

StructuredOperator::StructuredOperator(Filter filter, BoundaryKind kind, std::size_t n)
    : filter_(std::move(filter)), kind_(kind), n_(n) {
  if (n_ < 3) throw InvalidArgument("operator dimension must be at least 3");
  if (filter_.length() > (n_ - 1) / 2) {
    throw InvalidArgument("filter length " + std::to_string(filter_.length()) + " exceeds floor((n-1)/2) = " +
                          std::to_string((n_ - 1) / 2));
  }
}

void StructuredOperator::apply_into(std::span<const double> x, std::span<double> y,
                                    std::vector<double>& scratch) const {
  require_size(*this, x.size());
  require_size(*this, y.size());
  const std::size_t l = filter_.length();
  scratch.resize(n_ + 2 * l);
  extend_into(x, kind_, l, scratch);
  const auto w = filter_.half_weights();
  // scratch[i + l] is x^BC(x_i). Tap-major order keeps the per-sample
  // summation order (w_0, w_1, ...) and lets the inner loop vectorise.
  const double* centre = scratch.data() + l;
  for (std::size_t i = 0; i < n_; ++i) y[i] = w[0] * centre[i];
  for (std::size_t j = 1; j <= l; ++j) {
    const double wj = w[j];
    const double* lo = centre - j;
    const double* hi = centre + j;
    for (std::size_t i = 0; i < n_; ++i) y[i] += wj * (lo[i] + hi[i]);
  }
}

std::vector<double> StructuredOperator::apply(std::span<const double> x) const {
  std::vector<double> y(n_);
  std::vector<double> scratch;
  apply_into(x, y, scratch);
  return y;
}

Eigen::MatrixXd to_dense(const StructuredOperator& op) {
  const std::size_t n = op.size();
  if (n > kMaxDenseSize) {
    throw InvalidArgument("dense materialisation limited to n <= " + std::to_string(kMaxDenseSize));
  }
  Eigen::MatrixXd dense(n, n);
  std::vector<double> e(n, 0.0);
  std::vector<double> col(n);
  std::vector<double> scratch;
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply_into(e, col, scratch);
    for (std::size_t i = 0; i < n; ++i) dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    e[j] = 0.0;
  }
  return dense;
}

Spectrum make_spectrum(std::vector<double> values) {
  std::stable_sort(values.begin(), values.end(), std::greater<>());
  Spectrum out;
  for (double v : values) {
    if (std::abs(v - 1.0) <= kMultiplicityTolerance) ++out.unit_multiplicity;
    if (std::abs(v) <= kMultiplicityTolerance) ++out.zero_multiplicity;
  }
  out.eigenvalues = std::move(values);
  return out;
}

std::vector<double> transform_ordered_eigenvalues(const StructuredOperator& op) {
  require_diagonalizable(op.kind());
  const std::size_t n = op.size();
  const Filter& w = op.filter();
  std::vector<double> lambda(n);
  switch (op.kind()) {
    case BoundaryKind::Periodic:
      // cos(2 j (i-1) pi / n)
      for (std::size_t i = 0; i < n; ++i) lambda[i] = cosine_symbol(w, 2 * i, n);
      break;
    case BoundaryKind::Reflective:
      // cos(j (i-1) pi / n)
      for (std::size_t i = 0; i < n; ++i) lambda[i] = cosine_symbol(w, i, n);
      break;
    case BoundaryKind::AntiReflective:
      // 1, then cos(j i pi / (n-1)) for i = 1..n-2, then 1
      lambda.front() = 1.0;
      lambda.back() = 1.0;
      for (std::size_t i = 1; i + 1 < n; ++i) lambda[i] = cosine_symbol(w, i, n - 1);
      break;
    case BoundaryKind::Zero: break;
  }
  return lambda;
}

Spectrum eigenvalues(const StructuredOperator& op) { return make_spectrum(transform_ordered_eigenvalues(op)); }

Spectrum dense_eigenvalues(const StructuredOperator& op) {
  const Eigen::MatrixXd dense = to_dense(op);
  std::vector<double> values(op.size());
  if (op.kind() == BoundaryKind::AntiReflective) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(dense, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error("dense eigensolver did not converge");
    const auto ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev[i].imag()) > 1e-8) throw Error("anti-reflective operator produced a complex eigenvalue");
      values[static_cast<std::size_t>(i)] = ev[i].real();
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("dense eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) values[static_cast<std::size_t>(i)] = ev[i];
  }
  return make_spectrum(std::move(values));
}

std::vector<std::vector<double>> unit_eigenvectors(BoundaryKind kind, std::size_t n) {
  require_diagonalizable(kind);
  if (kind != BoundaryKind::AntiReflective) return {std::vector<double>(n, 1.0)};
  std::vector<double> up(n);
  std::vector<double> down(n);
  for (std::size_t i = 0; i < n; ++i) {
    up[i] = static_cast<double>(i);
    down[i] = static_cast<double>(n - 1 - i);
  }
  return {up, down};
}

std::vector<double> iterate_residual(const StructuredOperator& op, std::span<const double> s, std::size_t k) {
  require_size(op, s.size());
  std::vector<double> x(s.begin(), s.end());
  std::vector<double> smooth(op.size());
  std::vector<double> scratch;
  for (std::size_t step = 0; step < k; ++step) {
    op.apply_into(x, smooth, scratch);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= smooth[i];
  }
  return x;
}

std::vector<double> diagonalized_power_apply(const StructuredOperator& op, std::span<const double> s,
                                             std::size_t k, TransformPath path) {
  if (k == 0) {
    require_size(op, s.size());
    return {s.begin(), s.end()};
  }
  const auto kk = static_cast<double>(k);
  return spectral_map(op, s, [kk](double lambda) { return std::pow(1.0 - lambda, kk); }, path);
}

std::vector<double> limit_projection(const StructuredOperator& op, std::span<const double> s) {
  return spectral_map(
      op, s, [](double lambda) { return std::abs(lambda) <= kMultiplicityTolerance ? 1.0 : 0.0; },
      TransformPath::Direct);
}

std::vector<double> transform_coefficient_magnitudes(const StructuredOperator& op, std::span<const double> s) {
  require_diagonalizable(op.kind());
  require_size(op, s.size());
  std::vector<double> out(s.size());
  switch (op.kind()) {
    case BoundaryKind::Periodic: {
      std::vector<Complex> x(s.begin(), s.end());
      const auto c = transforms::idft(x);
      for (std::size_t i = 0; i < c.size(); ++i) out[i] = std::abs(c[i]);
      break;
    }
    case BoundaryKind::Reflective: {
      const auto c = transforms::dct3(s);
      for (std::size_t i = 0; i < c.size(); ++i) out[i] = std::abs(c[i]);
      break;
    }
    case BoundaryKind::AntiReflective: {
      const auto c = transforms::art_inverse(s);
      for (std::size_t i = 0; i < c.size(); ++i) out[i] = std::abs(c[i]);
      break;
    }
    case BoundaryKind::Zero: break;
  }
  return out;
}

}  // namespace ifbc
