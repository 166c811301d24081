#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

#include "ifbc/boundary.hpp"
#include "ifbc/filters.hpp"

namespace ifbc {

/// The n x n smoothing operator W^BC induced by a symmetric filter and a
/// boundary rule, applied without forming the matrix.
///
/// Zero gives a banded Toeplitz matrix, Periodic a circulant, Reflective
/// Toeplitz-plus-Hankel and AntiReflective the anti-reflective algebra
/// (unit first/last rows, T - H interior).
class StructuredOperator {
 public:
  /// Throws InvalidArgument unless filter.length() <= floor((n-1)/2).
  StructuredOperator(Filter filter, BoundaryKind kind, std::size_t n);

  const Filter& filter() const noexcept { return filter_; }
  BoundaryKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return n_; }

  /// y_i = sum_{|i-j|<=l} x^BC_j w_{|i-j|}, x^BC extended with pad l.
  std::vector<double> apply(std::span<const double> x) const;

  /// apply() into caller storage; `scratch` is resized as needed.
  void apply_into(std::span<const double> x, std::span<double> y, std::vector<double>& scratch) const;

 private:
  Filter filter_;
  BoundaryKind kind_;
  std::size_t n_;
};

inline constexpr std::size_t kMaxDenseSize = 4096;
inline constexpr double kMultiplicityTolerance = 1e-10;

/// Column j is apply(e_j). Throws InvalidArgument above kMaxDenseSize.
Eigen::MatrixXd to_dense(const StructuredOperator& op);

struct Spectrum {
  std::vector<double> eigenvalues;  ///< descending
  std::size_t unit_multiplicity = 0;
  std::size_t zero_multiplicity = 0;  ///< zeta
};

/// Sort descending and count values within kMultiplicityTolerance of 1 and 0.
Spectrum make_spectrum(std::vector<double> values);

/// Closed-form eigenvalues for Periodic, Reflective and AntiReflective.
/// Zero has no formula and throws Unsupported; see dense_eigenvalues.
Spectrum eigenvalues(const StructuredOperator& op);

/// Eigenvalues in the column order of the diagonalising transform:
/// Periodic/Reflective by frequency index, AntiReflective as
/// (1, lambda_1..lambda_{n-2}, 1).
std::vector<double> transform_ordered_eigenvalues(const StructuredOperator& op);

/// Numerical eigenvalues of to_dense(op). Works for every kind, including
/// Zero; subject to the dense size guard. Imaginary parts of the
/// (non-symmetric) anti-reflective case are discarded after a 1e-8 check.
Spectrum dense_eigenvalues(const StructuredOperator& op);

/// Eigenvectors of eigenvalue 1 that hold for every filter: all-ones for
/// Periodic/Reflective, the two ramps for AntiReflective.
std::vector<std::vector<double>> unit_eigenvectors(BoundaryKind kind, std::size_t n);

/// (I - W)^k s by k matrix-free applications.
std::vector<double> iterate_residual(const StructuredOperator& op, std::span<const double> s, std::size_t k);

enum class TransformPath { Direct, Fast };

/// Q (I - D)^k Q^{-1} s through the diagonalising transform. Cost does not
/// depend on k. Fast (FFT) is available for Periodic only.
std::vector<double> diagonalized_power_apply(const StructuredOperator& op, std::span<const double> s,
                                             std::size_t k, TransformPath path = TransformPath::Direct);

/// Q Z_inf Q^{-1} s: the k -> inf limit, i.e. the component of s along the
/// eigenvectors whose eigenvalue is numerically zero.
std::vector<double> limit_projection(const StructuredOperator& op, std::span<const double> s);

/// Q^{-1} s in the transform's coefficient basis, as magnitudes.
std::vector<double> transform_coefficient_magnitudes(const StructuredOperator& op, std::span<const double> s);

}  // namespace ifbc
