#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ifbc {

/// Symmetric, nonincreasing profile h : [-1, 1] -> [0, inf) with h(0) > 0.
struct FilterShape {
  std::string name;
  std::function<double(double)> evaluate;

  double operator()(double t) const { return evaluate(t); }
};

/// Throws InvalidArgument unless the shape is symmetric, nonincreasing on
/// [0, 1] and positive at 0 (checked on a uniform grid of `samples` points).
void validate_shape(const FilterShape& shape, std::size_t samples = 1001);

/// (1 + cos(pi t)) / 2. The default.
FilterShape raised_cosine_shape();
/// Constant 1 on [-1, 1]; gives the moving-average filter.
FilterShape box_shape();
/// 1 - |t|.
FilterShape triangle_shape();
/// exp(-t^2 / (2 sigma^2)) truncated to [-1, 1].
FilterShape gaussian_shape(double sigma = 0.4);

/// Lookup by name: "raised_cosine", "box", "triangle", "gaussian".
FilterShape shape_by_name(const std::string& name);
std::vector<std::string> shape_names();

/// Symmetric decreasing filter stored by its half weights w_0..w_l.
///
/// The full vector is (w_l, ..., w_1, w_0, w_1, ..., w_l); it is strictly
/// positive, nonincreasing away from the centre and sums to one.
class Filter {
 public:
  /// Validates positivity, monotonicity and unit sum (tolerance 1e-12).
  explicit Filter(std::vector<double> half_weights);

  /// l: the half-width of the support.
  std::size_t length() const noexcept { return half_.size() - 1; }
  std::span<const double> half_weights() const noexcept { return half_; }
  double operator[](std::size_t j) const { return j < half_.size() ? half_[j] : 0.0; }

  /// The 2l+1 taps in index order -l..l.
  std::vector<double> full() const;
  /// w_0 + 2 sum_{j>=1} w_j.
  double total() const;

  bool operator==(const Filter&) const = default;

 private:
  std::vector<double> half_;
};

/// Linear scaling: w_j proportional to h(j/l)/l for j = 0..l, renormalised
/// to unit sum. Shapes that vanish at t = 1 are evaluated at j/(l+1) so
/// that the outermost tap stays positive.
Filter sample_filter(const FilterShape& shape, std::size_t l);

/// w = v * v; the result has half-width 2 l(v).
Filter convolve_self(const Filter& v);

/// l = max(1, floor(xi n / n_extrema)) clamped to floor((n-1)/2).
/// Throws DomainError when fewer than two extrema are present.
std::size_t filter_length(std::size_t n, std::size_t n_extrema, double xi);
std::size_t filter_length(std::span<const double> s, double xi);

/// Base half-width l' for the doubled filter: filter_length clamped to
/// floor((n-1)/4). Returns 0 when n < 5 (no admissible doubled filter).
std::size_t doubled_base_length(std::size_t n, std::size_t l);

}  // namespace ifbc
