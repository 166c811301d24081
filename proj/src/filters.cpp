#include "ifbc/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ifbc/error.hpp"
#include "ifbc/signal.hpp"

namespace ifbc {
namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kMonotoneSlack = 1e-14;

}  // namespace

void validate_shape(const FilterShape& shape, std::size_t samples) {
  if (!shape.evaluate) throw InvalidArgument("filter shape '" + shape.name + "' has no evaluator");
  if (samples < 2) samples = 2;
  if (!(shape(0.0) > 0.0)) throw InvalidArgument("filter shape '" + shape.name + "' must be positive at 0");
  double prev = shape(0.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double right = shape(t);
    const double left = shape(-t);
    if (!std::isfinite(right) || right < 0.0) {
      throw InvalidArgument("filter shape '" + shape.name + "' is negative or non-finite");
    }
    if (std::abs(right - left) > 1e-12 * std::max(1.0, std::abs(right))) {
      throw InvalidArgument("filter shape '" + shape.name + "' is not symmetric");
    }
    if (right > prev * (1.0 + kMonotoneSlack) + kMonotoneSlack) {
      throw InvalidArgument("filter shape '" + shape.name + "' is increasing on [0,1]");
    }
    prev = right;
  }
}

FilterShape raised_cosine_shape() {
  return {"raised_cosine", [](double t) { return 0.5 * (1.0 + std::cos(std::numbers::pi * t)); }};
}

FilterShape box_shape() {
  return {"box", [](double) { return 1.0; }};
}

FilterShape triangle_shape() {
  return {"triangle", [](double t) { return 1.0 - std::abs(t); }};
}

FilterShape gaussian_shape(double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian shape needs sigma > 0");
  return {"gaussian", [sigma](double t) { return std::exp(-t * t / (2.0 * sigma * sigma)); }};
}

std::vector<std::string> shape_names() { return {"raised_cosine", "box", "triangle", "gaussian"}; }

FilterShape shape_by_name(const std::string& name) {
  if (name == "raised_cosine") return raised_cosine_shape();
  if (name == "box") return box_shape();
  if (name == "triangle") return triangle_shape();
  if (name == "gaussian") return gaussian_shape();
  throw InvalidArgument("unknown filter shape '" + name + "'");
}

Filter::Filter(std::vector<double> half_weights) : half_(std::move(half_weights)) {
  if (half_.size() < 2) throw InvalidArgument("filter length must be at least 1");
  for (std::size_t j = 0; j < half_.size(); ++j) {
    if (!(half_[j] > 0.0) || !std::isfinite(half_[j])) {
      throw InvalidArgument("filter weight w_" + std::to_string(j) + " must be positive and finite");
    }
    if (j > 0 && half_[j] > half_[j - 1] * (1.0 + kMonotoneSlack)) {
      throw InvalidArgument("filter weights must be nonincreasing (w_" + std::to_string(j) + " > w_" +
                            std::to_string(j - 1) + ")");
    }
  }
  if (std::abs(total() - 1.0) > kSumTolerance) {
    throw InvalidArgument("filter weights must sum to 1, got " + std::to_string(total()));
  }
}

std::vector<double> Filter::full() const {
  const std::size_t l = length();
  std::vector<double> out(2 * l + 1);
  for (std::size_t j = 0; j <= l; ++j) {
    out[l + j] = half_[j];
    out[l - j] = half_[j];
  }
  return out;
}

double Filter::total() const {
  double tail = 0.0;
  for (std::size_t j = half_.size(); j-- > 1;) tail += half_[j];
  return half_[0] + 2.0 * tail;
}

Filter sample_filter(const FilterShape& shape, std::size_t l) {
  if (l == 0) throw InvalidArgument("filter length must be at least 1");
  if (!shape.evaluate) throw InvalidArgument("filter shape '" + shape.name + "' has no evaluator");
  const bool vanishes_at_edge = !(shape(1.0) > 0.0);
  const double denom = static_cast<double>(vanishes_at_edge ? l + 1 : l);
  std::vector<double> w(l + 1);
  for (std::size_t j = 0; j <= l; ++j) {
    w[j] = shape(static_cast<double>(j) / denom) / static_cast<double>(l);
    if (!(w[j] > 0.0)) {
      throw InvalidArgument("filter shape '" + shape.name + "' vanishes at tap " + std::to_string(j) +
                            " of a length-" + std::to_string(l) + " filter");
    }
  }
  double tail = 0.0;
  for (std::size_t j = l; j >= 1; --j) tail += w[j];
  const double total = w[0] + 2.0 * tail;
  for (double& x : w) x /= total;
  return Filter(std::move(w));
}

Filter convolve_self(const Filter& v) {
  const auto taps = v.full();
  const std::size_t lv = v.length();
  const std::size_t lw = 2 * lv;
  // half weights of the symmetric convolution: w_k = sum_i taps[i] taps[i + ... ]
  std::vector<double> w(lw + 1, 0.0);
  const std::size_t m = taps.size();
  for (std::size_t k = 0; k <= lw; ++k) {
    // full index of w_k is lw + k; pairs (i, j) with i + j = lw + k
    double acc = 0.0;
    const std::size_t target = lw + k;
    const std::size_t lo = target >= m - 1 ? target - (m - 1) : 0;
    const std::size_t hi = std::min(target, m - 1);
    for (std::size_t i = lo; i <= hi; ++i) acc += taps[i] * taps[target - i];
    w[k] = acc;
  }
  return Filter(std::move(w));
}

std::size_t filter_length(std::size_t n, std::size_t n_extrema, double xi) {
  if (n_extrema < 2) throw DomainError("filter length needs at least 2 extrema, got " + std::to_string(n_extrema));
  if (!(xi > 0.0) || !std::isfinite(xi)) throw InvalidArgument("xi must be positive and finite");
  if (n < 3) throw InvalidArgument("signal too short for any filter");
  const double raw = std::floor(xi * static_cast<double>(n) / static_cast<double>(n_extrema));
  std::size_t l = raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
  return std::min(l, (n - 1) / 2);
}

std::size_t filter_length(std::span<const double> s, double xi) {
  return filter_length(s.size(), count_extrema(s), xi);
}

std::size_t doubled_base_length(std::size_t n, std::size_t l) {
  if (n < 5) return 0;
  return std::min(l, (n - 1) / 4);
}

}  // namespace ifbc
