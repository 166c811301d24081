#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace ifbc {

/// Real samples on the uniform grid x_j = j/(n-1), j = 0..n-1.
///
/// Construction enforces n >= 3 and finite samples; the values are
/// immutable afterwards.
class Signal {
 public:
  static constexpr std::size_t kMinLength = 3;

  explicit Signal(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  /// Grid abscissa j/(n-1).
  double x(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(size() - 1); }

  bool operator==(const Signal&) const = default;

 private:
  std::vector<double> values_;
};

/// Parse one-value-per-line CSV text. A single header line is skipped when
/// the first line is not numeric. Errors carry the 1-based line number.
Signal parse_signal(std::istream& in);

Signal load_signal(const std::filesystem::path& path);

/// Scale to unit Euclidean norm. Throws DomainError on the zero signal.
Signal normalize(const Signal& s);

/// Number of strict interior local extrema. A maximal run of equal values
/// counts once if it lies strictly above (or below) both neighbours.
/// Endpoints never count.
std::size_t count_extrema(std::span<const double> values);

inline std::size_t count_extrema(const Signal& s) { return count_extrema(s.values()); }

double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

}  // namespace ifbc
