#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifbc/signal.hpp"

namespace ifbc {

enum class BoundaryKind { Zero, Periodic, Reflective, AntiReflective };

inline constexpr std::array<BoundaryKind, 4> kAllBoundaryKinds = {
    BoundaryKind::Zero, BoundaryKind::Periodic, BoundaryKind::Reflective, BoundaryKind::AntiReflective};

/// "zero", "periodic", "reflective", "antireflective".
std::string_view to_string(BoundaryKind kind);
/// Inverse of to_string; throws InvalidArgument on anything else.
BoundaryKind parse_boundary_kind(std::string_view name);

/// Largest pad the extension rule can index for a core of length n
/// (n for Periodic/Reflective, n-1 for AntiReflective, unbounded for Zero).
std::size_t max_pad(BoundaryKind kind, std::size_t n);

/// A core signal with p extra samples on each side, stored contiguously
/// in index order -p..n-1+p.
class ExtendedSignal {
 public:
  ExtendedSignal(std::vector<double> samples, std::size_t pad);

  std::size_t pad() const noexcept { return pad_; }
  std::size_t core_size() const noexcept { return samples_.size() - 2 * pad_; }
  std::size_t size() const noexcept { return samples_.size(); }

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<const double> left() const noexcept { return std::span(samples_).first(pad_); }
  std::span<const double> core() const noexcept { return std::span(samples_).subspan(pad_, core_size()); }
  std::span<const double> right() const noexcept { return std::span(samples_).last(pad_); }

  /// Sample at signed grid index i in [-p, n-1+p].
  double at(std::ptrdiff_t i) const;

 private:
  std::vector<double> samples_;
  std::size_t pad_;
};

/// Extend `core` by p samples per side under `kind`. Throws InvalidArgument
/// if p exceeds max_pad(kind, n).
ExtendedSignal extend(std::span<const double> core, BoundaryKind kind, std::size_t p);
inline ExtendedSignal extend(const Signal& s, BoundaryKind kind, std::size_t p) { return extend(s.values(), kind, p); }

/// Writes the n+2p extended samples into `out` (no allocation).
void extend_into(std::span<const double> core, BoundaryKind kind, std::size_t p, std::span<double> out);

/// The worst-case outside error u: zero on the core, chi = max|s| on both pads.
ExtendedSignal constant_error_extension(std::span<const double> core, std::size_t p);
inline ExtendedSignal constant_error_extension(const Signal& s, std::size_t p) {
  return constant_error_extension(s.values(), p);
}

/// Rows n..n+2p-1 removed: the middle n samples of an extended vector.
std::vector<double> restrict_to_core(std::span<const double> extended, std::size_t p);

}  // namespace ifbc
