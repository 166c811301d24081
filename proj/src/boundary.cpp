#include "ifbc/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifbc/error.hpp"

namespace ifbc {

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Zero: return "zero";
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Reflective: return "reflective";
    case BoundaryKind::AntiReflective: return "antireflective";
  }
  return "unknown";
}

BoundaryKind parse_boundary_kind(std::string_view name) {
  for (auto kind : kAllBoundaryKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidArgument("unknown boundary kind '" + std::string(name) + "'");
}

std::size_t max_pad(BoundaryKind kind, std::size_t n) {
  switch (kind) {
    case BoundaryKind::Zero: return std::numeric_limits<std::size_t>::max() / 4;
    case BoundaryKind::Periodic:
    case BoundaryKind::Reflective: return n;
    case BoundaryKind::AntiReflective: return n == 0 ? 0 : n - 1;
  }
  return 0;
}

ExtendedSignal::ExtendedSignal(std::vector<double> samples, std::size_t pad)
    : samples_(std::move(samples)), pad_(pad) {
  if (samples_.size() < 2 * pad_) throw InvalidArgument("extended signal shorter than its pads");
}

double ExtendedSignal::at(std::ptrdiff_t i) const {
  const auto p = static_cast<std::ptrdiff_t>(pad_);
  const auto idx = i + p;
  if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(samples_.size())) {
    throw InvalidArgument("extended index " + std::to_string(i) + " out of range");
  }
  return samples_[static_cast<std::size_t>(idx)];
}

void extend_into(std::span<const double> s, BoundaryKind kind, std::size_t p, std::span<double> out) {
  const std::size_t n = s.size();
  if (n == 0) throw InvalidArgument("cannot extend an empty signal");
  if (p > max_pad(kind, n)) {
    throw InvalidArgument("pad " + std::to_string(p) + " exceeds the admissible " +
                          std::to_string(max_pad(kind, n)) + " for " + std::string(to_string(kind)) +
                          " extension of length " + std::to_string(n));
  }
  if (out.size() != n + 2 * p) throw InvalidArgument("extension buffer has the wrong size");
  std::copy(s.begin(), s.end(), out.begin() + static_cast<std::ptrdiff_t>(p));
  // out[p - j] holds s(x_{-j}); out[p + n - 1 + j] holds s(x_{n-1+j}); j = 1..p
  for (std::size_t j = 1; j <= p; ++j) {
    double left = 0.0;
    double right = 0.0;
    switch (kind) {
      case BoundaryKind::Zero: break;
      case BoundaryKind::Periodic:
        left = s[n - j];
        right = s[j - 1];
        break;
      case BoundaryKind::Reflective:
        left = s[j - 1];
        right = s[n - j];
        break;
      case BoundaryKind::AntiReflective:
        left = 2.0 * s[0] - s[j];
        right = 2.0 * s[n - 1] - s[n - 1 - j];
        break;
    }
    out[p - j] = left;
    out[p + n - 1 + j] = right;
  }
}

ExtendedSignal extend(std::span<const double> core, BoundaryKind kind, std::size_t p) {
  std::vector<double> out(core.size() + 2 * p);
  extend_into(core, kind, p, out);
  return ExtendedSignal(std::move(out), p);
}

ExtendedSignal constant_error_extension(std::span<const double> core, std::size_t p) {
  const double chi = norm_inf(core);
  std::vector<double> u(core.size() + 2 * p, 0.0);
  std::fill_n(u.begin(), p, chi);
  std::fill_n(u.end() - static_cast<std::ptrdiff_t>(p), p, chi);
  return ExtendedSignal(std::move(u), p);
}

std::vector<double> restrict_to_core(std::span<const double> extended, std::size_t p) {
  if (extended.size() < 2 * p) throw InvalidArgument("vector shorter than twice the pad");
  const auto core = extended.subspan(p, extended.size() - 2 * p);
  return {core.begin(), core.end()};
}

}  // namespace ifbc
