#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ifbc/boundary.hpp"
#include "ifbc/decompose.hpp"
#include "ifbc/filters.hpp"
#include "ifbc/operators.hpp"

namespace ifbc {

/// Propagation of an assumed constant outside error into the field of view.
struct ErrorEstimate {
  std::vector<std::vector<double>> per_step;  ///< err_1..err_K, each of core length n
  std::vector<double> upper_bound;            ///< ub_K(x_i) = max_{j<=K} |err_j(x_i)|
  double chi = 0.0;
  std::size_t pad = 0;
  std::size_t steps = 0;
};

/// err_j = R (I - W)^j u for j = 1..K, where W is the circulant operator of
/// size n + 2p and R keeps the middle n samples.
std::vector<std::vector<double>> error_propagation(const StructuredOperator& op_ext, const ExtendedSignal& u,
                                                   std::size_t steps);

/// Componentwise running max of |err_j|. Throws InvalidArgument on an empty
/// sequence or ragged lengths.
std::vector<double> error_upper_bound(std::span<const std::vector<double>> per_step);

/// Build u from s (chi = max|s|), propagate K steps with `filter`, bound.
ErrorEstimate estimate_boundary_error(std::span<const double> s, const Filter& filter, std::size_t pad,
                                      std::size_t steps);

/// Pad that keeps every core point's K-step stencil inside the constant
/// region: K * l.
inline std::size_t reach_pad(std::size_t steps, const Filter& filter) { return steps * filter.length(); }

/// |f1 - exact| componentwise.
std::vector<double> actual_error(std::span<const double> f1, std::span<const double> exact);

/// ||f1 - exact||_inf / ||exact||_inf. Throws DomainError on a zero exact IMF.
double relative_error(std::span<const double> f1, std::span<const double> exact);

/// ||ub||_inf / ||exact||_inf.
double relative_upper_bound(std::span<const double> ub, std::span<const double> exact);

/// A signal family sampled on a growing support and its known first IMF.
struct SweepGenerator {
  std::function<double(double)> signal;
  std::function<double(double)> imf;
};

/// c + a sin(2 pi t / period): a plain sine over a constant trend.
SweepGenerator sine_plus_constant(double period = 0.5, double amplitude = 1.0, double trend = 2.0);

struct PhaseSweepConfig {
  double start = -3.33;    ///< fixed left end of the support
  double first_end = 0.0;  ///< right end of the first support
  double dt = 0.01;        ///< grid spacing and sweep increment
  double span = 3.0;       ///< total sweep length
  std::vector<BoundaryKind> kinds = {BoundaryKind::Periodic, BoundaryKind::Reflective,
                                     BoundaryKind::AntiReflective};
  StoppingConfig stopping{};
  FilterShape shape = raised_cosine_shape();
  /// Iterations for ub_k. Unset: the largest inner-loop count any kind used.
  std::optional<std::size_t> steps;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

struct SweepRow {
  double endpoint = 0.0;
  std::size_t n = 0;
  std::size_t steps = 0;
  std::size_t filter_length = 0;
  double ub_rel = 0.0;
  std::vector<double> err_rel;  ///< parallel to PhaseSweepConfig::kinds
  BoundaryKind best = BoundaryKind::Periodic;
};

/// For every endpoint first_end + m dt (m = 0..round(span/dt)) sample the
/// generator on [start, endpoint], extract the first IMF with DIF under each
/// kind and record relative errors, the relative bound and the best kind.
std::vector<SweepRow> phase_sweep(const SweepGenerator& gen, const PhaseSweepConfig& cfg);

/// Fundamental period (in units of dt) from the unbiased autocorrelation of
/// the mean-removed curve: after its first zero crossing and up to half the
/// curve length, the first local maximum within 90% of the highest one.
/// Throws DomainError for a flat or too short curve.
double dominant_period(std::span<const double> curve, double dt);

}  // namespace ifbc
