#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ifbc/boundary.hpp"
#include "ifbc/filters.hpp"
#include "ifbc/operators.hpp"
#include "ifbc/signal.hpp"

namespace ifbc {

struct StoppingConfig {
  double delta = 1e-3;          ///< inner loop stops once the relative step change drops below this
  std::size_t max_inner = 1000;  ///< cap on inner iterations per IMF
  std::size_t max_imfs = 16;     ///< cap on extracted IMFs, residual excluded
  double xi = 3.2;               ///< filter-length factor
  bool double_filter = true;     ///< use w = v * v (nonnegative spectrum) instead of the sampled filter

  /// Throws InvalidArgument on nonpositive delta/xi or zero caps.
  void validate() const;
};

enum class Mode { DIF, EIF };
std::string_view to_string(Mode mode);

enum class StopReason { Delta, MaxInner, ZeroIterate };
std::string_view to_string(StopReason reason);

struct ImfDiagnostics {
  std::size_t iterations = 0;     ///< inner steps k
  std::size_t filter_length = 0;  ///< half-width of the operator filter
  std::size_t base_length = 0;    ///< l' of the doubled filter, 0 when not doubled
  double final_delta = 0.0;
  StopReason stop = StopReason::Delta;
};

struct Decomposition {
  /// f_1..f_M; the last entry is the residual/trend.
  std::vector<std::vector<double>> imfs;
  /// One record per extracted IMF (the residual has none).
  std::vector<ImfDiagnostics> diagnostics;
  Mode mode = Mode::DIF;
  BoundaryKind kind = BoundaryKind::Periodic;
  std::size_t pad = 0;
};

/// ||next - cur||_2 / ||cur||_2. Throws DomainError when cur is zero.
double delta_metric(std::span<const double> next, std::span<const double> cur);

struct InnerResult {
  std::vector<double> imf;
  std::size_t iterations = 0;
  double final_delta = 0.0;
  StopReason stop = StopReason::Delta;
};

/// Iterate s <- (I - W^BC) s, extending with `kind` at every step, until the
/// step change drops below cfg.delta, cfg.max_inner steps were taken, or the
/// iterate vanishes (norm < 1e-14).
InnerResult inner_loop(std::span<const double> s, const Filter& filter, BoundaryKind kind, const StoppingConfig& cfg);

/// The filter the outer loop uses for a residual of length n with the given
/// extrema count (doubled per cfg when n allows it).
struct OuterFilter {
  Filter filter;
  std::size_t base_length;  ///< 0 when the sampled filter is used directly
};
OuterFilter outer_step_filter(std::size_t n, std::size_t n_extrema, const FilterShape& shape,
                              const StoppingConfig& cfg);

/// Discrete iterative filtering: boundary rule reimposed on every inner step.
Decomposition dif(const Signal& s, const FilterShape& shape, BoundaryKind kind, const StoppingConfig& cfg = {});

/// Extended iterative filtering: extend once by p, iterate the circulant
/// operator of size n + 2p, return the IMFs restricted to the core.
Decomposition eif(const Signal& s, const FilterShape& shape, BoundaryKind kind, std::size_t p,
                  const StoppingConfig& cfg = {});

/// Twice the first outer-step filter half-width, clamped to max_pad(kind, n);
/// 0 when the signal has fewer than two extrema.
std::size_t default_eif_pad(const Signal& s, const FilterShape& shape, BoundaryKind kind, const StoppingConfig& cfg);

struct ConvergenceConstants {
  double alpha = 1.0;     ///< bound on ||Q||_2
  std::size_t beta = 1;   ///< multiplicity of eigenvalue 1
  std::size_t zeta = 0;   ///< dimension of the kernel
};

/// alpha/beta for the kind; zeta counted from the closed-form spectrum.
ConvergenceConstants convergence_constants(const StructuredOperator& op);

/// Smallest k0 >= 1 with k0^k0 / (k0+1)^(k0+1) < delta / (alpha ||Q^{-1} s||_inf sqrt(n - beta - zeta)).
/// Beyond k0 every step change ||(I-W)^{k+1} s - (I-W)^k s||_2 stays below delta.
std::size_t stopping_bound_k0(double delta, const StructuredOperator& op, std::span<const double> s);

/// The same search given the right-hand side directly.
std::size_t k0_for_threshold(double rhs);

}  // namespace ifbc
