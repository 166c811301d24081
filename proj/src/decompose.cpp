#include "ifbc/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifbc/error.hpp"

namespace ifbc {
namespace {

constexpr double kZeroIterateNorm = 1e-14;

// log(k^k / (k+1)^(k+1)) = -log(k+1) - k log(1 + 1/k), stable for large k
double log_k0_lhs(std::size_t k) {
  const double kk = static_cast<double>(k);
  return -std::log1p(kk) - kk * std::log1p(1.0 / kk);
}

struct OuterResult {
  std::vector<std::vector<double>> imfs;
  std::vector<ImfDiagnostics> diagnostics;
};

OuterResult outer_loop(std::vector<double> residual, const FilterShape& shape, BoundaryKind op_kind,
                       const StoppingConfig& cfg) {
  OuterResult out;
  const std::size_t n = residual.size();
  while (out.diagnostics.size() < cfg.max_imfs) {
    const std::size_t n_extrema = count_extrema(residual);
    if (n_extrema < 2) break;
    const auto step = outer_step_filter(n, n_extrema, shape, cfg);
    auto inner = inner_loop(residual, step.filter, op_kind, cfg);
    // a vanishing IMF leaves the residual unchanged; stop instead of repeating it
    if (norm2(inner.imf) < kZeroIterateNorm) break;
    for (std::size_t i = 0; i < n; ++i) residual[i] -= inner.imf[i];
    out.diagnostics.push_back({inner.iterations, step.filter.length(), step.base_length, inner.final_delta, inner.stop});
    out.imfs.push_back(std::move(inner.imf));
  }
  out.imfs.push_back(std::move(residual));
  return out;
}

}  // namespace

void StoppingConfig::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("delta must be positive");
  if (!(xi > 0.0) || !std::isfinite(xi)) throw InvalidArgument("xi must be positive");
  if (max_inner == 0) throw InvalidArgument("max_inner must be at least 1");
  if (max_imfs == 0) throw InvalidArgument("max_imfs must be at least 1");
}

std::string_view to_string(Mode mode) { return mode == Mode::DIF ? "dif" : "eif"; }

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Delta: return "delta";
    case StopReason::MaxInner: return "max_inner";
    case StopReason::ZeroIterate: return "zero_iterate";
  }
  return "unknown";
}

double delta_metric(std::span<const double> next, std::span<const double> cur) {
  if (next.size() != cur.size()) throw InvalidArgument("delta_metric: length mismatch");
  const double denom = norm2(cur);
  if (denom == 0.0) throw DomainError("delta_metric: current iterate is zero");
  std::vector<double> diff(cur.size());
  for (std::size_t i = 0; i < cur.size(); ++i) diff[i] = next[i] - cur[i];
  return norm2(diff) / denom;
}

InnerResult inner_loop(std::span<const double> s, const Filter& filter, BoundaryKind kind,
                       const StoppingConfig& cfg) {
  cfg.validate();
  const StructuredOperator op(filter, kind, s.size());
  InnerResult out;
  std::vector<double> x(s.begin(), s.end());
  std::vector<double> next(x.size());
  std::vector<double> smooth(x.size());
  std::vector<double> scratch;
  while (true) {
    if (norm2(x) < kZeroIterateNorm) {
      out.stop = StopReason::ZeroIterate;
      break;
    }
    op.apply_into(x, smooth, scratch);
    for (std::size_t i = 0; i < x.size(); ++i) next[i] = x[i] - smooth[i];
    out.final_delta = delta_metric(next, x);
    x.swap(next);
    ++out.iterations;
    if (out.final_delta < cfg.delta) {
      out.stop = StopReason::Delta;
      break;
    }
    if (out.iterations >= cfg.max_inner) {
      out.stop = StopReason::MaxInner;
      break;
    }
  }
  out.imf = std::move(x);
  return out;
}

OuterFilter outer_step_filter(std::size_t n, std::size_t n_extrema, const FilterShape& shape,
                              const StoppingConfig& cfg) {
  const std::size_t l = filter_length(n, n_extrema, cfg.xi);
  if (cfg.double_filter) {
    // n < 5 admits no doubled filter; fall back to the sampled one
    if (const std::size_t base = doubled_base_length(n, l); base > 0) {
      return {convolve_self(sample_filter(shape, base)), base};
    }
  }
  return {sample_filter(shape, l), 0};
}

Decomposition dif(const Signal& s, const FilterShape& shape, BoundaryKind kind, const StoppingConfig& cfg) {
  cfg.validate();
  auto outer = outer_loop({s.values().begin(), s.values().end()}, shape, kind, cfg);
  Decomposition d;
  d.imfs = std::move(outer.imfs);
  d.diagnostics = std::move(outer.diagnostics);
  d.mode = Mode::DIF;
  d.kind = kind;
  d.pad = 0;
  return d;
}

Decomposition eif(const Signal& s, const FilterShape& shape, BoundaryKind kind, std::size_t p,
                  const StoppingConfig& cfg) {
  cfg.validate();
  const auto extended = extend(s, kind, p);
  auto outer = outer_loop({extended.samples().begin(), extended.samples().end()}, shape, BoundaryKind::Periodic, cfg);
  Decomposition d;
  d.imfs.reserve(outer.imfs.size());
  for (const auto& f : outer.imfs) d.imfs.push_back(restrict_to_core(f, p));
  d.diagnostics = std::move(outer.diagnostics);
  d.mode = Mode::EIF;
  d.kind = kind;
  d.pad = p;
  return d;
}

std::size_t default_eif_pad(const Signal& s, const FilterShape& shape, BoundaryKind kind,
                            const StoppingConfig& cfg) {
  cfg.validate();
  const std::size_t n_extrema = count_extrema(s);
  if (n_extrema < 2) return 0;
  const auto step = outer_step_filter(s.size(), n_extrema, shape, cfg);
  return std::min(2 * step.filter.length(), max_pad(kind, s.size()));
}

ConvergenceConstants convergence_constants(const StructuredOperator& op) {
  ConvergenceConstants c;
  switch (op.kind()) {
    case BoundaryKind::Periodic:
    case BoundaryKind::Reflective:
      c.alpha = 1.0;
      c.beta = 1;
      break;
    case BoundaryKind::AntiReflective:
      c.alpha = 3.0;
      c.beta = 2;
      break;
    case BoundaryKind::Zero:
      throw Unsupported("convergence constants are defined for periodic, reflective and anti-reflective only");
  }
  c.zeta = eigenvalues(op).zero_multiplicity;
  return c;
}

std::size_t k0_for_threshold(double rhs) {
  if (!(rhs > 0.0)) throw DomainError("stopping bound threshold must be positive");
  const double log_rhs = std::log(rhs);
  const auto holds = [log_rhs](std::size_t k) { return log_k0_lhs(k) < log_rhs; };
  if (holds(1)) return 1;
  std::size_t hi = 2;
  constexpr std::size_t kLimit = std::size_t{1} << 62;
  while (!holds(hi)) {
    if (hi >= kLimit) throw DomainError("stopping bound k0 exceeds 2^62");
    hi *= 2;
  }
  std::size_t lo = hi / 2;  // fails at lo, holds at hi
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::size_t stopping_bound_k0(double delta, const StructuredOperator& op, std::span<const double> s) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  const auto constants = convergence_constants(op);
  const auto coeffs = transform_coefficient_magnitudes(op, s);
  const double cmax = norm_inf(coeffs);
  const std::size_t n = op.size();
  if (cmax == 0.0 || n <= constants.beta + constants.zeta) return 1;
  const double dim = static_cast<double>(n - constants.beta - constants.zeta);
  return k0_for_threshold(delta / (constants.alpha * cmax * std::sqrt(dim)));
}

}  // namespace ifbc
