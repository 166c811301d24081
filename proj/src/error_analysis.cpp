#include "ifbc/error_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "ifbc/error.hpp"
#include "ifbc/signal.hpp"

namespace ifbc {

std::vector<std::vector<double>> error_propagation(const StructuredOperator& op_ext, const ExtendedSignal& u,
                                                   std::size_t steps) {
  if (op_ext.kind() != BoundaryKind::Periodic) {
    throw InvalidArgument("error propagation runs on the circulant operator of the extended signal");
  }
  if (op_ext.size() != u.size()) {
    throw InvalidArgument("operator size " + std::to_string(op_ext.size()) + " does not match extended length " +
                          std::to_string(u.size()));
  }
  std::vector<std::vector<double>> out;
  out.reserve(steps);
  std::vector<double> x(u.samples().begin(), u.samples().end());
  std::vector<double> smooth(x.size());
  std::vector<double> scratch;
  for (std::size_t j = 1; j <= steps; ++j) {
    op_ext.apply_into(x, smooth, scratch);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= smooth[i];
    out.push_back(restrict_to_core(x, u.pad()));
  }
  return out;
}

std::vector<double> error_upper_bound(std::span<const std::vector<double>> per_step) {
  if (per_step.empty()) throw InvalidArgument("upper bound of an empty error sequence");
  std::vector<double> ub(per_step.front().size(), 0.0);
  for (const auto& err : per_step) {
    if (err.size() != ub.size()) throw InvalidArgument("error vectors differ in length");
    for (std::size_t i = 0; i < ub.size(); ++i) ub[i] = std::max(ub[i], std::abs(err[i]));
  }
  return ub;
}

ErrorEstimate estimate_boundary_error(std::span<const double> s, const Filter& filter, std::size_t pad,
                                      std::size_t steps) {
  if (steps == 0) throw InvalidArgument("error estimate needs at least one step");
  const auto u = constant_error_extension(s, pad);
  const StructuredOperator op(filter, BoundaryKind::Periodic, u.size());
  ErrorEstimate est;
  est.per_step = error_propagation(op, u, steps);
  est.upper_bound = error_upper_bound(est.per_step);
  est.chi = norm_inf(s);
  est.pad = pad;
  est.steps = steps;
  return est;
}

std::vector<double> actual_error(std::span<const double> f1, std::span<const double> exact) {
  if (f1.size() != exact.size()) throw InvalidArgument("actual_error: length mismatch");
  std::vector<double> out(f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i) out[i] = std::abs(f1[i] - exact[i]);
  return out;
}

double relative_error(std::span<const double> f1, std::span<const double> exact) {
  const double denom = norm_inf(exact);
  if (denom == 0.0) throw DomainError("relative error against a zero exact IMF");
  return norm_inf(actual_error(f1, exact)) / denom;
}

double relative_upper_bound(std::span<const double> ub, std::span<const double> exact) {
  const double denom = norm_inf(exact);
  if (denom == 0.0) throw DomainError("relative bound against a zero exact IMF");
  return norm_inf(ub) / denom;
}

SweepGenerator sine_plus_constant(double period, double amplitude, double trend) {
  if (!(period > 0.0)) throw InvalidArgument("sine period must be positive");
  const double omega = 2.0 * std::numbers::pi / period;
  return {[=](double t) { return trend + amplitude * std::sin(omega * t); },
          [=](double t) { return amplitude * std::sin(omega * t); }};
}

namespace {

SweepRow sweep_one(const SweepGenerator& gen, const PhaseSweepConfig& cfg, std::size_t m) {
  SweepRow row;
  row.endpoint = cfg.first_end + static_cast<double>(m) * cfg.dt;
  const auto n = static_cast<std::size_t>(std::llround((row.endpoint - cfg.start) / cfg.dt)) + 1;
  std::vector<double> s(n);
  std::vector<double> exact(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = cfg.start + static_cast<double>(j) * cfg.dt;
    s[j] = gen.signal(t);
    exact[j] = gen.imf(t);
  }
  const std::size_t n_extrema = count_extrema(s);
  if (n_extrema < 2) throw DomainError("sweep signal has fewer than two extrema at endpoint " + std::to_string(row.endpoint));
  const auto step = outer_step_filter(n, n_extrema, cfg.shape, cfg.stopping);
  row.n = n;
  row.filter_length = step.filter.length();

  std::size_t max_k = 0;
  row.err_rel.reserve(cfg.kinds.size());
  for (auto kind : cfg.kinds) {
    const auto inner = inner_loop(s, step.filter, kind, cfg.stopping);
    max_k = std::max(max_k, inner.iterations);
    row.err_rel.push_back(relative_error(inner.imf, exact));
  }
  row.steps = cfg.steps.value_or(std::max<std::size_t>(max_k, 1));
  // same rule as the errorbound default: the reach, capped by the tightest
  // admissible pad among the swept kinds
  std::size_t pad = reach_pad(row.steps, step.filter);
  for (auto kind : cfg.kinds) pad = std::min(pad, max_pad(kind, n));
  const auto est = estimate_boundary_error(s, step.filter, pad, row.steps);
  row.ub_rel = relative_upper_bound(est.upper_bound, exact);
  const auto best = std::min_element(row.err_rel.begin(), row.err_rel.end()) - row.err_rel.begin();
  row.best = cfg.kinds[static_cast<std::size_t>(best)];
  return row;
}

}  // namespace

std::vector<SweepRow> phase_sweep(const SweepGenerator& gen, const PhaseSweepConfig& cfg) {
  if (!gen.signal || !gen.imf) throw InvalidArgument("sweep generator is incomplete");
  if (!(cfg.dt > 0.0) || !(cfg.span >= 0.0)) throw InvalidArgument("sweep needs dt > 0 and span >= 0");
  if (!(cfg.first_end > cfg.start)) throw InvalidArgument("sweep support must have positive length");
  if (cfg.kinds.empty()) throw InvalidArgument("sweep needs at least one boundary kind");
  cfg.stopping.validate();
  const auto count = static_cast<std::size_t>(std::llround(cfg.span / cfg.dt)) + 1;
  std::vector<SweepRow> rows(count);

  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t m = next++; m < count && !failed; m = next++) {
          try {
            rows[m] = sweep_one(gen, cfg, m);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

double dominant_period(std::span<const double> curve, double dt) {
  const std::size_t len = curve.size();
  if (len < 8) throw DomainError("curve too short for a period estimate");
  double mean = 0.0;
  for (double v : curve) mean += v;
  mean /= static_cast<double>(len);
  std::vector<double> x(len);
  for (std::size_t i = 0; i < len; ++i) x[i] = curve[i] - mean;
  const auto autocorr = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < len; ++i) acc += x[i] * x[i + lag];
    return acc / static_cast<double>(len - lag);
  };
  const double r0 = autocorr(0);
  if (!(r0 > 0.0)) throw DomainError("flat curve has no period");
  const std::size_t max_lag = len / 2;
  std::size_t lag = 1;
  while (lag <= max_lag && autocorr(lag) > 0.0) ++lag;
  if (lag > max_lag) throw DomainError("autocorrelation never crosses zero within half the curve");
  std::vector<double> r(max_lag + 2, 0.0);
  for (std::size_t m = lag; m <= max_lag + 1 && m < len; ++m) r[m] = autocorr(m);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t m = lag; m <= max_lag; ++m) peak = std::max(peak, r[m]);
  if (!(peak > 0.0)) throw DomainError("autocorrelation has no positive peak");
  // fundamental period: first local maximum that reaches 90% of the highest
  // peak, so ties between a period and its multiples resolve to the shortest
  std::size_t best = lag;
  for (std::size_t m = lag; m <= max_lag; ++m) {
    const bool local = r[m] >= r[m - 1] && (m + 1 >= len || r[m] >= r[m + 1]);
    if (local && r[m] >= 0.9 * peak) {
      best = m;
      break;
    }
  }
  return static_cast<double>(best) * dt;
}

}  // namespace ifbc
