#include "ifbc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "ifbc/decompose.hpp"
#include "ifbc/error.hpp"
#include "ifbc/error_analysis.hpp"
#include "ifbc/io.hpp"
#include "ifbc/operators.hpp"
#include "ifbc/signal.hpp"

namespace ifbc::cli {
namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kBoundaryNames = {"zero", "periodic", "reflective", "antireflective"};

struct RunConfig {
  std::string input;
  std::string output;
  std::string bc = "periodic";
  std::string mode = "dif";
  std::optional<std::size_t> pad;
  StoppingConfig stopping;
  std::string shape = "raised_cosine";
  std::string double_filter = "on";
  bool normalize = false;
};

void add_stopping_flags(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--delta", cfg.stopping.delta, "Inner-loop threshold on the relative step change")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--max-inner", cfg.stopping.max_inner, "Inner iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--xi", cfg.stopping.xi, "Filter length factor")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_filter_flags(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--shape", cfg.shape, "Filter shape")->check(CLI::IsMember(shape_names()))->capture_default_str();
  cmd.add_option("--double-filter", cfg.double_filter, "Use the self-convolved filter")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
}

ordered_json stopping_json(const RunConfig& cfg) {
  return {{"delta", cfg.stopping.delta},
          {"max_inner", cfg.stopping.max_inner},
          {"max_imfs", cfg.stopping.max_imfs},
          {"xi", cfg.stopping.xi},
          {"double_filter", cfg.double_filter},
          {"shape", cfg.shape}};
}

std::string to_csv(std::span<const std::string> header, std::span<const std::vector<double>> columns) {
  std::ostringstream os;
  io::write_columns_csv(os, header, columns);
  return os.str();
}

int run_decompose(const RunConfig& cfg, bool pad_given, std::ostream& out) {
  const auto kind = parse_boundary_kind(cfg.bc);
  const Mode mode = cfg.mode == "eif" ? Mode::EIF : Mode::DIF;
  if (pad_given && mode != Mode::EIF) throw UsageError("--pad is only valid with --mode eif");

  Signal s = load_signal(cfg.input);
  if (cfg.normalize) s = normalize(s);
  const auto shape = shape_by_name(cfg.shape);

  Decomposition d;
  std::size_t pad = 0;
  std::string pad_source = "none";
  if (mode == Mode::EIF) {
    if (pad_given) {
      pad = *cfg.pad;
      pad_source = "flag";
      if (pad > max_pad(kind, s.size())) {
        throw UsageError("--pad " + std::to_string(pad) + " exceeds " + std::to_string(max_pad(kind, s.size())) +
                         " for " + cfg.bc + " extension of " + std::to_string(s.size()) + " samples");
      }
    } else {
      pad = default_eif_pad(s, shape, kind, cfg.stopping);
      pad_source = "default";
    }
    d = eif(s, shape, kind, pad, cfg.stopping);
  } else {
    d = dif(s, shape, kind, cfg.stopping);
  }

  std::ostringstream csv;
  io::write_imfs_csv(csv, d.imfs);
  io::write_file(cfg.output, csv.str());

  ordered_json meta;
  meta["tool"] = "ifbc";
  meta["version"] = kVersion;
  meta["subcommand"] = "decompose";
  ordered_json config = {{"input", cfg.input},        {"output", cfg.output}, {"bc", cfg.bc},
                         {"mode", cfg.mode},          {"pad", pad},           {"pad_source", pad_source},
                         {"normalize", cfg.normalize}};
  const ordered_json stopping = stopping_json(cfg);
  for (const auto& [key, value] : stopping.items()) config[key] = value;
  meta["config"] = config;
  meta["n"] = s.size();
  meta["imf_count"] = d.imfs.size();
  ordered_json imfs = ordered_json::array();
  for (std::size_t m = 0; m < d.diagnostics.size(); ++m) {
    const auto& diag = d.diagnostics[m];
    imfs.push_back({{"index", m + 1},
                    {"iterations", diag.iterations},
                    {"filter_length", diag.filter_length},
                    {"base_length", diag.base_length},
                    {"final_delta", diag.final_delta},
                    {"stop", std::string(to_string(diag.stop))},
                    {"residual", false}});
  }
  imfs.push_back({{"index", d.imfs.size()}, {"residual", true}});
  meta["imfs"] = imfs;
  io::write_file(cfg.output + ".meta.json", meta.dump(2) + "\n");

  out << "wrote " << d.imfs.size() << " components (" << d.diagnostics.size() << " IMFs + residual) to "
      << cfg.output << '\n';
  return kExitOk;
}

struct SpectrumArgs {
  std::string bc = "periodic";
  std::size_t n = 0;
  std::size_t length = 0;
  std::string shape = "raised_cosine";
  std::string double_filter = "on";
  std::vector<double> weights;
  std::string output;
};

int run_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  const auto kind = parse_boundary_kind(a.bc);
  if (a.n < 3) throw UsageError("--n must be at least 3");
  std::optional<Filter> filter;
  if (!a.weights.empty()) {
    filter.emplace(a.weights);
  } else {
    if (a.length == 0) throw UsageError("give either --length or --weights");
    auto sampled = sample_filter(shape_by_name(a.shape), a.length);
    filter.emplace(a.double_filter == "on" ? convolve_self(sampled) : sampled);
  }
  if (filter->length() > (a.n - 1) / 2) {
    throw UsageError("filter half-width " + std::to_string(filter->length()) + " exceeds floor((n-1)/2) = " +
                     std::to_string((a.n - 1) / 2));
  }
  const StructuredOperator op(*filter, kind, a.n);
  Spectrum spectrum;
  if (kind == BoundaryKind::Zero) {
    err << "zero boundary (Toeplitz) has no closed-form spectrum; using a dense numerical eigensolve (n <= "
        << kMaxDenseSize << ")\n";
    if (a.n > kMaxDenseSize) throw DomainError("dense eigensolve limited to n <= " + std::to_string(kMaxDenseSize));
    spectrum = dense_eigenvalues(op);
  } else {
    spectrum = eigenvalues(op);
  }
  std::vector<double> index(spectrum.eigenvalues.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i + 1);
  const std::vector<std::string> header = {"index", "value"};
  const std::vector<std::vector<double>> cols = {index, spectrum.eigenvalues};
  const auto text = to_csv(header, cols);
  if (a.output.empty()) {
    out << text;
  } else {
    io::write_file(a.output, text);
    out << "wrote " << spectrum.eigenvalues.size() << " eigenvalues (unit multiplicity "
        << spectrum.unit_multiplicity << ", zero multiplicity " << spectrum.zero_multiplicity << ") to "
        << a.output << '\n';
  }
  return kExitOk;
}

int run_errorbound(const RunConfig& cfg, bool pad_given, std::size_t steps, std::ostream& out) {
  const auto kind = parse_boundary_kind(cfg.bc);
  if (steps == 0) throw UsageError("--steps must be at least 1");
  const Signal s = load_signal(cfg.input);
  const std::size_t n_extrema = count_extrema(s);
  if (n_extrema < 2) throw DomainError("signal has fewer than two extrema; no filter length can be chosen");
  const auto step = outer_step_filter(s.size(), n_extrema, shape_by_name(cfg.shape), cfg.stopping);
  std::size_t pad = 0;
  if (pad_given) {
    pad = *cfg.pad;
    if (pad > max_pad(kind, s.size())) {
      throw UsageError("--pad " + std::to_string(pad) + " exceeds " + std::to_string(max_pad(kind, s.size())) +
                       " for " + cfg.bc + " extension of " + std::to_string(s.size()) + " samples");
    }
  } else {
    pad = std::min(reach_pad(steps, step.filter), max_pad(kind, s.size()));
  }
  const auto est = estimate_boundary_error(s.values(), step.filter, pad, steps);
  std::vector<double> index(s.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
  const std::vector<std::string> header = {"x_index", "err_k", "ub_k"};
  const std::vector<std::vector<double>> cols = {index, est.per_step.back(), est.upper_bound};
  io::write_file(cfg.output, to_csv(header, cols));
  out << "chi " << io::format_double(est.chi) << ", pad " << pad << ", steps " << steps << ", filter half-width "
      << step.filter.length() << "; wrote " << cfg.output << '\n';
  return kExitOk;
}

struct SweepArgs {
  double dt = 0.01;
  double span = 3.0;
  double period = 0.5;
  double amplitude = 1.0;
  double trend = 2.0;
  double start = -3.33;
  std::optional<std::size_t> steps;
  std::size_t threads = 0;
  std::string output;
};

int run_phasesweep(const SweepArgs& a, const RunConfig& cfg, std::ostream& out) {
  if (!(a.dt > 0.0)) throw UsageError("--dt must be positive");
  if (a.span < 0.0) throw UsageError("--span must be nonnegative");
  if (!(a.start < 0.0)) throw UsageError("--start must be below the first endpoint 0");
  PhaseSweepConfig pc;
  pc.start = a.start;
  pc.first_end = 0.0;
  pc.dt = a.dt;
  pc.span = a.span;
  pc.stopping = cfg.stopping;
  pc.shape = shape_by_name(cfg.shape);
  pc.steps = a.steps;
  pc.threads = a.threads;
  const auto rows = phase_sweep(sine_plus_constant(a.period, a.amplitude, a.trend), pc);

  std::ostringstream os;
  os << "endpoint,ub_rel,err_rel_periodic,err_rel_reflective,err_rel_antireflective,best_kind\n";
  for (const auto& r : rows) {
    os << io::format_double(r.endpoint) << ',' << io::format_double(r.ub_rel);
    for (double e : r.err_rel) os << ',' << io::format_double(e);
    os << ',' << to_string(r.best) << '\n';
  }
  io::write_file(a.output, os.str());
  out << "wrote " << rows.size() << " sweep rows to " << a.output << '\n';
  return kExitOk;
}

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterative filtering decomposition under Zero, Periodic, Reflective and Anti-Reflective boundaries",
               "ifbc"};
  app.set_version_flag("--version", std::string("ifbc ") + kVersion);
  app.require_subcommand(1);

  RunConfig dcfg;
  auto* decompose = app.add_subcommand("decompose", "Split a signal into IMFs plus a residual");
  decompose->add_option("--bc", dcfg.bc, "Boundary kind")->check(CLI::IsMember(kBoundaryNames))->capture_default_str();
  decompose->add_option("--mode", dcfg.mode, "dif or eif")->check(CLI::IsMember({"dif", "eif"}))->capture_default_str();
  auto* dpad = decompose->add_option("--pad", dcfg.pad, "EIF pad per side (default: twice the first filter width)");
  add_stopping_flags(*decompose, dcfg);
  decompose->add_option("--max-imfs", dcfg.stopping.max_imfs, "Cap on extracted IMFs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_filter_flags(*decompose, dcfg);
  decompose->add_flag("--normalize", dcfg.normalize, "Scale the input to unit Euclidean norm first");
  decompose->add_option("input", dcfg.input, "Input CSV")->required();
  decompose->add_option("output", dcfg.output, "Output CSV")->required();

  SpectrumArgs sargs;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the structured operator");
  spectrum->add_option("--bc", sargs.bc, "Boundary kind")->check(CLI::IsMember(kBoundaryNames))->capture_default_str();
  spectrum->add_option("--n", sargs.n, "Operator dimension")->required();
  spectrum->add_option("--length", sargs.length, "Sampled filter length (base length when doubled)");
  spectrum->add_option("--shape", sargs.shape, "Filter shape")->check(CLI::IsMember(shape_names()))->capture_default_str();
  spectrum->add_option("--double-filter", sargs.double_filter, "Self-convolve the sampled filter")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  spectrum->add_option("--weights", sargs.weights, "Explicit half weights w0,w1,...,wl")->delimiter(',');
  spectrum->add_option("output", sargs.output, "Output CSV (stdout when omitted)");

  RunConfig ecfg;
  std::size_t esteps = 9;
  auto* errorbound = app.add_subcommand("errorbound", "Propagate a constant outside error into the field of view");
  errorbound->add_option("--bc", ecfg.bc, "Boundary kind")->check(CLI::IsMember(kBoundaryNames))->capture_default_str();
  auto* epad = errorbound->add_option("--pad", ecfg.pad, "Pad per side (default: steps x filter width)");
  errorbound->add_option("--steps", esteps, "Iterations K")->check(CLI::PositiveNumber)->capture_default_str();
  errorbound->add_option("--xi", ecfg.stopping.xi, "Filter length factor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_filter_flags(*errorbound, ecfg);
  errorbound->add_option("input", ecfg.input, "Input CSV")->required();
  errorbound->add_option("output", ecfg.output, "Output CSV")->required();

  SweepArgs wargs;
  RunConfig wcfg;
  std::size_t wsteps = 0;
  auto* sweep = app.add_subcommand("phasesweep", "Relative error versus support endpoint for sine plus constant");
  sweep->add_option("--dt", wargs.dt, "Grid spacing and sweep step")->capture_default_str();
  sweep->add_option("--span", wargs.span, "Sweep length")->capture_default_str();
  sweep->add_option("--period", wargs.period, "Sine period")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--amplitude", wargs.amplitude, "Sine amplitude")->capture_default_str();
  sweep->add_option("--trend", wargs.trend, "Constant trend")->capture_default_str();
  sweep->add_option("--start", wargs.start, "Left end of the support")->capture_default_str();
  auto* wsteps_opt = sweep->add_option("--steps", wsteps, "Fixed K for the bound (default: iterations used)")
                         ->check(CLI::PositiveNumber);
  sweep->add_option("--threads", wargs.threads, "Worker threads (0 = all cores)")->capture_default_str();
  add_stopping_flags(*sweep, wcfg);
  sweep->add_option("--shape", wcfg.shape, "Filter shape")->check(CLI::IsMember(shape_names()))->capture_default_str();
  sweep->add_option("output", wargs.output, "Output CSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help / --version
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    err << "run 'ifbc --help' for usage\n";
    return kExitUsage;
  }

  const auto apply_double = [](RunConfig& c) { c.stopping.double_filter = c.double_filter == "on"; };
  if (decompose->parsed()) {
    apply_double(dcfg);
    return run_decompose(dcfg, dpad->count() > 0, out);
  }
  if (spectrum->parsed()) return run_spectrum(sargs, out, err);
  if (errorbound->parsed()) {
    apply_double(ecfg);
    return run_errorbound(ecfg, epad->count() > 0, esteps, out);
  }
  if (sweep->parsed()) {
    if (wsteps_opt->count() > 0) wargs.steps = wsteps;
    return run_phasesweep(wargs, wcfg, out);
  }
  return kExitUsage;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace ifbc::cli
