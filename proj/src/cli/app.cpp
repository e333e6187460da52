// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/cli.hpp"

#include <CLI11.hpp>
#include <istream>
#include <ostream>

#include "commands.hpp"
#include "tcw/error.hpp"

namespace tcw {
namespace {

void cascade_options(CLI::App* sub, cli::RunConfig& cfg) {
  sub->add_option("--c", cfg.c, "Distribution parameter c > 1 (number or sqrt2)")
      ->capture_default_str();
  sub->add_option("--tau0", cfg.tau0, "Reference scale tau0 (default sigma_min^2 c^-16)");
  auto* levels = sub->add_option("--levels", cfg.levels, "Number of scale levels K");
  auto* smax = sub->add_option("--sigma-max", cfg.sigma_max, "Coarsest scale to reach (default 64)");
  levels->excludes(smax);
  sub->add_option("--sigma-min", cfg.sigma_min,
                  "Finest working scale; eight levels are placed at or below it (default 1)");
  sub->add_option("--dt", cfg.dt, "Sampling step in time units (default 1)");
  sub->add_option("--cascade", cfg.cascade, "Time constants: discrete or sampled")
      ->capture_default_str();
}

void derivative_options(CLI::App* sub, cli::RunConfig& cfg) {
  sub->add_option("--gamma", cfg.gamma, "Scale normalization power (default 1)");
  sub->add_option("--order", cfg.order, "Derivative order 0, 1 or 2");
  sub->add_option("--normalization", cfg.normalization, "gamma, lp:P or mother")
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Time-causal multi-scale wavelet analysis", "tcwave"};
  app.require_subcommand(1);
  cli::RunConfig cfg;

  auto* analyze = app.add_subcommand("analyze", "Scalograms of a signal as CSV");
  cascade_options(analyze, cfg);
  derivative_options(analyze, cfg);
  analyze->add_option("--input", cfg.input,
                      "csv:PATH[:col] | wav:PATH | gen:blob:S | gen:edge:S | gen:chirp:A,B | "
                      "gen:impulse | gen:step")
      ->required();
  analyze->add_option("--length", cfg.length, "Generator length in samples");
  analyze->add_option("--quad-C", cfg.quad_C, "Quasi-quadrature weight C")->capture_default_str();
  analyze->add_option("--out", cfg.out, "Output prefix; writes PREFIX.{smooth,d1,d2,qq,bandpass}.csv");
  analyze->add_option("--emit", cfg.emit, "Without --out: smooth, derivative, qq or bandpass")
      ->capture_default_str();
  analyze->add_flag("--dump-kernels", cfg.dump_kernels, "Also write PREFIX.kernels.csv");
  auto* dm = analyze->add_flag("--demean", cfg.demean, "Subtract the mean (default for files)");
  analyze->add_flag("--no-demean", cfg.no_demean, "Keep the mean of file inputs")->excludes(dm);
  analyze->add_flag("--prime", cfg.prime, "Start every channel at the first sample");

  auto* kernel = app.add_subcommand("kernel", "Equivalent kernels of orders 0, 1, 2 as CSV");
  cascade_options(kernel, cfg);
  kernel->add_option("--length", cfg.length, "Kernel length (default: tail mass < 1e-8)");

  auto* norms = app.add_subcommand("norms", "Continuous and discrete kernel norms per scale");
  cascade_options(norms, cfg);
  norms->add_option("--gamma", cfg.gamma, "Scale normalization power (default 1)");
  norms->add_option("--order", cfg.order, "Derivative order 1 or 2 (default both)");
  norms->add_option("--p", cfg.p_values, "Norm exponents")->capture_default_str();

  auto* scalesel = app.add_subcommand("scalesel", "Scale selection sweep on blob or edge models");
  scalesel->add_option("--c", cfg.c, "Distribution parameter c > 1")->capture_default_str();
  scalesel->add_option("--model", cfg.model, "blob or edge")->capture_default_str();
  scalesel->add_option("--sigma-refs", cfg.sigma_refs, "Model scales")->capture_default_str();
  scalesel->add_option("--gamma", cfg.gamma, "Default 3/4 for blob, 1/2 for edge");
  scalesel->add_option("--order", cfg.order, "Default 2 for blob, 1 for edge");
  scalesel->add_option("--sigma-min", cfg.sigma_min, "Finest level (default 1/8)");
  scalesel->add_option("--sigma-max", cfg.sigma_max, "Coarsest level to reach (default 64)");

  auto* stream = app.add_subcommand("stream", "Filter samples from standard input line by line");
  cascade_options(stream, cfg);
  derivative_options(stream, cfg);
  stream->add_option("--state-file", cfg.state_file, "Resume from and checkpoint to this file");
  stream->add_flag("--prime", cfg.prime, "Start every channel at the first sample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (analyze->parsed()) cli::cmd_analyze(cfg, out, err);
    if (kernel->parsed()) cli::cmd_kernel(cfg, out, err);
    if (norms->parsed()) cli::cmd_norms(cfg, out, err);
    if (scalesel->parsed()) cli::cmd_scalesel(cfg, out, err);
    if (stream->parsed()) cli::cmd_stream(cfg, in, out, err);
    out.flush();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace tcw
