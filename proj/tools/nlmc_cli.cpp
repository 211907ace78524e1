// Command line front-end: Monte Carlo and finite-difference solvers for the
// nonlocal-in-time diffusion problem, plus comparison and diagnostic tools.
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure,
// 3 comparison outside tolerance.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlmc/errors.hpp"
#include "nlmc/experiments.hpp"
#include "nlmc/time_walk.hpp"
#include "nlmc/version.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<double> times;
  long long trials = 0;
  unsigned long long seed = 0;
  bool seed_set = false;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "experiment config file");
  if (needs_config) c->required();
  cmd->add_option("--time", opts.times, "target time (repeatable, overrides config)");
  cmd->add_option("--trials", opts.trials, "Monte Carlo trials (overrides config)");
  cmd->add_option("--seed", opts.seed, "master seed (overrides config)")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
}

nlmc::ExperimentConfig load_with_overrides(const CommonOpts& opts) {
  nlmc::ExperimentConfig cfg = nlmc::load_config(opts.config_path);
  if (!opts.times.empty()) cfg.times = opts.times;
  if (opts.trials > 0) cfg.trials = opts.trials;
  if (opts.seed_set) cfg.seed = opts.seed;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo solver for nonlocal-in-time diffusion with historical data"};
  app.set_version_flag("--version", nlmc::version_string());
  app.require_subcommand(1);

  CommonOpts mc_opts, fd_opts, oracle_opts, hk_opts;
  auto* cmd_mc = app.add_subcommand("run-mc", "stochastic-representation Monte Carlo solve");
  add_common(cmd_mc, mc_opts);
  auto* cmd_fd = app.add_subcommand("run-fd", "finite-difference reference solve");
  add_common(cmd_fd, fd_opts);
  auto* cmd_oracle = app.add_subcommand("run-oracle", "exact per-slice solve (atomic kernel)");
  add_common(cmd_oracle, oracle_opts);
  auto* cmd_hk = app.add_subcommand("run-heatkernel", "heat kernel H on an (r,y) grid");
  add_common(cmd_hk, hk_opts);
  nlmc::HeatKernelGrid grid;
  cmd_hk->add_option("--hk-t", grid.t, "evaluation time t");
  cmd_hk->add_option("--hk-x", grid.x, "spatial point x");
  cmd_hk->add_option("--hk-rmin", grid.r_min, "most negative history time");
  cmd_hk->add_option("--hk-nr", grid.nr, "history grid count");
  cmd_hk->add_option("--hk-ny", grid.ny, "space grid count");

  std::string cmp_mc, cmp_ref;
  nlmc::CompareSpec spec;
  auto* cmd_cmp = app.add_subcommand("compare", "band comparison of MC against a reference");
  cmd_cmp->add_option("mc", cmp_mc, "MC csv path")->required();
  cmd_cmp->add_option("ref", cmp_ref, "reference csv path")->required();
  cmd_cmp->add_option("--tol", spec.tol_abs, "absolute tolerance of the band");
  cmd_cmp->add_option("--z", spec.z, "stderr multiplier of the band");

  double w_alpha = 0.0, w_delta = 0.0, w_k = 0.0;
  auto* cmd_w = app.add_subcommand("weights", "print the jump weights and probabilities");
  cmd_w->add_option("--alpha", w_alpha, "order in (0,1)")->required();
  cmd_w->add_option("--delta", w_delta, "kernel horizon")->required();
  cmd_w->add_option("--k", w_k, "time step (delta/k integer)")->required();

  try {
    app.parse(argc, argv);

    if (*cmd_mc) {
      for (const auto& p : nlmc::run_mc(load_with_overrides(mc_opts)))
        std::cout << p << '\n';
      return 0;
    }
    if (*cmd_fd) {
      for (const auto& p : nlmc::run_fd(load_with_overrides(fd_opts)))
        std::cout << p << '\n';
      return 0;
    }
    if (*cmd_oracle) {
      for (const auto& p : nlmc::run_oracle(load_with_overrides(oracle_opts)))
        std::cout << p << '\n';
      return 0;
    }
    if (*cmd_hk) {
      for (const auto& p : nlmc::run_heatkernel(load_with_overrides(hk_opts), grid))
        std::cout << p << '\n';
      return 0;
    }
    if (*cmd_cmp) {
      const nlmc::CompareReport rep = nlmc::compare_csv(cmp_mc, cmp_ref, spec);
      std::printf("max_abs_diff %.6g rows_outside %ld -> %s\n", rep.max_abs_diff,
                  rep.rows_outside, rep.pass ? "pass" : "FAIL");
      for (long i : rep.offenders) std::printf("  row %ld outside band\n", i);
      return rep.pass ? 0 : 3;
    }
    if (*cmd_w) {
      const nlmc::JumpWeights w = nlmc::compute_weights(w_alpha, w_delta, w_k);
      std::printf("m,%d\nomega_0,%.17g\n", w.m, w.omega[0]);
      for (int j = 1; j <= w.m; ++j)
        std::printf("omega_%d,%.17g,p_%d,%.17g\n", j, w.omega[j], j, w.prob[j - 1]);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const nlmc::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const nlmc::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
