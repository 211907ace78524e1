#ifndef NLMC_EXPERIMENTS_HPP
#define NLMC_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "nlmc/config.hpp"

namespace nlmc {

// Monte Carlo solve: one CSV per target time with columns
// (x, mean, stderr, n_trials, seed) over the interior grid points, plus a
// provenance sidecar. Returns the written paths.
std::vector<std::string> run_mc(const ExperimentConfig& cfg);

// Deterministic finite-difference reference; columns (x, value).
std::vector<std::string> run_fd(const ExperimentConfig& cfg);

// Per-slice elliptic oracle for the atomic kernel; columns (x, value).
std::vector<std::string> run_oracle(const ExperimentConfig& cfg);

// Heat kernel H_{t,x}(r,y) on a rectangular grid; columns (r, y, H).
struct HeatKernelGrid {
  double t = 0.1;
  double x = 0.0;
  double r_min = -1.0;
  int nr = 10;
  int ny = 11;
};
std::vector<std::string> run_heatkernel(const ExperimentConfig& cfg, const HeatKernelGrid& grid);

struct CompareSpec {
  double tol_abs = 0.02;
  double z = 4.0;
};

struct CompareReport {
  double max_abs_diff = 0.0;
  long rows_outside = 0;
  bool pass = false;
  std::vector<long> offenders;  // row indices in the MC file
};

// Pointwise |mean - ref| <= tol_abs + z*stderr, with the reference linearly
// interpolated onto the MC grid.
CompareReport compare_csv(const std::string& mc_path, const std::string& ref_path,
                          const CompareSpec& spec);

// Stream-independent sub-seed for (target time index, grid index) pairs.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace nlmc

#endif  // NLMC_EXPERIMENTS_HPP
