#include "nlmc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlmc/csv.hpp"
#include "nlmc/errors.hpp"
#include "nlmc/fdm.hpp"
#include "nlmc/feynman_kac.hpp"
#include "nlmc/heat_kernel.hpp"
#include "nlmc/rng.hpp"

namespace nlmc {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t sm = master ^ ((a + 1) * 0x9e3779b97f4a7c15ULL) ^ ((b + 1) * 0xd1342543de82ef95ULL);
  return splitmix64(sm);
}

namespace {

std::string time_tag(double t) {
  std::ostringstream os;
  os << "T" << t;
  return os.str();
}

std::string out_path(const ExperimentConfig& cfg, const std::string& stem, double t) {
  return cfg.out_dir + "/" + stem + "_" + cfg.problem_id + "_" + time_tag(t) + ".csv";
}

std::vector<std::string> meta_notes(const ExperimentConfig& cfg, double requested_t,
                                    double snapped_t) {
  std::vector<std::string> notes;
  notes.push_back("kernel: " + cfg.kernel.describe());
  if (std::fabs(requested_t - snapped_t) > 1e-15) {
    std::ostringstream os;
    os.precision(17);
    os << "requested t " << requested_t << " snapped to grid time " << snapped_t;
    notes.push_back(os.str());
  }
  return notes;
}

}  // namespace

std::vector<std::string> run_mc(const ExperimentConfig& cfg) {
  const ProblemData problem = cfg.make_problem();
  const int M = problem.lattice.M;
  std::vector<std::string> written;
  for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
    const double t = cfg.times[ti];
    const SolutionEstimator estimator(problem, t);
    CsvTable table;
    table.header = {"x", "mean", "stderr", "n_trials", "seed"};
    for (int j = 1; j < M; ++j) {
      const std::uint64_t sub_seed = derive_seed(cfg.seed, ti, static_cast<std::uint64_t>(j));
      const McEstimate est = estimator.estimate_solution(j, cfg.trials, sub_seed);
      table.rows.push_back({problem.lattice.point(j), est.mean, est.std_error,
                            static_cast<double>(est.n_trials), static_cast<double>(est.seed)});
    }
    const std::string path = out_path(cfg, "mc", t);
    write_csv(path, table);
    write_metadata(path, hash_hex(fnv1a64(cfg.raw_text)), cfg.seed,
                   meta_notes(cfg, t, estimator.snapped_t()));
    written.push_back(path);
  }
  return written;
}

std::vector<std::string> run_fd(const ExperimentConfig& cfg) {
  const ExperimentConfig& c = cfg;
  ProblemData problem = c.make_problem();
  if (!(c.fd_time_step > 0.0) || c.fd_space_cells < 2)
    throw config_error("run-fd: [fd] k and M must be configured");
  const double n_real = problem.T / c.fd_time_step;
  const int N = static_cast<int>(std::lround(n_real));
  if (N < 1 || std::fabs(n_real - N) > 1e-9 * n_real)
    throw config_error("run-fd: T must be an integer multiple of [fd] k");
  const Field field = problem.kernel.family() == KernelFamily::atomic
                          ? solve_atomic_fd(problem, N, c.fd_space_cells)
                          : solve_nonlocal_fd(problem, N, c.fd_space_cells);
  std::vector<std::string> written;
  for (double t : c.times) {
    const int n = field.time_index(t);
    CsvTable table;
    table.header = {"x", "value"};
    for (int j = 0; j <= field.M; ++j)
      table.rows.push_back({static_cast<double>(j) * field.h - 1.0, field.at(n, j)});
    const std::string path = out_path(c, "fd", t);
    write_csv(path, table);
    write_metadata(path, hash_hex(fnv1a64(c.raw_text)), c.seed, meta_notes(c, t, t));
    written.push_back(path);
  }
  return written;
}

std::vector<std::string> run_oracle(const ExperimentConfig& cfg) {
  ProblemData problem = cfg.make_problem();
  if (problem.kernel.family() != KernelFamily::atomic)
    throw config_error("run-oracle: the exact per-slice solver needs an atomic kernel");
  const int M = cfg.fd_space_cells >= 2 ? cfg.fd_space_cells : 4000;
  std::vector<std::string> written;
  for (double t : cfg.times) {
    const std::vector<double> profile = exact_atomic_solution(problem, t, M);
    CsvTable table;
    table.header = {"x", "value"};
    const double h = 2.0 / static_cast<double>(M);
    for (int j = 0; j <= M; ++j)
      table.rows.push_back({static_cast<double>(j) * h - 1.0, profile[j]});
    const std::string path = out_path(cfg, "oracle", t);
    write_csv(path, table);
    write_metadata(path, hash_hex(fnv1a64(cfg.raw_text)), cfg.seed, meta_notes(cfg, t, t));
    written.push_back(path);
  }
  return written;
}

std::vector<std::string> run_heatkernel(const ExperimentConfig& cfg, const HeatKernelGrid& grid) {
  if (cfg.kernel.family() != KernelFamily::fractional)
    throw config_error("run-heatkernel: requires a fractional kernel");
  CsvTable table;
  table.header = {"r", "y", "H"};
  for (int i = 1; i <= grid.nr; ++i) {
    const double r = grid.r_min * static_cast<double>(i) / static_cast<double>(grid.nr);
    for (int jy = 1; jy < grid.ny - 1; ++jy) {
      const double y = -1.0 + 2.0 * static_cast<double>(jy) / static_cast<double>(grid.ny - 1);
      table.rows.push_back({r, y, heat_kernel_H(cfg.kernel, grid.t, grid.x, r, y)});
    }
  }
  const std::string path = out_path(cfg, "heatkernel", grid.t);
  write_csv(path, table);
  write_metadata(path, hash_hex(fnv1a64(cfg.raw_text)), cfg.seed, meta_notes(cfg, grid.t, grid.t));
  return {path};
}

CompareReport compare_csv(const std::string& mc_path, const std::string& ref_path,
                          const CompareSpec& spec) {
  const CsvTable mc = read_csv(mc_path);
  const CsvTable ref = read_csv(ref_path);
  const int mx = mc.column("x"), mm = mc.column("mean"), ms = mc.column("stderr");
  if (mx < 0 || mm < 0 || ms < 0)
    throw config_error("compare: MC file must have columns x, mean, stderr");
  const int rx = ref.column("x");
  int rv = ref.column("value");
  if (rv < 0) rv = ref.column("mean");
  if (rx < 0 || rv < 0) throw config_error("compare: reference file must have x and value/mean");

  std::vector<std::pair<double, double>> ref_pts;
  ref_pts.reserve(ref.rows.size());
  for (const auto& row : ref.rows) ref_pts.emplace_back(row[rx], row[rv]);
  std::sort(ref_pts.begin(), ref_pts.end());
  auto interp = [&ref_pts](double x) {
    const double lo = ref_pts.front().first, hi = ref_pts.back().first;
    if (x < lo - 1e-9 || x > hi + 1e-9)
      throw config_error("compare: MC grid point outside the reference range");
    if (x <= lo) return ref_pts.front().second;
    if (x >= hi) return ref_pts.back().second;
    auto it = std::lower_bound(ref_pts.begin(), ref_pts.end(), std::make_pair(x, -1e300));
    const auto [x1, v1] = *it;
    if (x1 == x) return v1;
    const auto [x0, v0] = *(it - 1);
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
  };

  CompareReport report;
  report.pass = true;
  for (std::size_t i = 0; i < mc.rows.size(); ++i) {
    const auto& row = mc.rows[i];
    const double diff = std::fabs(row[mm] - interp(row[mx]));
    report.max_abs_diff = std::max(report.max_abs_diff, diff);
    const double band = spec.tol_abs + spec.z * row[ms];
    if (diff > band) {
      report.pass = false;
      ++report.rows_outside;
      report.offenders.push_back(static_cast<long>(i));
    }
  }
  return report;
}

}  // namespace nlmc
