#include "nlmc/fdm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "nlmc/errors.hpp"
#include "nlmc/time_walk.hpp"

namespace nlmc {

int Field::time_index(double t) const {
  const double n_real = t / k;
  const int n = static_cast<int>(std::lround(n_real));
  if (n < 0 || n > N || std::fabs(n_real - n) > 1e-6)
    throw config_error("Field::time_index: t is not a grid time");
  return n;
}

void solve_tridiagonal_constant(double diag, double off, std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  if (n == 0) return;
  std::vector<double> c(n);
  c[0] = off / diag;
  rhs[0] /= diag;
  for (std::size_t i = 1; i < n; ++i) {
    const double denom = diag - off * c[i - 1];
    c[i] = off / denom;
    rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

namespace {

struct GridSetup {
  double k = 0.0;
  double h = 0.0;
  std::vector<double> x;  // grid points
};

GridSetup make_grid(const ProblemData& problem, int N, int M) {
  if (N < 1) throw config_error("fd solver: N must be >= 1");
  if (M < 2 || M % 2 != 0) throw config_error("fd solver: M must be an even integer >= 2");
  if (!(problem.T > 0.0)) throw config_error("fd solver: problem horizon T must be positive");
  GridSetup g;
  g.k = problem.T / static_cast<double>(N);
  g.h = 2.0 / static_cast<double>(M);
  g.x.resize(M + 1);
  for (int j = 0; j <= M; ++j) g.x[j] = static_cast<double>(j) * g.h - 1.0;
  return g;
}

long history_cells(double delta, double k) {
  const double m_real = delta / k;
  const long m = std::lround(m_real);
  if (m < 1 || std::fabs(m_real - static_cast<double>(m)) > 1e-9 * std::max(1.0, m_real)) {
    std::ostringstream msg;
    msg << "fd solver: delta/k = " << m_real << " must be a positive integer";
    throw config_error(msg.str());
  }
  return m;
}

// sum_{i=1}^{m} w[i] * rows[n-i][1..M-1], accumulated over a fixed 4-way split
// of the i-range so the floating point result is independent of thread count.
void history_sum(const std::vector<double>& w, const std::vector<double>& storage, long row_n,
                 int M, std::vector<double>& out) {
  const long m = static_cast<long>(w.size()) - 1;
  const int stride = M + 1;
  const int n_chunks = 4;
  std::vector<std::vector<double>> partial(n_chunks, std::vector<double>(M - 1, 0.0));
  auto chunk_work = [&](int c) {
    const long lo = 1 + m * c / n_chunks;
    const long hi = 1 + m * (c + 1) / n_chunks;
    auto& acc = partial[c];
    for (long i = lo; i < hi; ++i) {
      const double wi = w[i];
      const double* rowp = storage.data() + (row_n - i) * stride + 1;
      for (int j = 0; j < M - 1; ++j) acc[j] += wi * rowp[j];
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw >= 2 && m >= 64) {
    std::vector<std::thread> pool;
    for (int c = 0; c < n_chunks; ++c) pool.emplace_back(chunk_work, c);
    for (auto& t : pool) t.join();
  } else {
    for (int c = 0; c < n_chunks; ++c) chunk_work(c);
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (int c = 0; c < n_chunks; ++c)
    for (int j = 0; j < M - 1; ++j) out[j] += partial[c][j];
}

}  // namespace

Field solve_nonlocal_fd(const ProblemData& problem, int N, int M) {
  if (problem.kernel.family() != KernelFamily::truncated)
    throw config_error("solve_nonlocal_fd expects a truncated kernel");
  const GridSetup g = make_grid(problem, N, M);
  const long m = history_cells(problem.kernel.delta(), g.k);
  const JumpWeights w = compute_weights(problem.kernel.alpha(), problem.kernel.delta(), g.k);

  // Rows -m..N in one block; rows <= 0 hold the historical datum.
  const int stride = M + 1;
  std::vector<double> storage(static_cast<std::size_t>(N + m + 1) * stride, 0.0);
  for (long n = -m; n <= 0; ++n) {
    double* row = storage.data() + (n + m) * stride;
    if (problem.phi) {
      const double tn = static_cast<double>(n) * g.k;
      for (int j = 1; j < M; ++j) row[j] = problem.phi(tn, g.x[j]);
    }
    row[0] = row[M] = 0.0;
  }

  const double ka = std::pow(g.k, problem.kernel.alpha());
  const double diag = w.omega[0] / ka + 2.0 / (g.h * g.h);
  const double off = -1.0 / (g.h * g.h);
  std::vector<double> rhs(M - 1), hist(M - 1);
  for (long n = 1; n <= N; ++n) {
    history_sum(w.omega, storage, n + m, M, hist);
    const double tn = static_cast<double>(n) * g.k;
    for (int j = 1; j < M; ++j)
      rhs[j - 1] = (problem.f ? problem.f(tn, g.x[j]) : 0.0) + hist[j - 1] / ka;
    solve_tridiagonal_constant(diag, off, rhs);
    double* row = storage.data() + (n + m) * stride;
    for (int j = 1; j < M; ++j) row[j] = rhs[j - 1];
    row[0] = row[M] = 0.0;
  }

  Field out;
  out.N = N;
  out.M = M;
  out.h = g.h;
  out.k = g.k;
  out.T = problem.T;
  out.values.assign(storage.begin() + m * stride, storage.end());
  return out;
}

Field solve_atomic_fd(const ProblemData& problem, int N, int M) {
  if (problem.kernel.family() != KernelFamily::atomic)
    throw config_error("solve_atomic_fd expects an atomic kernel");
  const GridSetup g = make_grid(problem, N, M);
  const long m = history_cells(problem.kernel.delta(), g.k);
  const double lambda = problem.kernel.lambda();

  const int stride = M + 1;
  std::vector<double> storage(static_cast<std::size_t>(N + m + 1) * stride, 0.0);
  for (long n = -m; n <= 0; ++n) {
    double* row = storage.data() + (n + m) * stride;
    if (problem.phi) {
      const double tn = static_cast<double>(n) * g.k;
      for (int j = 1; j < M; ++j) row[j] = problem.phi(tn, g.x[j]);
    }
    row[0] = row[M] = 0.0;
  }

  const double diag = lambda + 2.0 / (g.h * g.h);
  const double off = -1.0 / (g.h * g.h);
  std::vector<double> rhs(M - 1);
  for (long n = 1; n <= N; ++n) {
    const double tn = static_cast<double>(n) * g.k;
    const double* hist = storage.data() + (n - m + m) * stride;  // row n - delta/k
    for (int j = 1; j < M; ++j)
      rhs[j - 1] = (problem.f ? problem.f(tn, g.x[j]) : 0.0) + lambda * hist[j];
    solve_tridiagonal_constant(diag, off, rhs);
    double* row = storage.data() + (n + m) * stride;
    for (int j = 1; j < M; ++j) row[j] = rhs[j - 1];
    row[0] = row[M] = 0.0;
  }

  Field out;
  out.N = N;
  out.M = M;
  out.h = g.h;
  out.k = g.k;
  out.T = problem.T;
  out.values.assign(storage.begin() + m * stride, storage.end());
  return out;
}

std::vector<double> exact_atomic_solution(const ProblemData& problem, double t, int M) {
  if (problem.kernel.family() != KernelFamily::atomic)
    throw config_error("exact_atomic_solution expects an atomic kernel");
  if (!(t > 0.0)) throw std::domain_error("exact_atomic_solution: t must be positive");
  if (M < 2 || M % 2 != 0) throw config_error("exact_atomic_solution: M must be even and >= 2");
  const double lambda = problem.kernel.lambda();
  const double delta = problem.kernel.delta();
  const double h = 2.0 / static_cast<double>(M);
  const long n = std::max(1L, static_cast<long>(std::ceil(t / delta - 1e-12)));

  std::vector<double> x(M + 1);
  for (int j = 0; j <= M; ++j) x[j] = static_cast<double>(j) * h - 1.0;

  std::vector<double> v(M + 1, 0.0);
  if (problem.phi) {
    const double t0 = t - static_cast<double>(n) * delta;
    for (int j = 1; j < M; ++j) v[j] = problem.phi(t0, x[j]);
  }
  const double diag = lambda + 2.0 / (h * h);
  const double off = -1.0 / (h * h);
  std::vector<double> rhs(M - 1);
  for (long i = 1; i <= n; ++i) {
    const double ti = t - static_cast<double>(n - i) * delta;
    for (int j = 1; j < M; ++j)
      rhs[j - 1] = lambda * v[j] + (problem.f ? problem.f(ti, x[j]) : 0.0);
    solve_tridiagonal_constant(diag, off, rhs);
    for (int j = 1; j < M; ++j) v[j] = rhs[j - 1];
    v[0] = v[M] = 0.0;
  }
  return v;
}

}  // namespace nlmc
