#ifndef NLMC_CONFIG_HPP
#define NLMC_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlmc/expression.hpp"
#include "nlmc/problem.hpp"

namespace nlmc {

// Flat [section] key = value document; '#' starts a comment. Values keep their
// raw text; typed access lives on ExperimentConfig.
using IniDocument = std::map<std::string, std::map<std::string, std::string>>;

IniDocument parse_ini(const std::string& text);
IniDocument load_ini_file(const std::string& path);

struct ExperimentConfig {
  std::string problem_id;  // example-a | example-b | atomic | custom
  Kernel kernel = Kernel::truncated(0.5, 0.1);
  Expression phi_expr;  // custom problems only
  Expression f_expr;
  double T = 0.0;
  double h = 0.0;
  std::vector<double> times;
  long long trials = 0;
  std::uint64_t seed = 0;
  int fd_space_cells = 0;  // run-fd mesh
  double fd_time_step = 0.0;
  std::string out_dir = ".";
  std::string raw_text;  // canonical content for provenance hashing

  ProblemData make_problem() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

// Built-in data sets from the numerical section: (a) carries the historical
// datum exp(5t)(1+x)(1-x)^2 x with no source, (b) runs from zero data under
// the source sin(10t)(1-x)x sin(pi x), and "atomic" pairs (a)'s datum with
// the Dirac kernel.
DataFn example_a_phi();
DataFn example_b_forcing();

std::uint64_t fnv1a64(const std::string& data);

}  // namespace nlmc

#endif  // NLMC_CONFIG_HPP
