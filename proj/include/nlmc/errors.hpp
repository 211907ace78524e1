#ifndef NLMC_ERRORS_HPP
#define NLMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlmc {

// Bad solver/experiment configuration (non-divisible steps, invalid grids, ...).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to reach its tolerance (quadrature, series, ...).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Operation not defined for the given variant (e.g. density of an atomic measure).
class unsupported_operation : public std::logic_error {
 public:
  explicit unsupported_operation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace nlmc

#endif  // NLMC_ERRORS_HPP
