#ifndef NLMC_VERSION_HPP
#define NLMC_VERSION_HPP

#include <string>

namespace nlmc {

inline std::string version_string() { return "nlmc 0.1.0"; }

}  // namespace nlmc

#endif  // NLMC_VERSION_HPP
