#ifndef ENTIM_ERRORS_HPP
#define ENTIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace entim {

/// Invalid user-facing configuration: grid sizes, parameter ranges, file
/// contents, geometry. Mapped to exit code 1 by the CLI.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Floating-point failure (NaN/overflow) detected during a computation.
/// Mapped to exit code 2 by the CLI.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Estimator cannot be formed: too few samples, degenerate table,
/// pattern without structure.
class StatsError : public std::runtime_error {
public:
  explicit StatsError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace entim

#endif
