#pragma once

#include <stdexcept>
#include <string>

namespace lepor {

// Malformed or inconsistent input data (files, line counts, tag counts).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A parameter set, grid, or configuration document that violates its invariants.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A statistic that has no value for the given data (e.g. zero variance).
class UndefinedStatistic : public std::domain_error {
 public:
  explicit UndefinedStatistic(const std::string& what) : std::domain_error(what) {}
};

}  // namespace lepor
