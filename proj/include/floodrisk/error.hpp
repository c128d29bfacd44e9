#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace floodrisk {

// Input files, schemas and configuration (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters or data outside the domain of a model (CLI exit code 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Optimizer failure; carries the best point found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> best_point)
      : std::runtime_error(what), best_point_(std::move(best_point)) {}

  const std::vector<double>& best_point() const noexcept { return best_point_; }

 private:
  std::vector<double> best_point_;
};

}  // namespace floodrisk
