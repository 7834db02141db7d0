#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swipt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatches, non-finite values, bad senses.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A matrix required to be PSD has a significantly negative eigenvalue.
class NotPsd : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// SystemConfig / CLI configuration violates an invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Channel realization lost rank; null-space dimensions would change.
class DegenerateChannel : public Error {
 public:
  DegenerateChannel(const std::string& msg, int detected_rank)
      : Error(msg), detected_rank_(detected_rank) {}
  int detected_rank() const { return detected_rank_; }

 private:
  int detected_rank_ = -1;
};

// Optimization problem admits no feasible point. rate_shortfall()[i], when
// known, is the part of user i's rate target unreachable even with the full
// power budget on that user alone (0 if individually reachable).
class InfeasibleProblem : public Error {
 public:
  explicit InfeasibleProblem(const std::string& msg, std::vector<double> shortfall = {})
      : Error(msg), shortfall_(std::move(shortfall)) {}
  const std::vector<double>& rate_shortfall() const { return shortfall_; }

 private:
  std::vector<double> shortfall_;
};

// Numerical method did not reach its contract (tolerances, repair budget).
class SolverFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace swipt
