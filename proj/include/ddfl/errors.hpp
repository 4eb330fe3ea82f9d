#pragma once

#include <stdexcept>
#include <string>

namespace ddfl {

// Bad scenario/config input. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The excitation data failed the rank gate; carries the achieved rank so the
// caller can report how far off the batch was. Exit code 3.
class PeViolation : public std::runtime_error {
 public:
  PeViolation(int achieved, int required, const std::string& context = "")
      : std::runtime_error("persistency of excitation violated: rank " +
                           std::to_string(achieved) + " of required " +
                           std::to_string(required) +
                           (context.empty() ? "" : " (" + context + ")")),
        achieved_rank(achieved),
        required_rank(required) {}
  int achieved_rank;
  int required_rank;
};

// Plant state left the representable range during integration. Exit code 4.
class IntegrationDiverged : public std::runtime_error {
 public:
  explicit IntegrationDiverged(double t, const std::string& context = "")
      : std::runtime_error("integration diverged at t = " + std::to_string(t) +
                           " s" + (context.empty() ? "" : " (" + context + ")")),
        t_fail(t) {}
  double t_fail;
};

// A model callback returned a non-finite value at a finite state.
class ModelEvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem trouble while emitting outputs. Exit code 5.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ddfl
