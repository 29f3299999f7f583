#pragma once

#include <stdexcept>
#include <string>

namespace nhdyn {

/// Coefficient profile queried outside its tabulated range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The group element left the cell where the Gauss factorization exists.
class SingularDecomposition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// phi or theta_zero reached zero along the constraint flow.
class SingularFlow : public std::runtime_error {
 public:
  SingularFlow(const std::string& what, double t)
      : std::runtime_error("singular-flow at t=" + std::to_string(t) + ": " + what),
        time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Adaptive step size collapsed below the representable resolution.
class StiffnessError : public std::runtime_error {
 public:
  StiffnessError(const std::string& what, double t)
      : std::runtime_error("stiffness at t=" + std::to_string(t) + ": " + what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class NoStationaryPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probability mass reached the edge of a truncated Fock space.
class TruncationContaminated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nhdyn
