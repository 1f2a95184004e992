#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grl {

enum class ErrorKind {
  Size,           // requested object too large
  DegenerateInput,
  Configuration,  // inconsistent options / missing setup
  Validation,     // mesh or file fails its invariants
  Input,          // argument outside the documented domain
  Domain,         // math domain violation (e.g. Z <= 0)
  Singularity,    // evaluation at a singular point
  Solver,         // iterative method did not converge
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by iterative solvers; carries the last residual norm.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : Error(ErrorKind::Solver, what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace grl
