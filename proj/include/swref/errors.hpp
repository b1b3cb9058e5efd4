#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swref {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an input value was violated (negative depth, q = 0 where
/// forbidden, inadmissible profile type, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The gradually-varied-flow equation hit its critical-depth singularity.
class CriticalSingularity : public Error {
 public:
  CriticalSingularity(const std::string& what, double depth, double position)
      : Error(what), depth_(depth), position_(position) {}
  double depth() const { return depth_; }
  double position() const { return position_; }

 private:
  double depth_;
  double position_;
};

/// A backwater integration stopped part-way through the reach.
class ProfileArrested : public CriticalSingularity {
 public:
  ProfileArrested(const std::string& what, double depth, double position,
                  std::size_t cells_completed)
      : CriticalSingularity(what, depth, position),
        cells_completed_(cells_completed) {}
  std::size_t cells_completed() const { return cells_completed_; }

 private:
  std::size_t cells_completed_;
};

class DryOut : public Error {
 public:
  DryOut(const std::string& what, double position)
      : Error(what), position_(position) {}
  double position() const { return position_; }

 private:
  double position_;
};

class AmbiguousZone : public DomainError {
 public:
  using DomainError::DomainError;
};

class CompositionError : public Error {
 public:
  using Error::Error;
};

class ChokedFlow : public Error {
 public:
  ChokedFlow(const std::string& what, double position)
      : Error(what), position_(position) {}
  double position() const { return position_; }

 private:
  double position_;
};

class BranchError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Root-finder failure; carries the last residual.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class StencilError : public Error {
 public:
  using Error::Error;
};

class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, std::size_t cell, std::size_t step)
      : Error(what), cell_(cell), step_(step) {}
  std::size_t cell() const { return cell_; }
  std::size_t step() const { return step_; }

 private:
  std::size_t cell_;
  std::size_t step_;
};

class ComparisonError : public Error {
 public:
  using Error::Error;
};

/// File-system failure while reading or writing an output.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace swref
