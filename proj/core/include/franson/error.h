#pragma once

#include <stdexcept>
#include <string>

namespace franson {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or file violates a documented constraint.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Argument outside an operation's domain (zero denominators, bad bin widths).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Least-squares fit did not converge; the message carries residual diagnostics.
class FitError : public Error {
 public:
  FitError(const std::string& message, double residual_norm, int iterations)
      : Error(message), residual_norm_(residual_norm), iterations_(iterations) {}

  double residual_norm() const { return residual_norm_; }
  int iterations() const { return iterations_; }

 private:
  double residual_norm_;
  int iterations_;
};

class IoError : public Error {
 public:
  IoError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace franson
