#pragma once

#include <stdexcept>
#include <string>

namespace seifert {

/// Base error carrying a short machine-readable code and the offending field.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string field, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), field_(std::move(field)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string code_;
  std::string field_;
};

/// Invalid user input: bad descriptor, violated precondition on data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A series or computation requested outside its convergent regime.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& field, const std::string& message)
      : Error("convergence", field, message) {}
};

/// Algebraic precondition failure inside the torsion calculus (non-exact
/// sequence, invalid homology basis, shape mismatch).
class AlgebraError : public Error {
 public:
  AlgebraError(std::string code, const std::string& message)
      : Error(std::move(code), "", message) {}
};

}  // namespace seifert
