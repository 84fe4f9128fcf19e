#pragma once

#include <stdexcept>
#include <string>

namespace qpj {

// Bad arguments or configuration (CLI exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematically undefined request, e.g. log|p| of the zero polynomial.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Model violates an invariant (non-Hermitian v, zero c, dimension mismatch).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A B-kind cocycle was evaluated where its denominator c-value vanishes.
class SingularPhaseError : public std::runtime_error {
 public:
  SingularPhaseError(const std::string& what, long site)
      : std::runtime_error(what), site_(site) {}
  long site() const { return site_; }

 private:
  long site_;
};

// Iterative estimate failed to meet its tolerance; carries the last two estimates.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}
  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

// Model file syntax error.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace qpj
