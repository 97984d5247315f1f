#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpi {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  SyntaxError(std::size_t line, std::size_t col, std::string expected)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
              ": expected " + expected),
        line(line), col(col), expected(std::move(expected)) {}

  std::size_t line;
  std::size_t col;
  std::string expected;
};

/// A name is used at two different communication arities.
class SortError : public Error {
public:
  using Error::Error;
};

/// A term outside the confidential fragment was given where one is required.
class CpiViolation : public Error {
public:
  using Error::Error;
};

class SubstitutionDomainError : public Error {
public:
  using Error::Error;
};

class NoSuchTransition : public Error {
public:
  explicit NoSuchTransition(std::size_t step)
      : Error("no matching transition at step " + std::to_string(step)), step(step) {}

  std::size_t step;
};

class ConstructionError : public Error {
public:
  using Error::Error;
};

class WitnessNotCpi : public Error {
public:
  using Error::Error;
};

class SourceModeError : public Error {
public:
  using Error::Error;
};

class ReservedNameError : public Error {
public:
  using Error::Error;
};

} // namespace cpi
