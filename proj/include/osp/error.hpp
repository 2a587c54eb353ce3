#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Arguments violate an operation's precondition.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// A sensor coincides with the point it is observed from.
class DegenerateGeometry : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// Configuration values that cannot describe a valid run.
class InvalidConfig : public Error {
public:
  using Error::Error;
};

/// Malformed external input file. Carries the 1-based line number when known.
class InputError : public Error {
public:
  InputError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  explicit InputError(const std::string& what) : Error(what) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_ = 0;
};

class NoFeasibleSolution : public Error {
public:
  using Error::Error;
};

}  // namespace osp
