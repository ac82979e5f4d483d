#pragma once

#include <stdexcept>
#include <string>

namespace srelight {

/// Base of every error the library throws. `exit_code()` maps the error
/// onto the CLI contract: 2 for usage/parameter problems, 3 for data errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 3; }
  virtual const char* kind() const { return "error"; }
};

/// Mismatched dimensions, empty rasters, inconsistent buffers.
class StructuralError : public Error {
 public:
  using Error::Error;
  const char* kind() const override { return "structural"; }
};

/// A value outside the domain of an operation (negative gamma input,
/// non-positive ratio, non-unit direction).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const override { return "domain"; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }
  const char* kind() const override { return "parse"; }

 private:
  int line_;
};

class EmptyMeshError : public Error {
 public:
  using Error::Error;
  const char* kind() const override { return "empty_mesh"; }
};

class ParameterError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
  const char* kind() const override { return "parameter"; }
};

class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
  const char* kind() const override { return "degenerate_geometry"; }
};

/// Ambient estimation found no covered shadow pixel.
class NoShadowPixelsError : public Error {
 public:
  using Error::Error;
  const char* kind() const override { return "no_shadow_pixels"; }
};

/// API misuse such as injecting ambient light twice.
class ContractError : public Error {
 public:
  using Error::Error;
  const char* kind() const override { return "contract"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const override { return "io"; }
};

}  // namespace srelight
