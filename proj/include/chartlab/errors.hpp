#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chartlab {

// Base of all chartlab errors. category() is a stable machine-parsable
// token; the CLI prints "error[<category>]: <message>" on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}
  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& msg) : Error("invalid-argument", msg) {}
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& msg) : Error("dimension", msg) {}
};

class DegenerateGeometryError : public Error {
 public:
  explicit DegenerateGeometryError(const std::string& msg) : Error("degenerate-geometry", msg) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& msg) : Error("degenerate-input", msg) {}
};

class ZeroNormError : public Error {
 public:
  explicit ZeroNormError(const std::string& msg) : Error("zero-norm", msg) {}
};

class DisconnectedGraphError : public Error {
 public:
  DisconnectedGraphError(const std::string& msg, std::size_t components)
      : Error("disconnected-graph", msg), components_(components) {}
  std::size_t components() const noexcept { return components_; }

 private:
  std::size_t components_;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, std::size_t iteration)
      : Error("divergence", msg), iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

class TemporalDiversityError : public Error {
 public:
  explicit TemporalDiversityError(const std::string& msg) : Error("temporal-diversity", msg) {}
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, std::size_t line)
      : Error("config", msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ConfigError(const std::string& msg) : Error("config", msg), line_(0) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// I/O error family (dataset-io).
class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public IoError {
 public:
  explicit FormatError(const std::string& msg) : IoError("format", msg) {}
};

class UnsupportedVersionError : public IoError {
 public:
  explicit UnsupportedVersionError(const std::string& msg) : IoError("version", msg) {}
};

class CorruptionError : public IoError {
 public:
  CorruptionError(const std::string& msg, std::size_t byte_offset)
      : IoError("corruption", msg + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace chartlab
