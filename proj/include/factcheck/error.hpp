#pragma once

#include <stdexcept>
#include <string>

namespace factcheck {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (literal where an IRI is
// required, mismatched dimensions, blank-node subject, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Network failure, timeout or a transient server condition. Retriable.
class TransportError : public Error {
 public:
  using Error::Error;
};

// The peer answered, but not with something we understand. Not retriable.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Reading an input file failed.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Invalid user configuration (flags, config files, thresholds).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Replay mode found no recorded response for a prompt.
class NoFixtureError : public Error {
 public:
  NoFixtureError(std::string hash, const std::string& path)
      : Error("no fixture for prompt hash " + hash + " (expected " + path + ")"),
        hash_(std::move(hash)) {}

  const std::string& hash() const { return hash_; }

 private:
  std::string hash_;
};

// A curated benchmark file is malformed.
class BenchmarkFormatError : public Error {
 public:
  BenchmarkFormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace factcheck
