#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gspace {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input (out-of-range vertex, bad file, bad flag value).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but violates an invariant (self-loop, duplicate
/// edge, asymmetric matrix, mismatched lengths).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The operation is undefined for this graph, e.g. a disconnected graph.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Graph is larger than an exact algorithm is allowed to handle.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Iterative numeric method failed (iteration limit, non-finite loss).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling ran out of attempts.
class SamplingError : public Error {
 public:
  SamplingError(const std::string& what, std::size_t attempts)
      : Error(what), attempts_(attempts) {}
  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

/// Experiment configuration problem (unknown id, missing seed, bad config file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Output file cannot be written, or would be overwritten without --force.
class OutputError : public Error {
 public:
  using Error::Error;
};

}  // namespace gspace
