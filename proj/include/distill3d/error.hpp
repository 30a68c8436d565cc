// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace distill3d {

/// Base error for all failures raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Geometrically degenerate input (coincident eye/target, parallel up, ...).
class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

/// Array shape or image size mismatch between operands.
class ShapeMismatchError : public Error {
 public:
  explicit ShapeMismatchError(const std::string& msg) : Error(msg) {}
};

/// PLY parsing failures, one kind per distinct failure mode.
class PlyError : public Error {
 public:
  enum class Kind { MalformedHeader, UnsupportedProperty, TruncatedBody };
  PlyError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// File I/O failures (open, read, write, format).
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Run configuration problems (missing file, unknown key, bad value).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A required upstream artifact (checkpoint) is missing.
class MissingArtifactError : public Error {
 public:
  explicit MissingArtifactError(const std::string& msg) : Error(msg) {}
};

/// Training diverged (non-finite loss or gradient).
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

}  // namespace distill3d
