#pragma once

#include <stdexcept>
#include <string>

namespace gsketch {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A CodebookSpec failed validation (zero dimension, unknown scheme).
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

// Two vectors or matrices with incompatible shapes were combined.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// A label set that must be duplicate-free contained a repeat.
class DuplicateLabelError : public Error {
 public:
  using Error::Error;
};

// Two sketches with different codebook fingerprints were combined.
class IncompatibleCodebookError : public Error {
 public:
  using Error::Error;
};

// A generator or experiment config cannot be satisfied as stated.
class InfeasibleConfigError : public Error {
 public:
  using Error::Error;
};

// Why a serialized input was rejected.
enum class FormatFault {
  bad_magic,
  unsupported_version,
  checksum_mismatch,
  truncated,
  malformed,
};

// A file or stream had valid I/O but invalid content.
class FormatError : public Error {
 public:
  FormatError(FormatFault fault, const std::string& what)
      : Error(what), fault_(fault) {}
  FormatFault fault() const { return fault_; }

 private:
  FormatFault fault_;
};

// The operating system refused a read or write.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gsketch
