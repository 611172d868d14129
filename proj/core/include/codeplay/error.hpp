#pragma once

#include <stdexcept>
#include <string>

namespace codeplay {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration: unknown game name, invalid run settings, unreadable files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A file or directory could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace codeplay
