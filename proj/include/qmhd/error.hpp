#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmhd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of a function (e.g. rho <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A cell state violates rho > 0, theta > 0 or the EOS energy floor.
class NonPhysicalStateError : public Error {
 public:
  NonPhysicalStateError(const std::string& what, std::size_t cell = npos)
      : Error(what), cell_(cell) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t cell_;
};

/// Fields attached to different grids were combined.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration or scenario setup.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmhd
