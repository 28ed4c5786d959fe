#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

// Invalid arguments are reported with std::invalid_argument. The types below
// cover the remaining failure modes that callers may want to tell apart.
namespace cradle {

// A state whose unnormalized weight vanished in floating point.
class DegenerateStateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Equispacing is undefined when the mean level spacing is zero.
class DegenerateSpectrumError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Root of the pseudo-wavevector equation could not be bracketed or resolved.
class NoRootError : public std::runtime_error {
public:
  NoRootError(std::size_t mode, const std::string& what)
      : std::runtime_error(what), mode_(mode) {}
  std::size_t mode() const noexcept { return mode_; }

private:
  std::size_t mode_;
};

// An operation was called on input outside the domain where its formula holds.
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Residual density-density / chemical-potential terms too large for a
// free-fermion chain. `bond` is 1-based.
class NotFreeFermionError : public std::runtime_error {
public:
  NotFreeFermionError(std::size_t bond, const std::string& what)
      : std::runtime_error(what), bond_(bond) {}
  std::size_t bond() const noexcept { return bond_; }

private:
  std::size_t bond_;
};

// A compute or memory cap was exceeded.
class TooLargeError : public std::runtime_error {
public:
  TooLargeError(std::size_t requested, std::size_t cap, const std::string& what)
      : std::runtime_error(what), requested_(requested), cap_(cap) {}
  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t requested_;
  std::size_t cap_;
};

}  // namespace cradle
