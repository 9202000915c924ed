#pragma once

#include <stdexcept>
#include <string>

namespace aggpatch {

// Input outside an operation's domain (empty sets, t >= 1, bad atoms, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A computed quantity failed a verification threshold.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aggpatch
