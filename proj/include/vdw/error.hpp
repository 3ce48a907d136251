#pragma once

#include <stdexcept>
#include <string>

namespace vdw {

// Argument outside the domain of an operation (negative frequency, atom
// below the surface, nonpositive separation, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Requested regime guard violated (retarded/nonretarded closed forms used
// outside the region where they are asymptotically valid).
class RegimeError : public DomainError {
public:
  using DomainError::DomainError;
};

// Internal consistency failure, e.g. a root that should be bracketed is not.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace vdw
