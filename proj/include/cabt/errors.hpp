#pragma once

#include <stdexcept>
#include <string>

namespace cabt {

enum class ErrorKind {
    Domain,        // argument outside the mathematical domain of an operation
    Precondition,  // instance-level requirement not met (coprimality, width coupling)
    Resource,      // request exceeds a configured simulation or enumeration cap
    Contract,      // caller-supplied callback or state broke an operation's contract
    EmptySubspace, // post-selection onto a zero-probability subspace
    Parse,         // malformed textual input
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

struct ResourceError : Error {
    explicit ResourceError(const std::string& what) : Error(ErrorKind::Resource, what) {}
};

struct ContractViolation : Error {
    explicit ContractViolation(const std::string& what) : Error(ErrorKind::Contract, what) {}
};

/// Raised when post-selection finds nothing in measurement.
struct EmptySubspaceError : Error {
    explicit EmptySubspaceError(const std::string& what) : Error(ErrorKind::EmptySubspace, what) {}
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(ErrorKind::Parse, what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace cabt
