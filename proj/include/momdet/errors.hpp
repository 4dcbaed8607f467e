#pragma once

#include <stdexcept>
#include <string>

namespace momdet {

// Argument outside the mathematical domain of a function (x <= 0 for K0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid configuration or criterion parameter (bad window, a outside (0,1], ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computed object violates a mathematical invariant it must satisfy
// (e.g. a moment sequence breaking Lyapunov's inequality).
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, int index) : std::runtime_error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

}  // namespace momdet
