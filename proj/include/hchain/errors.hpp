#pragma once

#include <stdexcept>
#include <string>

namespace hchain {

/// Rejected inputs: bad indices, malformed ranges, structural preconditions.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Numerical failures: unstable chains, lost positive definiteness, no convergence.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File-system failures while writing results.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hchain
