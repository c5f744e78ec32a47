#pragma once

#include <stdexcept>
#include <string>

namespace spde {

// Invalid parameters, preconditions, malformed configs. CLI exit code 2.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical routine could not reach its tolerance within budget. The
// message carries the achieved-error diagnostics. CLI exit code 3.
class numerics_error : public std::runtime_error {
public:
    explicit numerics_error(const std::string& what) : std::runtime_error(what) {}
};

// File system failures. CLI exit code 4.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spde
