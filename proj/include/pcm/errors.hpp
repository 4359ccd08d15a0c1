#pragma once

#include <stdexcept>
#include <string>

namespace pcm {

// Malformed or inconsistent user input (config, CSV, scenario masks).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A model parameter outside the range the math is defined for.
class ParameterError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical routine failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Every sub-space of an hour is infeasible.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(int hour, const std::string& what)
        : std::runtime_error(what), hour_(hour) {}

    int hour() const noexcept { return hour_; }

private:
    int hour_;
};

// A request that would exceed a configured size limit.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace pcm
