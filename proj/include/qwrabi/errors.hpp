// errors.hpp — Exception taxonomy; maps onto the CLI exit codes

#pragma once

#include <stdexcept>
#include <string>

namespace qwrabi {

// Invalid user input or precondition violation (CLI exit code 1).
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure: non-convergence, eigensolver breakdown (CLI exit code 2).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// The three finite-difference field points do not share a ground branch;
// the derivative is undefined at the crossing.
class branch_crossed_error : public numeric_error {
public:
    explicit branch_crossed_error(const std::string& what) : numeric_error(what) {}
};

// Bisection bracket does not straddle a sign change of the gap.
class no_sign_change_error : public input_error {
public:
    explicit no_sign_change_error(const std::string& what) : input_error(what) {}
};

} // namespace qwrabi
