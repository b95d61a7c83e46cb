#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

// Invalid input or an out-of-domain request. The CLI maps this to exit code 1.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Convergence or numeric degeneracy on otherwise well-typed input.
// The CLI maps this to exit code 2.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace spdc
