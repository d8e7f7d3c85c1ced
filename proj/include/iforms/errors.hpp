#pragma once

#include <stdexcept>
#include <string>

namespace iforms {

// Malformed input: mismatched dimensions, mixed fields, invalid config.
// The CLI maps this to exit code 2.
struct structural_error : std::runtime_error {
    explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical fact the construction relies on failed to hold
// (e.g. the differential does not descend to a quotient).
// The CLI maps this to exit code 1.
struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace iforms
