#pragma once

#include <stdexcept>
#include <string>

namespace softgait {

// Bad user-supplied data: malformed files, invalid states, dimension
// mismatches. CLI maps this to exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured cap would be exceeded (state-space size, circuit count).
// CLI maps this to exit code 2.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace softgait
