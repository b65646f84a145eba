// errors.hpp — error taxonomy for the spinbath library

#pragma once

#include <stdexcept>

namespace spinbath {

// An intermediate quantity violated a validity bound that user input cannot
// explain; signals an assembly bug upstream.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested tail tolerance could not be met within the hard entry cap.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An independent verification path failed to converge.
struct oracle_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace spinbath
