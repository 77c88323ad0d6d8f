#pragma once

#include <stdexcept>
#include <string>

namespace risalloc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-contract argument values.
struct InvalidInput : Error {
    using Error::Error;
};

/// Root bracketing failed: no sign change on the given interval.
struct BracketError : Error {
    using Error::Error;
};

/// Matrix is identically zero where a nonzero one is required.
struct DegenerateMatrix : Error {
    using Error::Error;
};

/// Constraint set of an allocation problem is empty.
struct Infeasible : Error {
    using Error::Error;
};

/// Channel estimation alone does not fit into the slot.
struct OverheadExceedsSlot : Error {
    using Error::Error;
};

/// Exhaustive search would exceed the enumeration cap.
struct InstanceTooLarge : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace risalloc
