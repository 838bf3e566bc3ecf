#ifndef NBB_ERRORS_HPP
#define NBB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nbb {

/// Malformed descriptor text or an invariant violation in a parsed descriptor.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An embedded coordinate that is inside the bounding box but not a fractal cell.
struct NotInFractal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A coordinate outside its domain (embedded box or compact rectangle).
struct OutOfDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integer overflow or a memory-cap violation.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nbb

#endif
