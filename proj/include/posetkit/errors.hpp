#ifndef POSETKIT_ERRORS_HPP
#define POSETKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace posetkit {

// All recoverable failures are exceptions rooted here, so callers can catch
// one type at the CLI boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed poset file input.
struct ParseError : Error {
    using Error::Error;
};

// Input edges (or their transitive closure) violate irreflexivity/antisymmetry.
struct CycleError : Error {
    using Error::Error;
};

// query(x, x) is never a legal oracle call.
struct SelfQuery : Error {
    SelfQuery() : Error("oracle query with x == y") {}
};

// Exhaustive extension counting asked for more elements than the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

// The oracle's answers do not admit a chain decomposition within the claimed
// width bound. Raised by sorters and by the failing variants used for
// unknown-width doubling.
struct WidthExceeded : Error {
    using Error::Error;
};

// A decomposition handed to an index build is not a partition into chains.
struct InvalidDecomposition : Error {
    using Error::Error;
};

// Weighted binary search saw probe answers violating cut monotonicity.
struct InconsistentProbe : Error {
    using Error::Error;
};

// A minimal-candidate set grew past the width bound (lying oracle or wrong w).
struct CandidateOverflow : Error {
    using Error::Error;
};

// Formula evaluated outside its stated domain.
struct DomainError : Error {
    using Error::Error;
};

// A linear extension handed to the height scanner is not consistent.
struct InvalidExtension : Error {
    using Error::Error;
};

// An adversary's own transcript disagrees with the witness it built.
struct WitnessMismatch : Error {
    using Error::Error;
};

// Internal invariant check failed; indicates a bug, not bad input.
struct InternalCheckFailure : std::logic_error {
    using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const char* what) {
    if (!ok) throw InternalCheckFailure(what);
}

} // namespace posetkit

#endif
