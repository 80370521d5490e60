#pragma once

#include <stdexcept>
#include <string>

namespace zblock {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: group files, catalog manifests, bad CLI values.
struct ParseError : Error {
    using Error::Error;
};

/// A configured resource limit was hit (element cap, class-count cap,
/// field-size cap). The computation itself was well-formed.
struct CapError : Error {
    using Error::Error;
};

/// The working field is not a splitting field: some minimal polynomial
/// acquired an irreducible factor of degree > 1. Never silently extended.
struct SplittingError : Error {
    using Error::Error;
};

/// Internal consistency failure. These conditions are mathematically
/// guaranteed, so hitting one means a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

inline void check_internal(bool cond, const std::string& msg) {
    if (!cond) throw InternalError("internal consistency failure: " + msg);
}

} // namespace zblock
