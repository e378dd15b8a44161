#pragma once

#include <stdexcept>

namespace ncis {

/// Bad input: mismatched alphabets, malformed compositions, out-of-range primes.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configured size or memory bound would be exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A modular result could not be lifted to a verified exact result.
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ncis
