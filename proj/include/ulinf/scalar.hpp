#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ulinf {

using Scalar = mpq_class;

// Thrown for malformed input: bad partitions, unknown names, shape mismatches.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accepts "p/q", "p" or "-p/q". Result is canonicalized.
Scalar parse_scalar(const std::string& text);

std::string to_string(const Scalar& x);

inline int parity(int deg) { return deg & 1; }

// (-1)^e for an integer exponent
inline int sign_pow(long long e) { return (e & 1) ? -1 : 1; }

}  // namespace ulinf
