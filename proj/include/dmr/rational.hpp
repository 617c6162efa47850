#pragma once

#include <gmpxx.h>
#include <string>

namespace dmr {

/// Arbitrary-precision rational, canonical form (gcd 1, positive denominator)
/// maintained by GMP.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q);

} // namespace dmr
