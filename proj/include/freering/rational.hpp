#pragma once

#include <gmpxx.h>

#include <string>

namespace freering {

/// Exact rational coefficient, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace freering
