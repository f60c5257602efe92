#pragma once

#include <gmpxx.h>

#include <string>

#include "twisthom/errors.hpp"

namespace thh {

// Exact rational scalar. mpq_class keeps gcd(num, den) = 1 and den > 0
// after every canonicalized operation.
using Q = mpq_class;

// Parses the grammar "-?[0-9]+(/[1-9][0-9]*)?".
Q rat_parse(const std::string& s);

// Canonical serialization: "p" for integers, "p/q" otherwise.
std::string rat_str(const Q& x);

} // namespace thh
