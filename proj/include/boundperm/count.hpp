#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

namespace boundperm {

/// Exact arbitrary-precision count. Every engine reports through this type.
using Count = mpz_class;

inline std::string to_string(const Count& c) { return c.get_str(); }

}  // namespace boundperm
