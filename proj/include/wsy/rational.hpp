#pragma once

#include <gmpxx.h>
#include <string>

namespace wsy {

// Exact rational coefficients. All algebra in this library is over Q with
// arbitrary precision; there is no floating point anywhere.
using Rat = mpq_class;

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// Parses "p" or "p/q".
inline Rat rat_parse(const std::string& s)
{
    Rat q(s);
    q.canonicalize();
    return q;
}

} // namespace wsy
