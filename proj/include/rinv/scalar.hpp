#pragma once

namespace rinv {

// Uniform scalar-to-double hook used by the generic polynomial/matrix code.
// Exact scalar types add their own overload next to their definition.
inline double to_double(double x) { return x; }

}  // namespace rinv
