#pragma once

#include <ostream>

#include "catlab/arithmetic.hpp"

namespace catlab {

// Runs the cross-module invariant batteries: exact arithmetic identities,
// unitarity / Egorov / representation checks, closed-form versus dense
// traces, projector structure, window-sum identities, variance route
// agreement and the character-sum bounds. Returns the number of failed
// checks. full = true extends the character scan to N <= 199 and widens the
// prime grids.
int run_selftest(const ToralAutomorphism& A, bool full, std::ostream& log);

}  // namespace catlab
