#pragma once

#include <optional>

#include "diffield/ratfun.hpp"

namespace diffield {

/// f = D(rational_part) + log_part where log_part is proper with a squarefree
/// denominator. The log part is unique; it vanishes iff every residue of the
/// simple-pole remainder does, i.e. iff f has an antiderivative in Q(z).
struct HermiteDecomposition {
  RatFun rational_part;
  RatFun log_part;
};

/// Hermite reduction for f in Q(z); f may only involve variable 0 (z) of its
/// ring, derivation d/dz. Throws Unsupported otherwise.
HermiteDecomposition hermite_reduce(const RatFun& f);

/// Antiderivative of f inside Q(z) with zero constant term, or nullopt when
/// none exists (certified, independent of any degree bound).
std::optional<RatFun> rational_antiderivative(const RatFun& f);

}  // namespace diffield
