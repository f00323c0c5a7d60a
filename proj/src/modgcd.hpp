#pragma once

#include "diffield/mpoly.hpp"

namespace diffield::detail {

// Monic gcd over Q by Brown's dense modular algorithm: images modulo word
// primes, evaluation/interpolation one variable at a time, Chinese remainders
// and a final trial division over Q.
MPoly modular_gcd(const MPoly& a, const MPoly& b);

}  // namespace diffield::detail
