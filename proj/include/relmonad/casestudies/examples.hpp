#ifndef RELMONAD_CASESTUDIES_EXAMPLES_HPP
#define RELMONAD_CASESTUDIES_EXAMPLES_HPP

#include "relmonad/fixpoint.hpp"
#include "relmonad/prog.hpp"

namespace relmonad::examples {

// Absolute value by guarded choice (unit state).
Prog compute_abs(std::int64_t z);

// An arbitrary x in [0, hi] that is not a product of two factors > 1.
// Reproduces the source predicate verbatim: 0 and 1 are admitted.
Prog any_prime(std::int64_t hi);

// Fibonacci via the least fixed point.
Prog fibonacci(std::int64_t n);

// Collatz-style loop (guarded parity split under x > 1).
Prog hailstone_body(std::int64_t x);
Prog hailstone(std::int64_t x);

// Variant with disjoint top-level guards (the odd guard excludes x = 1
// instead of an enclosing x > 1 assumption). Same outcomes for x >= 1;
// this is the form the VC generator demo runs on.
Prog hailstone_body_disjoint(std::int64_t x);

}  // namespace relmonad::examples

#endif  // RELMONAD_CASESTUDIES_EXAMPLES_HPP
