#ifndef RELMONAD_NORMALIZE_HPP
#define RELMONAD_NORMALIZE_HPP

#include "relmonad/prog.hpp"

namespace relmonad {

// Rewrites to right-nested bind normal form using the monad laws:
// bind(bind(c, f), g) => bind(c, x. bind(f(x), g)) and
// bind(ret(v), f) => f(v). Choice branches are normalized recursively;
// continuations are normalized lazily when applied. Denotation-preserving.
Prog normalize(const Prog& p);

}  // namespace relmonad

#endif  // RELMONAD_NORMALIZE_HPP
