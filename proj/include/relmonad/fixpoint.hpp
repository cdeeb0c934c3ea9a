#ifndef RELMONAD_FIXPOINT_HPP
#define RELMONAD_FIXPOINT_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "relmonad/prog.hpp"

namespace relmonad {

// ContinueOrBreak values, encoded as tagged sums.
Value by_continue(Value a);
Value by_break(Value b);
bool is_continue(const Value& v);
bool is_break(const Value& v);
const Value& cob_payload(const Value& v);
// by_continue over `continues` followed by by_break over `breaks`.
FiniteDomain cob_domain(const FiniteDomain& continues,
                        const FiniteDomain& breaks);

// Least fixed point of the iterated functional, applied to an argument.
// Alias of rec() under the classical name.
Prog lfix(std::string name, RecBody f, Value arg);

// ret(by_continue a) / ret(by_break b). `payload_label` names the payload
// for VC goal rendering.
Prog continue_with(Value a, std::string payload_label = "");
Prog break_with(Value b, std::string payload_label = "");

// Unwraps the matching variant; the other variant yields no outcomes.
Prog continue_case(const Value& x);
Prog break_case(const Value& x);

// The functional of a repeat-break loop: unfold the body, re-enter on
// by_continue, exit with the payload on by_break.
RecBody repeat_break_functional(std::function<Prog(const Value&)> body);
std::function<Prog(Value)> repeat_break(std::string name,
                                        std::function<Prog(const Value&)> body);

// Counted loop with break: i runs over [lo, hi) threading an accumulator;
// yields by_break(b) on early exit, by_continue(final acc) otherwise.
// The recursion argument is the pair (i, acc).
using RangeBody = std::function<Prog(std::int64_t i, const Value& acc)>;
RecBody range_iter_functional(std::int64_t lo, std::int64_t hi, RangeBody body);
Prog range_iter_break(std::string name, std::int64_t lo, std::int64_t hi,
                      RangeBody body, Value init);

}  // namespace relmonad

#endif  // RELMONAD_FIXPOINT_HPP
