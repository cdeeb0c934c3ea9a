#ifndef RELMONAD_RULESUITE_HPP
#define RELMONAD_RULESUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relmonad/proof.hpp"

namespace relmonad {

// Randomized soundness run for one Hoare rule: instances where the
// composer accepted, instances where re-checking the conclusion by
// enumeration failed (must stay zero), and generation attempts spent.
struct RuleSuiteResult {
  std::string rule;
  std::uint64_t accepted = 0;
  std::uint64_t unsound = 0;
  std::uint64_t attempts = 0;
  std::optional<Witness> witness;
};

inline const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {
      "ret",  "bind",   "choice", "assume", "any",         "update",
      "step", "conseq", "pre-ex", "conj",   "repeat-break", "fix"};
  return names;
}

// Generates random instances of the rule until `instances` compositions
// are accepted (or an attempt cap is hit), re-checking each accepted
// conclusion with check_triple.
RuleSuiteResult run_rule_suite(const std::string& rule,
                               std::uint64_t instances, std::uint64_t seed);

std::vector<RuleSuiteResult> run_all_rule_suites(std::uint64_t instances,
                                                 std::uint64_t seed);

}  // namespace relmonad

#endif  // RELMONAD_RULESUITE_HPP
