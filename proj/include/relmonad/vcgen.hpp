#ifndef RELMONAD_VCGEN_HPP
#define RELMONAD_VCGEN_HPP

#include <optional>
#include <string>
#include <vector>

#include "relmonad/hoare.hpp"

namespace relmonad {

// A residual verification condition: hypotheses (path guards, then the
// precondition) imply the goal, universally over the binders.
struct VC {
  std::vector<std::string> hypotheses;
  std::string goal;
  std::vector<std::string> binders;
  std::string render() const;
};

// A triple family indexed by named parameters over finite domains
// (a "forall x" quantifier wrapped around a concrete triple).
struct TripleFamily {
  std::vector<std::pair<std::string, FiniteDomain>> params;
  std::function<HoareTriple(const ValueList&)> make;
};

// Syntax-directed VC generation over a basic block (no rec). Walks every
// choice-path applying the forward strongest-postcondition rules; paths
// killed by mismatched case guards produce nothing; a path whose computed
// strongest postcondition structurally matches the claimed postcondition
// produces no VC. Labels come from a representative walk; when a bind
// continuation depends on the bound value the labels are representative
// while discharge stays exact. Throws UnsupportedConstructError on rec.
std::vector<VC> vc_gen(const HoareTriple& t);
std::vector<VC> vc_gen(const TripleFamily& family);

// Discharges each VC by enumeration over its binders (parameters, initial
// states, any/update/step alternatives). Reports align with vc_gen order.
std::vector<CheckReport> vc_discharge(const HoareTriple& t,
                                      const std::optional<FiniteDomain>& state_dom,
                                      const EvalCtx& ctx);
std::vector<CheckReport> vc_discharge(const TripleFamily& family,
                                      const std::optional<FiniteDomain>& state_dom,
                                      const EvalCtx& ctx);

}  // namespace relmonad

#endif  // RELMONAD_VCGEN_HPP
