#ifndef RELMONAD_CASESTUDIES_KMP_HPP
#define RELMONAD_CASESTUDIES_KMP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relmonad/fixpoint.hpp"
#include "relmonad/proof.hpp"

namespace relmonad::kmp {

// The match procedure's ambient data: pattern, text, shift table, and the
// default character for out-of-range reads (nth-with-default convention).
struct KmpContext {
  std::string patn;
  std::string text;
  std::vector<std::int64_t> next;
  char fill = 'a';

  std::int64_t plen() const { return static_cast<std::int64_t>(patn.size()); }
  std::int64_t tlen() const { return static_cast<std::int64_t>(text.size()); }
};

char nth_char(const std::string& xs, std::int64_t i, char dflt);
std::int64_t nth_nat(const std::vector<std::int64_t>& xs, std::int64_t i,
                     std::int64_t dflt);

// Length-strict segment xs[lo..hi) (half-open, 0-indexed): engaged only
// when 0 <= lo <= hi <= |xs|. Predicates treat out-of-range segments as
// failing their equality clauses.
std::optional<std::string> segment(const std::string& xs, std::int64_t lo,
                                   std::int64_t hi);

// The ten predicates over a KmpContext.
bool jrange(const KmpContext& c, std::int64_t j);
bool partial_match(const KmpContext& c, std::int64_t i, std::int64_t j);
bool presuffix(const KmpContext& c, std::int64_t a, std::int64_t b);
bool proper_presuffix(const KmpContext& c, std::int64_t a, std::int64_t b);
bool presuffix_bound(const KmpContext& c, std::int64_t a, std::int64_t b);
bool prefix_func(const KmpContext& c);
bool no_occur(const KmpContext& c, std::int64_t i);
bool first_occur(const KmpContext& c, std::int64_t i);
bool partial_bound(const KmpContext& c, std::int64_t i, std::int64_t j);
bool presuffix_inv(const KmpContext& c, std::int64_t i, std::int64_t j);

// Longest proper presuffix lengths by brute force over candidate lengths;
// the result satisfies prefix_func. Throws EmptyPatternError.
std::vector<std::int64_t> build_next_oracle(const std::string& patn);

// The match programs (set monad: unit state).
Prog inner_body(const KmpContext& c, char ch, std::int64_t j);
std::function<Prog(const Value&)> inner_body_fn(const KmpContext& c, char ch);
Prog inner_loop(const KmpContext& c, char ch, std::int64_t j);
Prog match_body(const KmpContext& c, std::int64_t i, std::int64_t j);
Prog match_loop(const KmpContext& c);

// Stage 1 of the two-stage proof: the per-group basic-block triples and
// implications of the natural argument, each checked by enumeration.
std::vector<LeafRecord> kmp_stage1(const KmpContext& c, const EvalCtx& ctx);

// Stage 2: the mechanized composition. Returns the proof tree whose
// composition yields the end-to-end triple over match_loop.
ProofPtr kmp_proof_script(const KmpContext& c, const EvalCtx& ctx);

// The end-to-end claim's parts, exposed for cross-checking.
Pred kmp_static_pre(const KmpContext& c);
PostCond kmp_end_post(const KmpContext& c);

}  // namespace relmonad::kmp

#endif  // RELMONAD_CASESTUDIES_KMP_HPP
