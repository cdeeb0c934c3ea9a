#include <algorithm>
#include <memory>
#include <set>

#include "relmonad/casestudies/kmp.hpp"

namespace relmonad::kmp {

namespace {

using C = std::shared_ptr<const KmpContext>;

std::string alphabet_of(const KmpContext& c) {
  std::set<char> cs(c.patn.begin(), c.patn.end());
  cs.insert(c.text.begin(), c.text.end());
  cs.insert(c.fill);
  return std::string(cs.begin(), cs.end());
}

CheckReport merge_family(CheckReport agg, CheckReport one, std::string where) {
  agg.states_checked += one.states_checked;
  agg.complete = agg.complete && one.complete;
  if (agg.verdict == Verdict::Counterexample) return agg;
  if (one.verdict == Verdict::Counterexample) {
    agg.verdict = Verdict::Counterexample;
    agg.witness = one.witness;
    agg.note = std::move(where);
  } else if (one.verdict == Verdict::Inconclusive &&
             agg.verdict == Verdict::Holds) {
    agg.verdict = Verdict::Inconclusive;
  }
  return agg;
}

CheckReport fact_report(bool ok, std::string witness_note = "") {
  if (ok) return CheckReport::make_holds(1);
  return CheckReport::refuted({Value::unit(), Value(false), Value::unit()}, 1,
                              std::move(witness_note));
}

// next[k] in [0, k] for every k with jrange(k).
bool next_in_range(const KmpContext& c) {
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(c.next.size()); ++k) {
    const auto nk = c.next[static_cast<size_t>(k)];
    if (nk < 0 || nk > k) return false;
  }
  return true;
}

}  // namespace

Pred kmp_static_pre(const KmpContext& c) {
  auto cc = std::make_shared<const KmpContext>(c);
  return Pred::atom(
      "patn <> nil /\\ patn.len = next.len /\\ prefix_func(next)",
      [cc](const Value&) {
        return cc->plen() > 0 &&
               cc->next.size() == cc->patn.size() && prefix_func(*cc);
      });
}

PostCond kmp_end_post(const KmpContext& c) {
  auto cc = std::make_shared<const KmpContext>(c);
  return PostCond::atom(
      "r",
      "r = by_break(i) => first_occur(i) | r = by_continue(_) => "
      "no_occur(text.len)",
      [cc](const Value& r, const Value&) {
        if (is_break(r)) return first_occur(*cc, cob_payload(r).as_int());
        if (is_continue(r)) return no_occur(*cc, cc->tlen());
        return false;
      });
}

// ===================================================== stage 1: essential

std::vector<LeafRecord> kmp_stage1(const KmpContext& c, const EvalCtx& ctx) {
  std::vector<LeafRecord> out;
  const FiniteDomain unit_dom = FiniteDomain::unit_only();
  const std::string alpha = alphabet_of(c);
  const std::int64_t pl = c.plen(), tl = c.tlen();
  auto cc = std::make_shared<const KmpContext>(c);

  auto add = [&out](std::string group, std::string label, CheckReport rep) {
    out.push_back({std::move(group), std::move(label), rep.verdict,
                   rep.witness, rep.note});
  };
  auto pure_pred = [](std::string label, bool v) {
    return Pred::constant(std::move(label), v);
  };
  auto check_at_unit = [&](Pred pre, Prog prog, PostCond post) {
    return check_triple({std::move(pre), std::move(prog), std::move(post)},
                        unit_dom, ctx);
  };

  // ---- Group 1: range.
  add("G1", "patn <> nil /\\ patn.len = next.len",
      fact_report(pl > 0 && c.next.size() == c.patn.size()));
  {
    std::string note;
    bool ok = prefix_func(c);
    if (!ok) {
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(c.next.size());
           ++i)
        if (!proper_presuffix(c, c.next[static_cast<size_t>(i)], i + 1) ||
            !presuffix_bound(c, c.next[static_cast<size_t>(i)], i + 1)) {
          note = "next[" + std::to_string(i) + "] = " +
                 std::to_string(c.next[static_cast<size_t>(i)]) +
                 " violates prefix_func";
          break;
        }
    }
    add("G1", "prefix_func(next)", fact_report(ok, note));
  }
  add("G1", "patn <> nil /\\ patn.len = next.len -> jrange(0)",
      fact_report(!(pl > 0 && c.next.size() == c.patn.size()) || jrange(c, 0)));
  add("G1", "prefix_func(next) -> (forall k: jrange(k), next[k] in [0, k])",
      fact_report(!prefix_func(c) || next_in_range(c)));

  {  // {jrange(j) /\ nextrange} x <- inner_body(ch, j);; continue_case {jrange}
    CheckReport agg = CheckReport::make_holds(0);
    for (char ch : alpha)
      for (std::int64_t j = 0; j <= pl; ++j) {
        Pred pre = pure_pred("jrange(j) /\\ (forall k: jrange(k), next[k] in "
                             "[0, k])",
                             jrange(c, j) && next_in_range(c));
        Prog prog = mbind(inner_body(c, ch, j),
                          [](const Value& x) { return continue_case(x); });
        PostCond post =
            PostCond::atom("j'", "jrange(j')", [cc](const Value& r,
                                                    const Value&) {
              return jrange(*cc, r.as_int());
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "ch=" + std::string(1, ch) +
                               " j=" + std::to_string(j));
      }
    add("G1",
        "{jrange(j) /\\ nextrange} x <- inner_body(ch, j);; continue_case(x) "
        "{jrange(j')}",
        agg);
  }
  {  // {jrange(j)} inner_body;; break_case {j' in [0, patn.len]}
    CheckReport agg = CheckReport::make_holds(0);
    for (char ch : alpha)
      for (std::int64_t j = 0; j <= pl; ++j) {
        Pred pre = pure_pred("jrange(j)", jrange(c, j));
        Prog prog = mbind(inner_body(c, ch, j),
                          [](const Value& x) { return break_case(x); });
        PostCond post = PostCond::atom(
            "j'", "j' in [0, patn.len]", [pl](const Value& r, const Value&) {
              return 0 <= r.as_int() && r.as_int() <= pl;
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "ch=" + std::string(1, ch) +
                               " j=" + std::to_string(j));
      }
    add("G1",
        "{jrange(j)} x <- inner_body(ch, j);; break_case(x) {j' in [0, "
        "patn.len]}",
        agg);
  }
  {  // {j' in [0, patn.len]} assume(j' < patn.len);; ret(j') {jrange}
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t j2 = 0; j2 <= pl; ++j2) {
      Pred pre = pure_pred("j' in [0, patn.len]", 0 <= j2 && j2 <= pl);
      Prog prog = mbind(assume_pure("j' < patn.len", j2 < pl),
                        [j2](const Value&) { return ret(Value(j2), "j'"); });
      PostCond post = PostCond::atom(
          "j''", "jrange(j'')",
          [cc](const Value& r, const Value&) { return jrange(*cc, r.as_int()); });
      agg = merge_family(agg, check_at_unit(pre, prog, post),
                         "j'=" + std::to_string(j2));
    }
    add("G1", "{j' in [0, patn.len]} assume(j' < patn.len);; ret(j') "
              "{jrange(j'')}",
        agg);
  }

  // ---- Group 2: partial match.
  add("G2", "partial_match(0, 0)", fact_report(partial_match(c, 0, 0)));
  {  // continue branch preserves pm(i, .)
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        Pred pre = pure_pred(
            "next.len <= patn.len /\\ prefix_func(next) /\\ jrange(j) /\\ "
            "partial_match(i, j)",
            static_cast<std::int64_t>(c.next.size()) <= pl && prefix_func(c) &&
                jrange(c, j) && partial_match(c, i, j));
        Prog prog =
            mbind(assume_pure("j <> 0", j != 0), [cc, j](const Value&) {
              return ret(Value(nth_nat(cc->next, j - 1, 0)), "next[j-1]");
            });
        PostCond post = PostCond::atom(
            "j'", "partial_match(i, j')", [cc, i](const Value& r, const Value&) {
              return partial_match(*cc, i, r.as_int());
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G2",
        "{pre /\\ jrange(j) /\\ partial_match(i, j)} assume(j <> 0);; "
        "ret(next[j-1]) {partial_match(i, j')}",
        agg);
  }
  {  // break, matching char: pm extends to i+1
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        Pred pre = pure_pred(
            "next.len <= patn.len /\\ i in [0, text.len) /\\ jrange(j) /\\ "
            "partial_match(i, j)",
            static_cast<std::int64_t>(c.next.size()) <= pl && 0 <= i && i < tl &&
                jrange(c, j) && partial_match(c, i, j));
        Prog prog = mbind(
            assume_pure("text[i] = patn[j]",
                        nth_char(c.text, i, c.fill) ==
                            nth_char(c.patn, j, c.fill)),
            [j](const Value&) { return ret(Value(j + 1), "j+1"); });
        PostCond post = PostCond::atom(
            "j'", "partial_match(i+1, j')",
            [cc, i](const Value& r, const Value&) {
              return partial_match(*cc, i + 1, r.as_int());
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G2",
        "{pre /\\ jrange(j) /\\ partial_match(i, j)} assume(text[i] = "
        "patn[j]);; ret(j+1) {partial_match(i+1, j')}",
        agg);
  }
  {  // break at j = 0: pm(i+1, 0) unconditionally
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        Pred pre = pure_pred("true", true);
        Prog prog = mbind(assume_pure("j = 0", j == 0),
                          [](const Value&) { return ret(Value(0), "0"); });
        PostCond post = PostCond::atom(
            "j'", "partial_match(i+1, j')",
            [cc, i](const Value& r, const Value&) {
              return partial_match(*cc, i + 1, r.as_int());
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G2", "{} assume(j = 0);; ret(0) {partial_match(i+1, j')}", agg);
  }

  // ---- Group 3: partial bound.
  add("G3", "partial_bound(0, 0)", fact_report(partial_bound(c, 0, 0)));
  {  // entry implication into the inner loop
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        bool hyp = static_cast<std::int64_t>(c.next.size()) <= pl && 0 <= i &&
                   i < tl && partial_match(c, i, j) && partial_bound(c, i, j);
        bool ok = !hyp || presuffix_inv(c, i, j);
        agg = merge_family(agg, fact_report(ok),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G3",
        "next.len <= patn.len /\\ i in [0, text.len) /\\ partial_match(i, j) "
        "/\\ partial_bound(i, j) -> presuffix_inv(i, j)",
        agg);
  }
  {  // continue branch preserves presuffix_inv
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        Pred pre = pure_pred(
            "next.len <= patn.len /\\ prefix_func(next) /\\ jrange(j) /\\ "
            "presuffix_inv(i, j) /\\ text[i] <> patn[j]",
            static_cast<std::int64_t>(c.next.size()) <= pl && prefix_func(c) &&
                jrange(c, j) && presuffix_inv(c, i, j) &&
                nth_char(c.text, i, c.fill) != nth_char(c.patn, j, c.fill));
        Prog prog =
            mbind(assume_pure("j <> 0", j != 0), [cc, j](const Value&) {
              return ret(Value(nth_nat(cc->next, j - 1, 0)), "next[j-1]");
            });
        PostCond post = PostCond::atom(
            "j'", "presuffix_inv(i, j')",
            [cc, i](const Value& r, const Value&) {
              return presuffix_inv(*cc, i, r.as_int());
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G3",
        "{pre /\\ presuffix_inv(i, j) /\\ text[i] <> patn[j]} assume(j <> "
        "0);; ret(next[j-1]) {presuffix_inv(i, j')}",
        agg);
  }
  {  // break, matching char: partial_bound(i+1, j+1)
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        Pred pre = pure_pred(
            "next.len <= patn.len /\\ jrange(j) /\\ presuffix_inv(i, j)",
            static_cast<std::int64_t>(c.next.size()) <= pl && jrange(c, j) &&
                presuffix_inv(c, i, j));
        Prog prog = mbind(
            assume_pure("text[i] = patn[j]",
                        nth_char(c.text, i, c.fill) ==
                            nth_char(c.patn, j, c.fill)),
            [j](const Value&) { return ret(Value(j + 1), "j+1"); });
        PostCond post = PostCond::atom(
            "j'", "partial_bound(i+1, j')",
            [cc, i](const Value& r, const Value&) {
              return partial_bound(*cc, i + 1, r.as_int());
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G3",
        "{pre /\\ jrange(j) /\\ presuffix_inv(i, j)} assume(text[i] = "
        "patn[j]);; ret(j+1) {partial_bound(i+1, j')}",
        agg);
  }
  {  // break at j = 0: partial_bound(i+1, 0)
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        Pred pre = pure_pred(
            "text[i] <> patn[j] /\\ presuffix_inv(i, j)",
            nth_char(c.text, i, c.fill) != nth_char(c.patn, j, c.fill) &&
                presuffix_inv(c, i, j));
        Prog prog = mbind(assume_pure("j = 0", j == 0),
                          [](const Value&) { return ret(Value(0), "0"); });
        PostCond post = PostCond::atom(
            "j'", "partial_bound(i+1, j')",
            [cc, i](const Value& r, const Value&) {
              return partial_bound(*cc, i + 1, r.as_int());
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G3",
        "{text[i] <> patn[j] /\\ presuffix_inv(i, j)} assume(j = 0);; ret(0) "
        "{partial_bound(i+1, j')}",
        agg);
  }

  // ---- Group 4: post loop.
  add("G4", "no_occur(0)", fact_report(no_occur(c, 0)));
  {  // no_occur is preserved across an iteration
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j2 = 0; j2 <= pl; ++j2) {
        bool hyp = 0 <= i && i < tl && jrange(c, j2) &&
                   partial_bound(c, i + 1, j2) && no_occur(c, i);
        bool ok = !hyp || no_occur(c, i + 1);
        agg = merge_family(agg, fact_report(ok),
                           "i=" + std::to_string(i) +
                               " j'=" + std::to_string(j2));
      }
    add("G4",
        "i in [0, text.len) /\\ jrange(j') /\\ partial_bound(i+1, j') /\\ "
        "no_occur(i) -> no_occur(i+1)",
        agg);
  }
  {  // break with a full match: the no_occur part of first_occur
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j2 = 0; j2 <= pl; ++j2) {
        Pred pre = pure_pred("no_occur(i)", no_occur(c, i));
        const std::int64_t pos = (i + 1 >= pl) ? (i + 1 - pl) : 0;
        Prog prog = mbind(assume_pure("j' = patn.len", j2 == pl),
                          [pos](const Value&) {
                            return ret(Value(pos), "i - patn.len + 1");
                          });
        PostCond post = PostCond::atom(
            "r", "no_occur(r + patn.len - 1)",
            [cc](const Value& r, const Value&) {
              return no_occur(*cc, r.as_int() + cc->plen() - 1);
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) +
                               " j'=" + std::to_string(j2));
      }
    add("G4",
        "{no_occur(i)} assume(j' = patn.len);; ret(i - patn.len + 1) "
        "{no_occur(r + patn.len - 1)}",
        agg);
  }
  {  // break with a full match: the occurrence itself
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j2 = 0; j2 <= pl; ++j2) {
        Pred pre =
            pure_pred("partial_match(i+1, j')", partial_match(c, i + 1, j2));
        const std::int64_t pos = (i + 1 >= pl) ? (i + 1 - pl) : 0;
        Prog prog = mbind(assume_pure("j' = patn.len", j2 == pl),
                          [pos](const Value&) {
                            return ret(Value(pos), "i - patn.len + 1");
                          });
        PostCond post = PostCond::atom(
            "r", "text[r..r+patn.len] = patn",
            [cc](const Value& r, const Value&) {
              auto t = segment(cc->text, r.as_int(), r.as_int() + cc->plen());
              return t && *t == cc->patn;
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) +
                               " j'=" + std::to_string(j2));
      }
    add("G4",
        "{partial_match(i+1, j')} assume(j' = patn.len);; ret(i - patn.len + "
        "1) {text[r..r+patn.len] = patn}",
        agg);
  }
  // ---- combined triples: the merged per-block claims and the inner loop.
  {
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        const char ch = nth_char(c.text, i, c.fill);
        Pred pre = pure_pred(
            "next.len <= patn.len /\\ prefix_func(next) /\\ nextrange /\\ "
            "jrange(j) /\\ partial_match(i, j) /\\ presuffix_inv(i, j)",
            static_cast<std::int64_t>(c.next.size()) <= pl && prefix_func(c) &&
                next_in_range(c) && jrange(c, j) && partial_match(c, i, j) &&
                presuffix_inv(c, i, j));
        Prog prog = mbind(inner_body(c, ch, j),
                          [](const Value& x) { return continue_case(x); });
        PostCond post = PostCond::atom(
            "j'",
            "jrange(j') /\\ partial_match(i, j') /\\ presuffix_inv(i, j')",
            [cc, i](const Value& r, const Value&) {
              const auto j2 = r.as_int();
              return jrange(*cc, j2) && partial_match(*cc, i, j2) &&
                     presuffix_inv(*cc, i, j2);
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G1+G2+G3",
        "combined: {pre /\\ jrange(j) /\\ partial_match(i, j) /\\ "
        "presuffix_inv(i, j)} x <- inner_body(text[i], j);; continue_case(x) "
        "{jrange /\\ partial_match(i, j') /\\ presuffix_inv(i, j')}",
        agg);
  }
  {
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i)
      for (std::int64_t j = 0; j <= pl; ++j) {
        const char ch = nth_char(c.text, i, c.fill);
        Pred pre = pure_pred(
            "next.len <= patn.len /\\ prefix_func(next) /\\ i in [0, "
            "text.len) /\\ jrange(j) /\\ partial_match(i, j) /\\ "
            "presuffix_inv(i, j)",
            static_cast<std::int64_t>(c.next.size()) <= pl && prefix_func(c) &&
                0 <= i && i < tl && jrange(c, j) && partial_match(c, i, j) &&
                presuffix_inv(c, i, j));
        Prog prog = mbind(inner_body(c, ch, j),
                          [](const Value& x) { return break_case(x); });
        PostCond post = PostCond::atom(
            "j'",
            "j' in [0, patn.len] /\\ partial_match(i+1, j') /\\ "
            "partial_bound(i+1, j')",
            [cc, i, pl](const Value& r, const Value&) {
              const auto j2 = r.as_int();
              return 0 <= j2 && j2 <= pl && partial_match(*cc, i + 1, j2) &&
                     partial_bound(*cc, i + 1, j2);
            });
        agg = merge_family(agg, check_at_unit(pre, prog, post),
                           "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    add("G1+G2+G3",
        "combined: {pre /\\ i in [0, text.len) /\\ jrange(j) /\\ "
        "partial_match(i, j) /\\ presuffix_inv(i, j)} x <- "
        "inner_body(text[i], j);; break_case(x) {j' in [0, patn.len] /\\ "
        "partial_match(i+1, j') /\\ partial_bound(i+1, j')}",
        agg);
  }
  {  // the inner-loop triple, via the repeat-break rule itself
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i < tl; ++i) {
      const char ch = nth_char(c.text, i, c.fill);
      KmpContext ctx_copy = c;
      PredFamily P("inner_inv", [cc, i](const Value& jv) {
        return Pred::atom("inner_inv(j)", [cc, i, jv](const Value&) {
          const auto j = jv.as_int();
          return static_cast<std::int64_t>(cc->next.size()) <= cc->plen() &&
                 prefix_func(*cc) && next_in_range(*cc) && 0 <= i &&
                 i < cc->tlen() && jrange(*cc, j) && partial_match(*cc, i, j) &&
                 presuffix_inv(*cc, i, j) && no_occur(*cc, i);
        });
      });
      PostCond Q = PostCond::atom(
          "j'",
          "j' in [0, patn.len] /\\ partial_match(i+1, j') /\\ "
          "partial_bound(i+1, j') /\\ no_occur(i)",
          [cc, i](const Value& r, const Value&) {
            const auto j2 = r.as_int();
            return 0 <= j2 && j2 <= cc->plen() &&
                   partial_match(*cc, i + 1, j2) &&
                   partial_bound(*cc, i + 1, j2) && no_occur(*cc, i);
          });
      auto body = inner_body_fn(ctx_copy, ch);
      agg = merge_family(
          agg,
          repeat_break_rule_check(body, P, Q,
                                  FiniteDomain::int_range(0, pl),
                                  unit_dom, ctx),
          "i=" + std::to_string(i));
    }
    add("G1+G2+G3+G4",
        "inner loop (repeat-break rule): {inner_inv(j)} inner_loop(text[i], "
        "j) {j' in [0, patn.len] /\\ partial_match(i+1, j') /\\ "
        "partial_bound(i+1, j') /\\ no_occur(i)}",
        agg);
  }

  {  // loop exit at i = text.len
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t i = 0; i <= tl; ++i) {
      bool hyp = no_occur(c, i) && i >= tl;
      bool ok = !hyp || no_occur(c, tl);
      agg = merge_family(agg, fact_report(ok), "i=" + std::to_string(i));
    }
    add("G4", "no_occur(i) /\\ i >= text.len -> no_occur(text.len)", agg);
  }

  return out;
}


// ================================================= stage 2: mechanized

namespace {

// Everything the script closes over, copied by value into the family
// closures (they outlive the construction frames).
struct Script {
  C c;
  EvalCtx ctx;
  FiniteDomain unit_dom;
  Pred static_pre;
  PostCond end_post;
  PredFamily outer_inv;    // indexed by the pair (i, j)
  FiniteDomain arg_dom;    // (i, j) pairs
  FiniteDomain ret_dom;    // outer ContinueOrBreak universe
  FiniteDomain inner_cob;  // inner ContinueOrBreak universe
  FiniteDomain j_dom;      // inner loop arguments

  std::int64_t pl() const { return c->plen(); }
  std::int64_t tl() const { return c->tlen(); }
};

// Proof of {pre} (assume g ;; ret v) {post} via Assume + Ret + Conseq; the
// Conseq implication carries the branch's logical content.
ProofPtr guarded_ret_proof(const Script& s, const Pred& pre,
                           const Prog& branch, const PostCond& post,
                           ProofMeta meta) {
  const auto* b = branch->get_if<BindP>();
  if (!b) throw SchemaMismatchError("kmp-script", "branch is not assume;;ret");
  FiniteDomain unit_dom = s.unit_dom;
  ProofPtr left = rule_assume(pre, b->first);
  return rule_bind(
      left, unit_dom,
      [unit_dom, post, meta](const Value& u, const Prog& goal,
                             const PostCond& mid) -> ProofPtr {
        const auto* r = goal->get_if<RetP>();
        if (!r)
          throw SchemaMismatchError("kmp-script",
                                    "guarded branch tail is not ret");
        return rule_conseq(imply(mid.at(u), post.at(r->value), unit_dom),
                           rule_ret(post, r->value, goal), std::nullopt, meta);
      },
      branch, meta);
}

// {pre} inner_body {post}: the body is
// choice(eq ;; break, (neq ;; choice(j0 ;; break, jne ;; continue))).
ProofPtr inner_body_proof(const Script& s, const Pred& pre, const Prog& body,
                          const PostCond& post, const std::string& group,
                          const std::string& what) {
  const auto* top = body->get_if<ChoiceP>();
  if (!top) throw SchemaMismatchError("kmp-script", "inner body shape");
  const auto* neq_arm = top->right->get_if<BindP>();
  if (!neq_arm) throw SchemaMismatchError("kmp-script", "inner body shape");

  ProofPtr eq = guarded_ret_proof(s, pre, top->left, post,
                                  {group, what + ", text[i] = patn[j]"});

  const Script sc = s;
  std::string g = group, w = what;
  ProofPtr neq = rule_bind(
      rule_assume(pre, neq_arm->first), s.unit_dom,
      [sc, post, g, w](const Value& u, const Prog& goal,
                       const PostCond& mid) -> ProofPtr {
        const auto* cases = goal->get_if<ChoiceP>();
        if (!cases)
          throw SchemaMismatchError("kmp-script", "inner body case shape");
        ProofPtr j0 = guarded_ret_proof(sc, mid.at(u), cases->left, post,
                                        {g, w + ", j = 0"});
        ProofPtr jne = guarded_ret_proof(sc, mid.at(u), cases->right, post,
                                         {g, w + ", j <> 0"});
        return rule_choice(j0, jne, goal);
      },
      top->right, {group, what + ", text[i] <> patn[j]"});

  return rule_choice(eq, neq, body);
}

// The RepeatBreak node for the inner loop of one fix child (i fixed).
ProofPtr inner_loop_node(const Script& s, std::int64_t i,
                         const Prog& inner_rec, const PredFamily& pin,
                         const PostCond& qin) {
  const C cc = s.c;
  const char ch = nth_char(cc->text, i, cc->fill);
  std::function<Prog(const Value&)> body = inner_body_fn(*cc, ch);

  // Continue-side midcondition, split so the Conj rule merges the range
  // group with the match/presuffix groups, as in the natural argument.
  PostCond mc_range = PostCond::atom(
      "x", "by_continue p => jrange(p)", [cc](const Value& x, const Value&) {
        return !is_continue(x) || jrange(*cc, cob_payload(x).as_int());
      });
  PostCond mc_match = PostCond::atom(
      "x",
      "by_continue p => partial_match(i, p) /\\ presuffix_inv(i, p) /\\ "
      "no_occur(i) (framed)",
      [pin](const Value& x, const Value& st) {
        if (!is_continue(x)) return true;
        return pin.at(cob_payload(x)).test(st);
      });
  PostCond mid_break = PostCond::atom(
      "x",
      "by_break b => b in [0, patn.len] /\\ partial_match(i+1, b) /\\ "
      "partial_bound(i+1, b) /\\ no_occur(i)",
      [cc, i](const Value& x, const Value&) {
        if (!is_break(x)) return true;
        const auto b = cob_payload(x).as_int();
        return 0 <= b && b <= cc->plen() && partial_match(*cc, i + 1, b) &&
               partial_bound(*cc, i + 1, b) && no_occur(*cc, i);
      });

  const Script sc = s;
  GoalFamily cont_children =
      [sc, mc_range, mc_match, pin](const Value& a, const Prog& premise,
                                    const PostCond& target) -> ProofPtr {
    const auto* bp = premise->get_if<BindP>();
    if (!bp) throw SchemaMismatchError("kmp-script", "continue premise shape");
    Pred pre = pin.at(a);
    ProofPtr range_part = inner_body_proof(sc, pre, bp->first, mc_range, "G1",
                                           "inner continue keeps jrange");
    ProofPtr match_part =
        inner_body_proof(sc, pre, bp->first, mc_match, "G2+G3",
                         "inner continue keeps partial_match/presuffix_inv");
    ProofPtr left = rule_conj(range_part, match_part,
                              {"G1+G2+G3", "merge inner-body groups"});
    const Script inner = sc;
    return rule_bind(
        left, sc.inner_cob,
        [inner, target](const Value& x, const Prog& goal,
                        const PostCond& mid) -> ProofPtr {
          return make_leaf({mid.at(x), goal, target}, inner.unit_dom,
                           inner.ctx, {"G1+G2+G3", "continue_case dispatch"});
        },
        premise, {"G1+G2+G3", "inner body ;; continue_case"});
  };

  GoalFamily brk_children =
      [sc, mid_break, pin](const Value& a, const Prog& premise,
                           const PostCond& target) -> ProofPtr {
    const auto* bp = premise->get_if<BindP>();
    if (!bp) throw SchemaMismatchError("kmp-script", "break premise shape");
    Pred pre = pin.at(a);
    ProofPtr left =
        inner_body_proof(sc, pre, bp->first, mid_break, "G2+G3+G4",
                         "inner break establishes the bound facts");
    const Script inner = sc;
    return rule_bind(
        left, sc.inner_cob,
        [inner, target](const Value& x, const Prog& goal,
                        const PostCond& mid) -> ProofPtr {
          return make_leaf({mid.at(x), goal, target}, inner.unit_dom,
                           inner.ctx, {"G2+G3+G4", "break_case dispatch"});
        },
        premise, {"G2+G3+G4", "inner body ;; break_case"});
  };

  return rule_repeat_break(inner_rec, body, pin, qin, s.j_dom, cont_children,
                           brk_children,
                           {"compose", "inner loop (repeat-break rule)"});
}

// One premise proof of the outer fix rule: {I(i,j)} riterF(specW)(i,j) {Q}.
ProofPtr fix_child(const Script& s, const Value& arg, const Prog& premise) {
  const C cc = s.c;
  const std::int64_t i = arg.first().as_int();
  const std::int64_t j = arg.second().as_int();
  Pred inv = s.outer_inv.at(arg);

  const auto* top = premise->get_if<ChoiceP>();
  if (!top) throw SchemaMismatchError("kmp-script", "fix premise shape");

  // Loop-exit branch: assume'(i >= text.len);; ret(by_continue acc).
  ProofPtr done = guarded_ret_proof(
      s, inv, top->left, s.end_post,
      {"G4", "loop exit: no_occur(text.len) from no_occur(i), i = text.len"});

  // Iteration branch: assume'(i < text.len);; (match_body ;; outer case).
  const auto* itb = top->right->get_if<BindP>();
  if (!itb) throw SchemaMismatchError("kmp-script", "iterate branch shape");

  // Inner invariant for this i; Qin threads no_occur(i) through the loop.
  PredFamily pin(
      "inner_inv",
      [cc, i, s_static = s.static_pre](const Value& jv) {
        return Pred::atom(
            "inner_inv(j)", [cc, i, s_static, jv](const Value& st) {
              const std::int64_t jn = jv.as_int();
              return s_static.test(st) && 0 <= i && i < cc->tlen() &&
                     jrange(*cc, jn) && partial_match(*cc, i, jn) &&
                     presuffix_inv(*cc, i, jn) && no_occur(*cc, i);
            });
      });
  PostCond qin = PostCond::atom(
      "j'",
      "j' in [0, patn.len] /\\ partial_match(i+1, j') /\\ partial_bound(i+1, "
      "j') /\\ no_occur(i)",
      [cc, i](const Value& r, const Value&) {
        const auto j2 = r.as_int();
        return 0 <= j2 && j2 <= cc->plen() && partial_match(*cc, i + 1, j2) &&
               partial_bound(*cc, i + 1, j2) && no_occur(*cc, i);
      });
  PostCond m_post = PostCond::atom(
      "x",
      "by_break b => first_occur(b) | by_continue p => outer_inv(i+1, p)",
      [cc, i, oi = s.outer_inv](const Value& x, const Value& st) {
        if (is_break(x)) return first_occur(*cc, cob_payload(x).as_int());
        if (is_continue(x))
          return oi.at(Value::pair(Value(i + 1), cob_payload(x))).test(st);
        return false;
      });

  const Script sc = s;
  ProofPtr left1 = rule_assume(inv, itb->first);
  ProofPtr iterate = rule_bind(
      left1, s.unit_dom,
      [sc, i, j, pin, qin, m_post](const Value& u, const Prog& goal1,
                                   const PostCond& mid1) -> ProofPtr {
        // goal1 = bind(match_body, outer-case dispatch)
        const auto* mb_bind = goal1->get_if<BindP>();
        if (!mb_bind)
          throw SchemaMismatchError("kmp-script", "iterate tail shape");
        const auto* mb = mb_bind->first->get_if<BindP>();
        if (!mb) throw SchemaMismatchError("kmp-script", "match body shape");

        ProofPtr inner = inner_loop_node(sc, i, mb->first, pin, qin);
        // Entry into the inner loop: partial_bound gives presuffix_inv.
        ProofPtr entry = rule_conseq(
            imply(mid1.at(u), pin.at(Value(j)), sc.unit_dom), inner,
            std::nullopt,
            {"G3", "loop entry: partial_match /\\ partial_bound -> "
                   "presuffix_inv"});

        const Script in2 = sc;
        ProofPtr mb_proof = rule_bind(
            entry, FiniteDomain::int_range(0, sc.pl()),
            [in2, m_post](const Value& j2, const Prog& guards,
                          const PostCond& qmid) -> ProofPtr {
              const auto* g = guards->get_if<ChoiceP>();
              if (!g)
                throw SchemaMismatchError("kmp-script", "match guards shape");
              ProofPtr br = guarded_ret_proof(
                  in2, qmid.at(j2), g->left, m_post,
                  {"G4", "full match breaks with the first occurrence"});
              ProofPtr ct = guarded_ret_proof(
                  in2, qmid.at(j2), g->right, m_post,
                  {"G1+G4", "outer continue re-establishes the invariant "
                            "(no_occur via jrange(j'))"});
              return rule_choice(br, ct, guards);
            },
            mb_bind->first, {"compose", "match body"});

        const Script in3 = sc;
        return rule_bind(
            mb_proof, sc.ret_dom,
            [in3](const Value& x, const Prog& oc_goal,
                  const PostCond& mmid) -> ProofPtr {
              return make_leaf({mmid.at(x), oc_goal, in3.end_post},
                               in3.unit_dom, in3.ctx,
                               {"compose", "outer case dispatch / loop "
                                           "hypothesis"});
            },
            goal1, {"compose", "match body ;; outer case"});
      },
      top->right, {"compose", "iteration branch"});

  return rule_choice(done, iterate, premise);
}

}  // namespace

ProofPtr kmp_proof_script(const KmpContext& c, const EvalCtx& ctx) {
  Script s{std::make_shared<const KmpContext>(c),
           ctx,
           FiniteDomain::unit_only(),
           kmp_static_pre(c),
           kmp_end_post(c),
           PredFamily(),
           FiniteDomain(),
           FiniteDomain(),
           FiniteDomain(),
           FiniteDomain()};
  const C cc = s.c;
  const std::int64_t pl = s.pl(), tl = s.tl();

  s.outer_inv = PredFamily("outer_inv", [cc, sp = s.static_pre](
                                            const Value& a) {
    return Pred::atom("outer_inv(i, j)", [cc, sp, a](const Value& st) {
      const std::int64_t i = a.first().as_int();
      const std::int64_t j = a.second().as_int();
      return sp.test(st) && 0 <= i && i <= cc->tlen() && jrange(*cc, j) &&
             partial_match(*cc, i, j) && partial_bound(*cc, i, j) &&
             no_occur(*cc, i);
    });
  });
  s.arg_dom = FiniteDomain::product(FiniteDomain::int_range(0, tl),
                                    FiniteDomain::int_range(0, pl), "args");
  s.ret_dom = cob_domain(FiniteDomain::int_range(0, pl),
                         FiniteDomain::int_range(0, tl));
  s.inner_cob = cob_domain(FiniteDomain::int_range(0, pl),
                           FiniteDomain::int_range(0, pl + 1));
  s.j_dom = FiniteDomain::int_range(0, pl);

  Prog loop = match_loop(c);
  const Script sc = s;
  ProofPtr fix_node = rule_fix(
      loop, s.outer_inv, PostFamily::constant(s.end_post), s.arg_dom,
      s.ret_dom, s.unit_dom,
      [sc](const Value& a, const Prog& premise, const PostCond&) {
        return fix_child(sc, a, premise);
      },
      ctx, {"compose", "match loop (fix rule)"});

  return rule_conseq(
      imply(s.static_pre, s.outer_inv.at(Value::pair(Value(0), Value(0))),
            s.unit_dom),
      fix_node, std::nullopt,
      {"compose",
       "entry: precondition establishes the loop invariant at (0, 0)"});
}

}  // namespace relmonad::kmp
