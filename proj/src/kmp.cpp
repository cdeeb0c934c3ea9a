#include "relmonad/casestudies/kmp.hpp"

#include <algorithm>

namespace relmonad::kmp {

char nth_char(const std::string& xs, std::int64_t i, char dflt) {
  if (i < 0 || i >= static_cast<std::int64_t>(xs.size())) return dflt;
  return xs[static_cast<size_t>(i)];
}

std::int64_t nth_nat(const std::vector<std::int64_t>& xs, std::int64_t i,
                     std::int64_t dflt) {
  if (i < 0 || i >= static_cast<std::int64_t>(xs.size())) return dflt;
  return xs[static_cast<size_t>(i)];
}

std::optional<std::string> segment(const std::string& xs, std::int64_t lo,
                                   std::int64_t hi) {
  if (lo < 0 || lo > hi || hi > static_cast<std::int64_t>(xs.size()))
    return std::nullopt;
  return xs.substr(static_cast<size_t>(lo), static_cast<size_t>(hi - lo));
}

bool jrange(const KmpContext& c, std::int64_t j) {
  return 0 <= j && j < static_cast<std::int64_t>(c.next.size());
}

bool partial_match(const KmpContext& c, std::int64_t i, std::int64_t j) {
  auto p = segment(c.patn, 0, j);
  auto t = segment(c.text, i - j, i);
  return p && t && *p == *t;
}

bool presuffix(const KmpContext& c, std::int64_t a, std::int64_t b) {
  auto pa = segment(c.patn, 0, a);
  auto pb = segment(c.patn, 0, b);
  if (!pa || !pb) return false;
  const bool is_prefix = pb->compare(0, pa->size(), *pa) == 0;
  const bool is_suffix =
      pa->size() <= pb->size() &&
      pb->compare(pb->size() - pa->size(), pa->size(), *pa) == 0;
  return is_prefix && is_suffix;
}

bool proper_presuffix(const KmpContext& c, std::int64_t a, std::int64_t b) {
  return presuffix(c, a, b) && a < b;
}

bool presuffix_bound(const KmpContext& c, std::int64_t a, std::int64_t b) {
  for (std::int64_t k = 0; k <= c.plen(); ++k)
    if (proper_presuffix(c, k, b) && !presuffix(c, k, a)) return false;
  return true;
}

bool prefix_func(const KmpContext& c) {
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(c.next.size()); ++i) {
    const std::int64_t ni = c.next[static_cast<size_t>(i)];
    if (!proper_presuffix(c, ni, i + 1)) return false;
    if (!presuffix_bound(c, ni, i + 1)) return false;
  }
  return true;
}

bool no_occur(const KmpContext& c, std::int64_t i) {
  // "forall j in [0, i - patn.len]" over the integers: empty when
  // i < patn.len, so no_occur(0) is vacuous for nonempty patterns.
  for (std::int64_t j = 0; j + c.plen() <= i; ++j) {
    auto t = segment(c.text, j, j + c.plen());
    if (t && *t == c.patn) return false;
  }
  return true;
}

bool first_occur(const KmpContext& c, std::int64_t i) {
  auto t = segment(c.text, i, i + c.plen());
  return t && *t == c.patn && no_occur(c, i + c.plen() - 1);
}

bool partial_bound(const KmpContext& c, std::int64_t i, std::int64_t j) {
  // partial_match(i, z) forces z <= min(i, patn.len) under strict segments.
  for (std::int64_t z = 0; z <= std::min(i, c.plen()); ++z)
    if (partial_match(c, i, z) && z > j) return false;
  return true;
}

bool presuffix_inv(const KmpContext& c, std::int64_t i, std::int64_t j) {
  for (std::int64_t k = 1; k <= std::min(i + 1, c.plen()); ++k) {
    if (!partial_match(c, i + 1, k)) continue;
    if (!presuffix(c, k - 1, j)) return false;
    if (nth_char(c.patn, k - 1, c.fill) != nth_char(c.text, i, c.fill))
      return false;
  }
  return true;
}

std::vector<std::int64_t> build_next_oracle(const std::string& patn) {
  if (patn.empty()) throw EmptyPatternError();
  KmpContext probe{patn, "", {}, 'a'};
  std::vector<std::int64_t> next;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(patn.size()); ++i) {
    // longest proper presuffix of patn[0..i+1], by brute force over
    // candidate lengths from above
    std::int64_t best = 0;
    for (std::int64_t k = i; k >= 0; --k)
      if (presuffix(probe, k, i + 1)) {
        best = k;
        break;
      }
    next.push_back(best);
  }
  return next;
}

// --------------------------------------------------------------- programs

Prog inner_body(const KmpContext& c, char ch, std::int64_t j) {
  const char pj = nth_char(c.patn, j, c.fill);
  const std::int64_t shifted = nth_nat(c.next, j - 1, 0);
  return choice(
      mbind(assume_pure("ch = patn[j]", ch == pj),
            [j](const Value&) { return break_with(Value(j + 1), "j+1"); }),
      mbind(assume_pure("ch <> patn[j]", ch != pj), [j, shifted](const Value&) {
        return choice(
            mbind(assume_pure("j = 0", j == 0),
                  [](const Value&) { return break_with(Value(0), "0"); }),
            mbind(assume_pure("j <> 0", j != 0), [shifted](const Value&) {
              return continue_with(Value(shifted), "next[j-1]");
            }));
      }));
}

std::function<Prog(const Value&)> inner_body_fn(const KmpContext& c, char ch) {
  KmpContext ctx = c;
  return [ctx, ch](const Value& j) { return inner_body(ctx, ch, j.as_int()); };
}

Prog inner_loop(const KmpContext& c, char ch, std::int64_t j) {
  auto loop = repeat_break("inner_loop", inner_body_fn(c, ch));
  return loop(Value(j));
}

Prog match_body(const KmpContext& c, std::int64_t i, std::int64_t j) {
  const char ch = nth_char(c.text, i, c.fill);
  KmpContext ctx = c;
  return mbind(inner_loop(c, ch, j), [ctx, i](const Value& jv) {
    const std::int64_t j2 = jv.as_int();
    const std::int64_t plen = ctx.plen();
    // i - patn.len + 1 over the integers; as a truncated natural
    // subtraction it must associate as (i + 1) - patn.len, which the
    // j' = patn.len guard keeps in range (i + 1 >= patn.len).
    const std::int64_t pos = (i + 1 >= plen) ? (i + 1 - plen) : 0;
    return choice(
        mbind(assume_pure("j' = patn.len", j2 == plen),
              [pos](const Value&) {
                return break_with(Value(pos), "i - patn.len + 1");
              }),
        mbind(assume_pure("j' < patn.len", j2 < plen),
              [jv](const Value&) { return continue_with(jv, "j'"); }));
  });
}

Prog match_loop(const KmpContext& c) {
  KmpContext ctx = c;
  return range_iter_break(
      "match_loop", 0, c.tlen(),
      [ctx](std::int64_t i, const Value& acc) {
        return match_body(ctx, i, acc.as_int());
      },
      Value(0));
}

}  // namespace relmonad::kmp
