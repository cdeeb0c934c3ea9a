#include "relmonad/casestudies/examples.hpp"

namespace relmonad::examples {

Prog compute_abs(std::int64_t z) {
  return choice(
      mbind(assume_pure("z >= 0", z >= 0),
            [z](const Value&) { return ret(Value(z), "z"); }),
      mbind(assume_pure("z < 0", z < 0),
            [z](const Value&) { return ret(Value(-z), "-z"); }));
}

Prog any_prime(std::int64_t hi) {
  return mbind(any(FiniteDomain::int_range(0, hi)), [](const Value& xv) {
    const std::int64_t x = xv.as_int();
    bool composite = false;
    for (std::int64_t m = 2; m <= x && !composite; ++m)
      for (std::int64_t n = 2; m * n <= x; ++n)
        if (m * n == x) {
          composite = true;
          break;
        }
    return mbind(
        assume_pure("~ exists m n, m > 1 /\\ n > 1 /\\ x = m * n", !composite),
        [xv](const Value&) { return ret(xv, "x"); });
  });
}

Prog fibonacci(std::int64_t n) {
  RecBody f = [](const CallHandle& w, const Value& nv) -> Prog {
    const std::int64_t k = nv.as_int();
    return choice(
        mbind(assume_pure("n <= 1", k <= 1),
              [nv](const Value&) { return ret(nv, "n"); }),
        mbind(assume_pure("n > 1", k > 1), [k, wc = w](const Value&) {
          return mbind(wc(Value(k - 1)), [k, wc](const Value& x) {
            return mbind(wc(Value(k - 2)), [x](const Value& y) {
              return ret(Value(x.as_int() + y.as_int()), "x + y");
            });
          });
        }));
  };
  return lfix("fibonacci", std::move(f), Value(n));
}

Prog hailstone_body(std::int64_t x) {
  return choice(
      mbind(assume_pure("x <= 1", x <= 1),
            [x](const Value&) { return break_with(Value(x), "x"); }),
      mbind(assume_pure("x > 1", x > 1), [x](const Value&) {
        return choice(
            mbind(assume_pure("(exists k, x = 2*k)", x % 2 == 0),
                  [x](const Value&) {
                    return continue_with(Value(x / 2), "x/2");
                  }),
            mbind(assume_pure("(exists k, x = 2*k+1)", x % 2 != 0),
                  [x](const Value&) {
                    return continue_with(Value(3 * x + 1), "3*x+1");
                  }));
      }));
}

Prog hailstone(std::int64_t x) {
  auto loop = repeat_break("hailstone", [](const Value& a) {
    return hailstone_body(a.as_int());
  });
  return loop(Value(x));
}

Prog hailstone_body_disjoint(std::int64_t x) {
  return choice(
      mbind(assume_pure("x <= 1", x <= 1),
            [x](const Value&) { return break_with(Value(x), "x"); }),
      choice(mbind(assume_pure("(exists k, x = 2*k)", x % 2 == 0),
                   [x](const Value&) {
                     return continue_with(Value(x / 2), "x/2");
                   }),
             mbind(assume_pure("(exists k, k <> 0 /\\ x = 2*k+1)",
                               x % 2 != 0 && x != 1),
                   [x](const Value&) {
                     return continue_with(Value(3 * x + 1), "3*x+1");
                   })));
}

}  // namespace relmonad::examples
