#include "relmonad/normalize.hpp"

namespace relmonad {

namespace {

Prog normalize_leaf(const Prog& p) {
  if (const auto* c = p->get_if<ChoiceP>())
    return choice(normalize(c->left), normalize(c->right));
  return p;
}

}  // namespace

Prog normalize(const Prog& p) {
  if (const auto* b = p->get_if<BindP>()) {
    if (const auto* inner = b->first->get_if<BindP>()) {
      Prog c = inner->first;
      Cont f = inner->rest;
      Cont g = b->rest;
      return normalize(mbind(std::move(c), [f, g](const Value& x) {
        return mbind(f(x), g);
      }));
    }
    if (const auto* r = b->first->get_if<RetP>())
      return normalize(b->rest(r->value));
    Cont g = b->rest;
    return mbind(normalize_leaf(b->first),
                 [g](const Value& x) { return normalize(g(x)); });
  }
  return normalize_leaf(p);
}

}  // namespace relmonad
