#ifndef IOTALOG_TRANSLATE_HPP
#define IOTALOG_TRANSLATE_HPP

// Translations between the abstraction/term-operator language and the
// binary quantifier language, together with the first order Russellian
// expansion of a binary description.
//
// tau maps L_DELTA (or L_TLL) into L_IOTA clause by clause:
//   (a)    atomic without iota terms: unchanged
//   (b)    forall/exists: homophonic
//   (c)    binary connectives: homophonic
//   (d.i)  iota x A = t  and  t = iota x A  become  iotaq x [A', x=t];
//          two descriptions nest: iotaq x [A', iotaq y [B', x=y]]
//   (e.i)  abst x B, t (t not a description) becomes iotaq x [t=x, B']
//   (e.ii) abst x B, iota y A becomes iotaq v [A', B']
//
// upsilon maps L_IOTA into L_DELTA: clauses (a)-(c) homophonically plus
//   upsilon(iotaq x [A, B]) = abst x upsilon(B), iota x upsilon(A).
//
// tau(upsilon(f)) = f holds syntactically for every well formed L_IOTA
// formula. upsilon(tau(f)) = f does not hold in general; the pair is
// instead semantically equivalent on small models.

#include <string>
#include <vector>

#include "iotalog/kernel.hpp"
#include "iotalog/syntax.hpp"

namespace iotalog {

struct TranslationTrace {
    std::vector<std::string> clauses_used;  // application order: a, b, c, d.i, e.i, e.ii, upsilon
    // Bound variables renamed to keep the output capture free, per the
    // fixed fresh-variable enumeration.
    std::vector<std::pair<std::string, std::string>> renamed;
};

Formula tau(const Formula& f, TranslationTrace* trace = nullptr);
Formula upsilon(const Formula& f, TranslationTrace* trace = nullptr);

// iotaq x [F, G]  ->  exists x (F and forall y (F_y^x -> x=y) and G),
// associated as ((F and forall ...) and G). The fresh y is the first
// variable of the fixed enumeration that is not free in F, differs from
// x, and is free for x in F.
Formula russell_expand(const Formula& f);

// Notational bridge between iota x F = t and iotaq x [F, x=t] (and the
// mirrored t = iota x F / iotaq x [F, t=x]). Involutive on its domain.
// Requires x not free in t and t free of description terms; throws
// CheckException with kind PremiseShapeMismatch otherwise.
Formula bridge_restricted(const Formula& f);

}  // namespace iotalog

#endif  // IOTALOG_TRANSLATE_HPP
