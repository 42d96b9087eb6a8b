#ifndef IOTALOG_PROOF_IO_HPP
#define IOTALOG_PROOF_IO_HPP

// Proof scripts (.ndp files):
//
//   #lang L_IOTA                          mandatory language header
//   #vars x y z v w                       declared variable identifiers
//   #sequent f1 f2 ... |- g               optional expected judgment
//   (rule ...)                            exactly one proof
//
//   proof := (assume LABEL formula)
//          | (axiom SCHEME-NAME (METAVAR value)*)
//          | (rule RULE-NAME formula
//                  [:discharge LABEL] [:eigen IDENT]
//                  [:term term+] [:template IDENT formula]
//                  proof*)
//
// Lines starting with ';' are comments anywhere in the file.

#include <optional>
#include <string>

#include "iotalog/kernel.hpp"
#include "iotalog/parse.hpp"

namespace iotalog {

struct ProofScript {
    LanguageId lang;
    VarPolicy policy;
    std::optional<Judgment> declared_sequent;
    Proof proof;
};

// Throws ParseError on malformed text; throws CheckException with kind
// UnknownRule for an unrecognized rule or axiom name, and propagates
// axiom instantiation failures.
ProofScript parse_proof_script(const std::string& text);

Proof proof_from_sexpr(const SExpr& e, const VarPolicy& policy, LanguageId lang);

}  // namespace iotalog

#endif  // IOTALOG_PROOF_IO_HPP
