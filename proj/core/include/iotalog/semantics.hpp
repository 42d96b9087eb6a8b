#ifndef IOTALOG_SEMANTICS_HPP
#define IOTALOG_SEMANTICS_HPP

// Finite models for negative free semantics. An atomic formula is true
// only if every term in it denotes; constants may be nondenoting and
// quantifiers range over the domain only. Description terms get the
// Russellian reading: iota x F denotes the unique domain element
// satisfying F, and is undefined otherwise. Evaluation is classical
// two-valued, which makes validity here a necessary condition for
// derivability in the intuitionist systems, not a complete semantics.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotalog/syntax.hpp"

namespace iotalog {

using Element = int;

struct Model {
    int domain_size = 0;  // elements are 0 .. domain_size-1; may be 0
    std::map<std::string, std::optional<Element>> consts;   // absent or nullopt = nondenoting
    std::map<std::string, std::set<std::vector<Element>>> preds;

    bool in_domain(Element e) const { return e >= 0 && e < domain_size; }
};

// Partial map from variables to elements.
using Assignment = std::map<std::string, Element>;

// nullopt plays the role of "undefined"; it is a value, not an error.
std::optional<Element> denote(const Model& m, const Assignment& g, const Term& t);

bool eval(const Model& m, const Assignment& g, const Formula& f);

struct Signature {
    std::map<std::string, std::size_t> preds;  // symbol -> arity
    std::set<std::string> consts;
    std::set<std::string> vars;  // free variables to assign

    void merge(const Signature& other);
};

// Collects predicate symbols (with arity), constants, and free variables.
// Throws std::invalid_argument if a predicate symbol is used at two arities.
Signature signature_of(const Formula& f);
Signature signature_of(const std::vector<Formula>& assumptions, const Formula& conclusion);

struct Sequent {
    std::vector<Formula> assumptions;
    Formula conclusion;
};

struct Countermodel {
    Model model;
    Assignment assignment;
};

struct ValidityResult {
    bool valid = false;
    std::optional<Countermodel> countermodel;  // set when !valid
    std::uint64_t steps = 0;                   // evaluation points visited
};

class ResourceBound : public std::runtime_error {
public:
    explicit ResourceBound(std::uint64_t budget)
        : std::runtime_error("model enumeration exceeded the step budget of " + std::to_string(budget)) {}
};

// Enumerates every model with |domain| <= max_size over the signature and
// every (partial) assignment of the sequent's free variables; returns the
// first point where all assumptions hold and the conclusion fails, else
// VALID. Enumeration order is fixed: domain sizes ascending, then
// constants, predicate extensions and assignments as odometers over a
// canonical encoding, so the reported countermodel is canonical.
ValidityResult valid_upto(const Sequent& seq, int max_size, const Signature& sig,
                          std::uint64_t budget = 5'000'000);
ValidityResult valid_upto(const Sequent& seq, int max_size, std::uint64_t budget = 5'000'000);

// Renders "domain: d0 d1; const c = d0; pred P = {(d0)}; var x = d0".
std::string render_countermodel(const Countermodel& cm);

}  // namespace iotalog

#endif  // IOTALOG_SEMANTICS_HPP
