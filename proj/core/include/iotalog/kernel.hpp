#ifndef IOTALOG_KERNEL_HPP
#define IOTALOG_KERNEL_HPP

// Natural deduction proof trees with labelled discharge, and the checker
// that validates every inference step against a SystemSpec.
//
// Leaves are assumptions (assume LABEL formula) or axiom scheme instances
// (axiom NAME bindings). Inner nodes name a rule, state their conclusion,
// and may carry rule metadata: a discharge label, an eigenvariable, and
// for eqE the substitution template (x, A). A label discharges a class of
// formulas fixed by the rule schema; the class may be empty (vacuous
// discharge) and its members may occur any number of times.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "iotalog/systems.hpp"

namespace iotalog {

struct ProofMeta {
    std::optional<std::string> discharge;
    std::optional<std::string> eigen;
    std::vector<Term> terms;  // optional explicit instantiating terms, cross-checked
    std::optional<std::pair<std::string, Formula>> eq_template;
};

class Proof {
public:
    static Proof assume(std::string label, Formula f);
    // Conclusion is computed by instantiating the scheme; throws
    // CheckException when the bindings violate the scheme's conditions.
    static Proof axiom(AxiomId scheme, AxiomBindings bindings, LanguageId lang);
    static Proof rule(Rule r, Formula conclusion, std::vector<Proof> premises, ProofMeta meta = {});

    Rule rule_id() const;
    const Formula& conclusion() const;
    const std::vector<Proof>& premises() const;
    const ProofMeta& meta() const;
    // Assume leaves only.
    const std::string& label() const;
    // Axiom leaves only.
    AxiomId scheme() const;
    const AxiomBindings& bindings() const;

    const void* node_id() const;  // stable identity for closure maps

private:
    struct Node;
    explicit Proof(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Judgment {
    std::set<Formula> assumptions;
    Formula conclusion;

    bool operator==(const Judgment& other) const {
        return assumptions == other.assumptions && conclusion == other.conclusion;
    }
};

std::string render_judgment(const Judgment& j);

enum class CheckErrorKind {
    UnknownRule,
    RuleNotInSystem,
    PremiseShapeMismatch,
    SideConditionViolated,
    EigenvariableNotFresh,
    NotAtomic,
    CaptureError,
    LanguageViolation,
    DischargeScopeError,
};

const char* check_error_kind_name(CheckErrorKind kind);
std::optional<CheckErrorKind> check_error_kind_from_name(const std::string& name);

struct CheckError {
    CheckErrorKind kind;
    std::vector<std::size_t> path;  // premise indices from the root
    std::string detail;

    std::string location() const;  // "root" or dotted path like "1.0.2"
    std::string render() const;
};

class CheckException : public std::runtime_error {
public:
    explicit CheckException(CheckError error) : std::runtime_error(error.render()), error_(std::move(error)) {}
    const CheckError& error() const { return error_; }

private:
    CheckError error_;
};

class CheckResult {
public:
    explicit CheckResult(Judgment j) : value_(std::move(j)) {}
    explicit CheckResult(CheckError e) : value_(std::move(e)) {}
    bool ok() const { return std::holds_alternative<Judgment>(value_); }
    const Judgment& judgment() const { return std::get<Judgment>(value_); }
    const CheckError& error() const { return std::get<CheckError>(value_); }

private:
    std::variant<Judgment, CheckError> value_;
};

// Validates the whole tree and returns its judgment, or the first
// (leftmost-innermost) violation.
CheckResult check_proof(const Proof& p, const SystemSpec& system);

// An open assumption is a labelled leaf formula not yet discharged.
using LabeledAssumption = std::pair<std::string, Formula>;
using AssumptionSet = std::set<LabeledAssumption>;

// Per-node undischarged assumption sets (keyed by Proof::node_id), as one
// bottom-up pass. Throws CheckException{DischargeScopeError} on label
// misuse. The labelled class removed at a discharging node is fixed by
// that node's rule schema.
std::map<const void*, std::set<Formula>> assumption_closure(const Proof& p, const SystemSpec& system);

// Validates a single step given the open assumptions of each premise
// subtree (labels included, so the exempted class of an eigenvariable
// condition is identified by the node's discharge label). Premise
// subtrees are presumed already validated. Throws CheckException.
void validate_step(const Proof& node, const SystemSpec& system,
                   const std::vector<AssumptionSet>& open_per_premise);

}  // namespace iotalog

#endif  // IOTALOG_KERNEL_HPP
