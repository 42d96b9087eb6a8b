#include "iotalog/kernel.hpp"

#include <algorithm>
#include <sstream>

#include "iotalog/parse.hpp"

namespace iotalog {

struct Proof::Node {
    Rule rule;
    Formula conclusion;
    std::vector<Proof> premises;
    ProofMeta meta;
    std::string label;              // Assume
    std::optional<AxiomId> scheme;  // Axiom
    AxiomBindings bindings;         // Axiom
};

Proof Proof::assume(std::string label, Formula f) {
    return Proof(std::make_shared<const Node>(
        Node{Rule::Assume, std::move(f), {}, {}, std::move(label), std::nullopt, {}}));
}

Proof Proof::axiom(AxiomId scheme, AxiomBindings bindings, LanguageId lang) {
    Formula instance = instantiate_axiom(axiom_scheme(scheme), bindings, lang);
    return Proof(std::make_shared<const Node>(
        Node{Rule::Axiom, std::move(instance), {}, {}, "", scheme, std::move(bindings)}));
}

Proof Proof::rule(Rule r, Formula conclusion, std::vector<Proof> premises, ProofMeta meta) {
    return Proof(std::make_shared<const Node>(
        Node{r, std::move(conclusion), std::move(premises), std::move(meta), "", std::nullopt, {}}));
}

Rule Proof::rule_id() const { return node_->rule; }
const Formula& Proof::conclusion() const { return node_->conclusion; }
const std::vector<Proof>& Proof::premises() const { return node_->premises; }
const ProofMeta& Proof::meta() const { return node_->meta; }
const std::string& Proof::label() const { return node_->label; }
AxiomId Proof::scheme() const { return *node_->scheme; }
const AxiomBindings& Proof::bindings() const { return node_->bindings; }
const void* Proof::node_id() const { return node_.get(); }

std::string render_judgment(const Judgment& j) {
    std::ostringstream out;
    bool first = true;
    for (const Formula& a : j.assumptions) {
        if (!first) out << ", ";
        first = false;
        out << print_formula(a);
    }
    if (!j.assumptions.empty()) out << ' ';
    out << "|- " << print_formula(j.conclusion);
    return out.str();
}

const char* check_error_kind_name(CheckErrorKind kind) {
    switch (kind) {
        case CheckErrorKind::UnknownRule: return "UnknownRule";
        case CheckErrorKind::RuleNotInSystem: return "RuleNotInSystem";
        case CheckErrorKind::PremiseShapeMismatch: return "PremiseShapeMismatch";
        case CheckErrorKind::SideConditionViolated: return "SideConditionViolated";
        case CheckErrorKind::EigenvariableNotFresh: return "EigenvariableNotFresh";
        case CheckErrorKind::NotAtomic: return "NotAtomic";
        case CheckErrorKind::CaptureError: return "CaptureError";
        case CheckErrorKind::LanguageViolation: return "LanguageViolation";
        case CheckErrorKind::DischargeScopeError: return "DischargeScopeError";
    }
    return "?";
}

std::optional<CheckErrorKind> check_error_kind_from_name(const std::string& name) {
    static const std::map<std::string, CheckErrorKind> table = {
        {"UnknownRule", CheckErrorKind::UnknownRule},
        {"RuleNotInSystem", CheckErrorKind::RuleNotInSystem},
        {"PremiseShapeMismatch", CheckErrorKind::PremiseShapeMismatch},
        {"SideConditionViolated", CheckErrorKind::SideConditionViolated},
        {"EigenvariableNotFresh", CheckErrorKind::EigenvariableNotFresh},
        {"NotAtomic", CheckErrorKind::NotAtomic},
        {"CaptureError", CheckErrorKind::CaptureError},
        {"LanguageViolation", CheckErrorKind::LanguageViolation},
        {"DischargeScopeError", CheckErrorKind::DischargeScopeError},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::string CheckError::location() const {
    if (path.empty()) return "root";
    std::ostringstream out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out << '.';
        out << path[i];
    }
    return out.str();
}

std::string CheckError::render() const {
    return std::string(check_error_kind_name(kind)) + " at " + location() + ": " + detail;
}

namespace {

struct SubtreeInfo {
    AssumptionSet open;
    std::set<std::string> discharged;
};

[[noreturn]] void fail(CheckErrorKind kind, const std::vector<std::size_t>& path, const std::string& detail) {
    throw CheckException(CheckError{kind, path, detail});
}

bool free_in(const std::string& x, const Formula& f) { return free_vars(f).count(x) != 0; }
bool free_in(const std::string& x, const Term& t) { return free_vars(t).count(x) != 0; }

class StepChecker {
public:
    StepChecker(const Proof& node, const SystemSpec& system, const std::vector<AssumptionSet>& premise_opens,
                const std::vector<std::size_t>& path)
        : p_(node), sys_(system), opens_(premise_opens), path_(path) {}

    // Runs every node-local check and returns the node's own open
    // assumption set (discharge applied).
    AssumptionSet run() {
        check_language();
        switch (p_.rule_id()) {
            case Rule::Assume:
                return {{p_.label(), p_.conclusion()}};
            case Rule::Axiom:
                check_axiom();
                return {};
            default:
                break;
        }
        if (!sys_.has_rule(p_.rule_id()))
            fail(CheckErrorKind::RuleNotInSystem, path_,
                 std::string("rule ") + rule_name(p_.rule_id()) + " is not part of " + sys_.name);
        check_rule();
        return result_open_;
    }

private:
    const Proof& p_;
    const SystemSpec& sys_;
    const std::vector<AssumptionSet>& opens_;
    const std::vector<std::size_t>& path_;
    AssumptionSet result_open_;
    // Premise index -> allowed class when this node discharges there.
    std::map<std::size_t, std::set<Formula>> discharge_classes_;
    // Filtered premise opens (class removed), for eigen freshness checks.
    std::vector<AssumptionSet> filtered_;

    const Formula& conclusion() const { return p_.conclusion(); }
    const Formula& concl(std::size_t i) const { return p_.premises()[i].conclusion(); }

    void check_language() {
        if (!well_formed(conclusion(), sys_.language))
            fail(CheckErrorKind::LanguageViolation, path_,
                 print_formula(conclusion()) + " is not well formed in " + language_name(sys_.language));
        if (p_.meta().eq_template && !well_formed(p_.meta().eq_template->second, sys_.language))
            fail(CheckErrorKind::LanguageViolation, path_,
                 "substitution template is not well formed in " + std::string(language_name(sys_.language)));
    }

    void check_axiom() {
        if (!sys_.has_axiom(p_.scheme()))
            fail(CheckErrorKind::RuleNotInSystem, path_,
                 std::string("axiom ") + axiom_name(p_.scheme()) + " is not part of " + sys_.name);
        try {
            Formula expected = instantiate_axiom(axiom_scheme(p_.scheme()), p_.bindings(), sys_.language);
            if (expected != conclusion())
                fail(CheckErrorKind::PremiseShapeMismatch, path_, "axiom instance does not match its bindings");
        } catch (const CheckException& e) {
            CheckError err = e.error();
            err.path = path_;
            throw CheckException(std::move(err));
        }
    }

    void need_premises(std::size_t n) {
        if (p_.premises().size() != n)
            fail(CheckErrorKind::PremiseShapeMismatch, path_,
                 std::string(rule_name(p_.rule_id())) + " takes " + std::to_string(n) + " premises, got " +
                     std::to_string(p_.premises().size()));
    }

    void shape(bool ok, const std::string& detail) {
        if (!ok) fail(CheckErrorKind::PremiseShapeMismatch, path_, detail);
    }

    Formula subst(const Formula& a, const std::string& x, const Term& t) {
        try {
            return substitute(a, x, t);
        } catch (const CaptureError& e) {
            fail(CheckErrorKind::CaptureError, path_, e.what());
        }
    }

    const std::string& eigen() {
        if (!p_.meta().eigen)
            fail(CheckErrorKind::PremiseShapeMismatch, path_,
                 std::string(rule_name(p_.rule_id())) + " needs an :eigen variable");
        return *p_.meta().eigen;
    }

    const std::string& discharge_label() {
        if (!p_.meta().discharge)
            fail(CheckErrorKind::PremiseShapeMismatch, path_,
                 std::string(rule_name(p_.rule_id())) + " needs a :discharge label");
        return *p_.meta().discharge;
    }

    // Consumes the labelled class and leaves filtered_ behind; must be
    // called exactly once per discharging rule, after discharge_classes_
    // is set. Non-discharging rules call it with no classes.
    void resolve_discharges() {
        const ProofMeta& meta = p_.meta();
        if (discharge_classes_.empty() && meta.discharge)
            fail(CheckErrorKind::PremiseShapeMismatch, path_,
                 std::string(rule_name(p_.rule_id())) + " does not discharge assumptions");
        std::optional<std::string> label;
        if (!discharge_classes_.empty()) label = discharge_label();

        filtered_.clear();
        filtered_.reserve(opens_.size());
        for (std::size_t i = 0; i < opens_.size(); ++i) {
            AssumptionSet kept;
            auto cls = discharge_classes_.find(i);
            for (const LabeledAssumption& la : opens_[i]) {
                if (label && la.first == *label) {
                    if (cls == discharge_classes_.end())
                        fail(CheckErrorKind::DischargeScopeError, path_,
                             "label '" + *label + "' occurs in a premise where " +
                                 rule_name(p_.rule_id()) + " cannot discharge it");
                    if (!cls->second.count(la.second))
                        fail(CheckErrorKind::DischargeScopeError, path_,
                             "assumption " + print_formula(la.second) + " under label '" + *label +
                                 "' does not belong to the dischargeable class");
                    continue;  // discharged
                }
                kept.insert(la);
            }
            filtered_.push_back(std::move(kept));
        }
        for (const AssumptionSet& s : filtered_) result_open_.insert(s.begin(), s.end());
    }

    void eigen_fresh_in(std::size_t premise_idx, const std::string& v) {
        for (const LabeledAssumption& la : filtered_[premise_idx]) {
            if (free_in(v, la.second))
                fail(CheckErrorKind::EigenvariableNotFresh, path_,
                     "eigenvariable '" + v + "' occurs free in undischarged assumption " +
                         print_formula(la.second));
        }
    }

    void check_explicit_terms(const std::vector<Term>& expected) {
        const auto& given = p_.meta().terms;
        if (given.empty()) return;
        if (given.size() != expected.size() || !std::equal(given.begin(), given.end(), expected.begin()))
            fail(CheckErrorKind::PremiseShapeMismatch, path_,
                 ":term annotation does not match the terms required by the premises");
    }

    // The identity-matrix restriction of INF-iotaR on iotaI/iotaE1.
    void check_matrix_restriction(const Formula& g, const std::string& x) {
        if (!sys_.restrict_to_identity_matrix) return;
        bool ok = g.is(Formula::Kind::Eq) &&
                  ((g.left().is_var() && g.left().name() == x) || (g.right().is_var() && g.right().name() == x));
        if (!ok)
            fail(CheckErrorKind::SideConditionViolated, path_,
                 "in " + sys_.name + " the matrix of iotaq must be an identity on the bound variable");
    }

    void check_rule() {
        using K = Formula::Kind;
        const Formula& C = conclusion();
        switch (p_.rule_id()) {
            case Rule::AndI: {
                need_premises(2);
                resolve_discharges();
                shape(C.is(K::And), "conclusion of andI must be a conjunction");
                shape(C.sub(0) == concl(0) && C.sub(1) == concl(1), "conjuncts do not match the premises");
                return;
            }
            case Rule::AndE1: {
                need_premises(1);
                resolve_discharges();
                shape(concl(0).is(K::And), "premise of andE1 must be a conjunction");
                shape(concl(0).sub(0) == C, "conclusion must be the left conjunct");
                return;
            }
            case Rule::AndE2: {
                need_premises(1);
                resolve_discharges();
                shape(concl(0).is(K::And), "premise of andE2 must be a conjunction");
                shape(concl(0).sub(1) == C, "conclusion must be the right conjunct");
                return;
            }
            case Rule::ImpI: {
                need_premises(1);
                shape(C.is(K::Imp), "conclusion of impI must be an implication");
                shape(C.sub(1) == concl(0), "premise must be the consequent");
                discharge_classes_[0] = {C.sub(0)};
                resolve_discharges();
                return;
            }
            case Rule::ImpE: {
                need_premises(2);
                resolve_discharges();
                shape(concl(0).is(K::Imp), "major premise of impE must be an implication");
                shape(concl(0).sub(0) == concl(1), "minor premise must be the antecedent");
                shape(concl(0).sub(1) == C, "conclusion must be the consequent");
                return;
            }
            case Rule::OrI1: {
                need_premises(1);
                resolve_discharges();
                shape(C.is(K::Or), "conclusion of orI1 must be a disjunction");
                shape(C.sub(0) == concl(0), "premise must be the left disjunct");
                return;
            }
            case Rule::OrI2: {
                need_premises(1);
                resolve_discharges();
                shape(C.is(K::Or), "conclusion of orI2 must be a disjunction");
                shape(C.sub(1) == concl(0), "premise must be the right disjunct");
                return;
            }
            case Rule::OrE: {
                need_premises(3);
                shape(concl(0).is(K::Or), "major premise of orE must be a disjunction");
                shape(concl(1) == C && concl(2) == C, "both minor premises must conclude the conclusion");
                discharge_classes_[1] = {concl(0).sub(0)};
                discharge_classes_[2] = {concl(0).sub(1)};
                resolve_discharges();
                return;
            }
            case Rule::BotE: {
                need_premises(1);
                resolve_discharges();
                shape(concl(0).is(K::Bot), "premise of botE must be bot");
                if (!is_atomic(C))
                    fail(CheckErrorKind::SideConditionViolated, path_,
                         "botE is restricted to atomic conclusions");
                return;
            }
            case Rule::ForallI: {
                need_premises(1);
                shape(C.is(K::Forall), "conclusion of forallI must be universal");
                const std::string& y = eigen();
                const std::string& x = C.var();
                const Formula& body = C.body();
                if (y != x && free_in(y, body))
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "eigenvariable '" + y + "' occurs free in the generalized formula");
                shape(concl(0) == subst(body, x, Term::var(y)),
                      "premise must be the body instantiated at the eigenvariable");
                discharge_classes_[0] = {Formula::exists_bang(Term::var(y))};
                resolve_discharges();
                eigen_fresh_in(0, y);
                return;
            }
            case Rule::ForallE: {
                need_premises(2);
                resolve_discharges();
                shape(concl(0).is(K::Forall), "major premise of forallE must be universal");
                shape(concl(1).is(K::ExistsBang), "minor premise of forallE must be an existence premise");
                const Term& t = concl(1).term();
                check_explicit_terms({t});
                shape(C == subst(concl(0).body(), concl(0).var(), t),
                      "conclusion must be the body instantiated at the witnessed term");
                return;
            }
            case Rule::ExistsI: {
                need_premises(2);
                resolve_discharges();
                shape(C.is(K::Exists), "conclusion of existsI must be existential");
                shape(concl(1).is(K::ExistsBang), "second premise of existsI must be an existence premise");
                const Term& t = concl(1).term();
                check_explicit_terms({t});
                shape(concl(0) == subst(C.body(), C.var(), t),
                      "first premise must be the body instantiated at the witnessed term");
                return;
            }
            case Rule::ExistsE: {
                need_premises(2);
                shape(concl(0).is(K::Exists), "major premise of existsE must be existential");
                shape(concl(1) == C, "minor premise must conclude the conclusion");
                const std::string& y = eigen();
                const std::string& x = concl(0).var();
                const Formula& body = concl(0).body();
                if (y != x && free_in(y, body))
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "eigenvariable '" + y + "' occurs free in the existential body");
                discharge_classes_[1] = {subst(body, x, Term::var(y)), Formula::exists_bang(Term::var(y))};
                resolve_discharges();
                if (free_in(y, C))
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "eigenvariable '" + y + "' occurs free in the conclusion");
                eigen_fresh_in(1, y);
                return;
            }
            case Rule::EqI: {
                need_premises(1);
                resolve_discharges();
                shape(concl(0).is(K::ExistsBang), "premise of eqI must be an existence premise");
                const Term& t = concl(0).term();
                shape(C == Formula::eq(t, t), "conclusion must be the self-identity of the witnessed term");
                return;
            }
            case Rule::EqE: {
                need_premises(2);
                resolve_discharges();
                if (!p_.meta().eq_template)
                    fail(CheckErrorKind::PremiseShapeMismatch, path_, "eqE needs a :template");
                const auto& [x, a] = *p_.meta().eq_template;
                if (!is_atomic(a))
                    fail(CheckErrorKind::NotAtomic, path_, "eqE template must be an atomic formula");
                shape(concl(0).is(K::Eq), "first premise of eqE must be an identity");
                const Term& t1 = concl(0).left();
                const Term& t2 = concl(0).right();
                shape(concl(1) == subst(a, x, t1), "second premise must be the template at the left term");
                shape(C == subst(a, x, t2), "conclusion must be the template at the right term");
                if (sys_.strict_eqE) {
                    if (!free_in(x, a))
                        fail(CheckErrorKind::SideConditionViolated, path_,
                             "strict eqE: the template variable must occur in the template");
                    if (t1 == t2)
                        fail(CheckErrorKind::SideConditionViolated, path_,
                             "strict eqE: the two terms of the identity must differ");
                }
                return;
            }
            case Rule::AD: {
                need_premises(1);
                resolve_discharges();
                if (!is_atomic(concl(0)))
                    fail(CheckErrorKind::NotAtomic, path_, "AD applies to atomic premises only");
                shape(C.is(K::ExistsBang), "conclusion of AD must be an existence claim");
                std::vector<Term> occupants;
                switch (concl(0).kind()) {
                    case K::Pred: occupants = concl(0).args(); break;
                    case K::Eq: occupants = {concl(0).left(), concl(0).right()}; break;
                    case K::ExistsBang: occupants = {concl(0).term()}; break;
                    default: break;
                }
                if (std::find(occupants.begin(), occupants.end(), C.term()) == occupants.end())
                    fail(CheckErrorKind::SideConditionViolated, path_,
                         "AD: the term does not occur in the atomic premise");
                return;
            }
            case Rule::IffI: {
                need_premises(2);
                shape(C.is(K::Iff), "conclusion of iffI must be a biconditional");
                shape(concl(0) == C.sub(1), "first subproof must conclude the right-hand side");
                shape(concl(1) == C.sub(0), "second subproof must conclude the left-hand side");
                discharge_classes_[0] = {C.sub(0)};
                discharge_classes_[1] = {C.sub(1)};
                resolve_discharges();
                return;
            }
            case Rule::IffE1: {
                need_premises(2);
                resolve_discharges();
                shape(concl(0).is(K::Iff), "major premise of iffE1 must be a biconditional");
                shape(concl(1) == concl(0).sub(0), "minor premise must be the left-hand side");
                shape(C == concl(0).sub(1), "conclusion must be the right-hand side");
                return;
            }
            case Rule::IffE2: {
                need_premises(2);
                resolve_discharges();
                shape(concl(0).is(K::Iff), "major premise of iffE2 must be a biconditional");
                shape(concl(1) == concl(0).sub(1), "minor premise must be the right-hand side");
                shape(C == concl(0).sub(0), "conclusion must be the left-hand side");
                return;
            }
            case Rule::IotaI: {
                need_premises(4);
                shape(C.is(K::IotaQ), "conclusion of iotaI must be a binary description");
                const std::string& x = C.var();
                const Formula& f = C.restrictor();
                const Formula& g = C.matrix();
                check_matrix_restriction(g, x);
                shape(concl(2).is(K::ExistsBang), "third premise of iotaI must be an existence premise");
                const Term& t = concl(2).term();
                check_explicit_terms({t});
                const std::string& z = eigen();
                if (z == x)
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "the eigenvariable of iotaI must differ from the bound variable");
                if (free_in(z, t))
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "eigenvariable '" + z + "' occurs free in the instantiating term");
                shape(concl(0) == subst(f, x, t), "first premise must be the restrictor at the term");
                shape(concl(1) == subst(g, x, t), "second premise must be the matrix at the term");
                shape(concl(3) == Formula::eq(Term::var(z), t),
                      "fourth premise must conclude that the eigenvariable equals the term");
                discharge_classes_[3] = {subst(f, x, Term::var(z)), Formula::exists_bang(Term::var(z))};
                resolve_discharges();
                eigen_fresh_in(3, z);
                return;
            }
            case Rule::IotaE1: {
                need_premises(2);
                shape(concl(0).is(K::IotaQ), "major premise of iotaE1 must be a binary description");
                const std::string& x = concl(0).var();
                const Formula& f = concl(0).restrictor();
                const Formula& g = concl(0).matrix();
                check_matrix_restriction(g, x);
                shape(concl(1) == C, "minor premise must conclude the conclusion");
                const std::string& z = eigen();
                if (z != x && (free_in(z, f) || free_in(z, g)))
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "eigenvariable '" + z + "' occurs free in the description");
                discharge_classes_[1] = {subst(f, x, Term::var(z)), subst(g, x, Term::var(z)),
                                         Formula::exists_bang(Term::var(z))};
                resolve_discharges();
                if (free_in(z, C))
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "eigenvariable '" + z + "' occurs free in the conclusion");
                eigen_fresh_in(1, z);
                return;
            }
            case Rule::IotaE2: {
                need_premises(5);
                resolve_discharges();
                shape(concl(0).is(K::IotaQ), "major premise of iotaE2 must be a binary description");
                const std::string& x = concl(0).var();
                const Formula& f = concl(0).restrictor();
                shape(concl(1).is(K::ExistsBang) && concl(2).is(K::ExistsBang),
                      "premises two and three of iotaE2 must be existence premises");
                const Term& t1 = concl(1).term();
                const Term& t2 = concl(2).term();
                check_explicit_terms({t1, t2});
                shape(concl(3) == subst(f, x, t1), "fourth premise must be the restrictor at the first term");
                shape(concl(4) == subst(f, x, t2), "fifth premise must be the restrictor at the second term");
                shape(C == Formula::eq(t1, t2), "conclusion must identify the two terms");
                return;
            }
            case Rule::IotaIT: {
                need_premises(3);
                shape(C.is(K::Eq) && C.left().is_iota(),
                      "conclusion of iotaIT must equate a description term with a term");
                const std::string& x = C.left().bound();
                const Formula& f = C.left().body();
                const Term& t = C.right();
                shape(concl(0) == Formula::exists_bang(t), "first premise must witness the term");
                const std::string& z = eigen();
                if (z != x && free_in(z, f))
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "eigenvariable '" + z + "' occurs free in the description body");
                if (free_in(z, t))
                    fail(CheckErrorKind::EigenvariableNotFresh, path_,
                         "eigenvariable '" + z + "' occurs free in the equated term");
                shape(concl(1) == subst(f, x, Term::var(z)),
                      "second premise must conclude the body at the eigenvariable");
                shape(concl(2) == Formula::eq(Term::var(z), t),
                      "third premise must conclude that the eigenvariable equals the term");
                discharge_classes_[1] = {Formula::eq(Term::var(z), t)};
                discharge_classes_[2] = {subst(f, x, Term::var(z)), Formula::exists_bang(Term::var(z))};
                resolve_discharges();
                eigen_fresh_in(1, z);
                eigen_fresh_in(2, z);
                return;
            }
            case Rule::IotaE1T: {
                need_premises(2);
                resolve_discharges();
                shape(concl(0).is(K::Eq) && concl(0).left().is_iota(),
                      "major premise of iotaE1T must equate a description term with a term");
                const std::string& x = concl(0).left().bound();
                const Formula& f = concl(0).left().body();
                const Term& t = concl(0).right();
                shape(concl(1).is(K::Eq), "minor premise of iotaE1T must be an identity");
                shape(concl(1).right() == t, "minor premise must equate against the described term");
                const Term& u = concl(1).left();
                check_explicit_terms({u});
                shape(C == subst(f, x, u), "conclusion must be the body at the equated term");
                return;
            }
            case Rule::IotaE2T: {
                need_premises(3);
                resolve_discharges();
                shape(concl(0).is(K::Eq) && concl(0).left().is_iota(),
                      "major premise of iotaE2T must equate a description term with a term");
                const std::string& x = concl(0).left().bound();
                const Formula& f = concl(0).left().body();
                const Term& t = concl(0).right();
                shape(concl(2).is(K::ExistsBang), "third premise of iotaE2T must be an existence premise");
                const Term& u = concl(2).term();
                check_explicit_terms({u});
                shape(concl(1) == subst(f, x, u), "second premise must be the body at the witnessed term");
                shape(C == Formula::eq(u, t), "conclusion must equate the witnessed and described terms");
                return;
            }
            case Rule::IotaE3T: {
                need_premises(1);
                resolve_discharges();
                shape(concl(0).is(K::Eq) && concl(0).left().is_iota(),
                      "premise of iotaE3T must equate a description term with a term");
                shape(C == Formula::exists_bang(concl(0).right()),
                      "conclusion must witness the term the description is equated with");
                return;
            }
            case Rule::Assume:
            case Rule::Axiom:
                return;  // handled in run()
        }
    }
};

SubtreeInfo validate_tree(const Proof& p, const SystemSpec& system, std::vector<std::size_t>& path,
                          std::map<const void*, std::set<Formula>>* closure_out) {
    std::vector<AssumptionSet> premise_opens;
    premise_opens.reserve(p.premises().size());

    std::vector<SubtreeInfo> infos;
    infos.reserve(p.premises().size());
    for (std::size_t i = 0; i < p.premises().size(); ++i) {
        path.push_back(i);
        infos.push_back(validate_tree(p.premises()[i], system, path, closure_out));
        path.pop_back();
        premise_opens.push_back(infos.back().open);
    }

    // Scope discipline: a label consumed in a subtree may not be consumed
    // again at this node.
    if (p.meta().discharge) {
        for (const SubtreeInfo& info : infos) {
            if (info.discharged.count(*p.meta().discharge))
                fail(CheckErrorKind::DischargeScopeError, path,
                     "label '" + *p.meta().discharge + "' was already discharged below this step");
        }
    }

    StepChecker checker(p, system, premise_opens, path);
    SubtreeInfo info;
    info.open = checker.run();
    for (const SubtreeInfo& sub : infos)
        info.discharged.insert(sub.discharged.begin(), sub.discharged.end());
    if (p.meta().discharge) info.discharged.insert(*p.meta().discharge);

    if (closure_out) {
        std::set<Formula> formulas;
        for (const LabeledAssumption& la : info.open) formulas.insert(la.second);
        (*closure_out)[p.node_id()] = std::move(formulas);
    }
    return info;
}

}  // namespace

void validate_step(const Proof& node, const SystemSpec& system,
                   const std::vector<AssumptionSet>& open_per_premise) {
    std::vector<std::size_t> path;
    StepChecker checker(node, system, open_per_premise, path);
    checker.run();
}

CheckResult check_proof(const Proof& p, const SystemSpec& system) {
    try {
        std::vector<std::size_t> path;
        SubtreeInfo info = validate_tree(p, system, path, nullptr);
        std::set<Formula> assumptions;
        for (const LabeledAssumption& la : info.open) assumptions.insert(la.second);
        return CheckResult(Judgment{std::move(assumptions), p.conclusion()});
    } catch (const CheckException& e) {
        return CheckResult(e.error());
    }
}

std::map<const void*, std::set<Formula>> assumption_closure(const Proof& p, const SystemSpec& system) {
    std::map<const void*, std::set<Formula>> closure;
    std::vector<std::size_t> path;
    validate_tree(p, system, path, &closure);
    return closure;
}

}  // namespace iotalog
