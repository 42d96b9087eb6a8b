#include "iotalog/systems.hpp"

#include "iotalog/kernel.hpp"

namespace iotalog {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Assume: return "assume";
        case Rule::Axiom: return "axiom";
        case Rule::AndI: return "andI";
        case Rule::AndE1: return "andE1";
        case Rule::AndE2: return "andE2";
        case Rule::ImpI: return "impI";
        case Rule::ImpE: return "impE";
        case Rule::OrI1: return "orI1";
        case Rule::OrI2: return "orI2";
        case Rule::OrE: return "orE";
        case Rule::BotE: return "botE";
        case Rule::ForallI: return "forallI";
        case Rule::ForallE: return "forallE";
        case Rule::ExistsI: return "existsI";
        case Rule::ExistsE: return "existsE";
        case Rule::EqI: return "eqI";
        case Rule::EqE: return "eqE";
        case Rule::AD: return "AD";
        case Rule::IffI: return "iffI";
        case Rule::IffE1: return "iffE1";
        case Rule::IffE2: return "iffE2";
        case Rule::IotaI: return "iotaI";
        case Rule::IotaE1: return "iotaE1";
        case Rule::IotaE2: return "iotaE2";
        case Rule::IotaIT: return "iotaIT";
        case Rule::IotaE1T: return "iotaE1T";
        case Rule::IotaE2T: return "iotaE2T";
        case Rule::IotaE3T: return "iotaE3T";
    }
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
    static const std::map<std::string, Rule> table = {
        {"andI", Rule::AndI},       {"andE1", Rule::AndE1},   {"andE2", Rule::AndE2},
        {"impI", Rule::ImpI},       {"impE", Rule::ImpE},     {"orI1", Rule::OrI1},
        {"orI2", Rule::OrI2},       {"orE", Rule::OrE},       {"botE", Rule::BotE},
        {"forallI", Rule::ForallI}, {"forallE", Rule::ForallE}, {"existsI", Rule::ExistsI},
        {"existsE", Rule::ExistsE}, {"eqI", Rule::EqI},       {"eqE", Rule::EqE},
        {"AD", Rule::AD},           {"iffI", Rule::IffI},     {"iffE1", Rule::IffE1},
        {"iffE2", Rule::IffE2},     {"iotaI", Rule::IotaI},   {"iotaE1", Rule::IotaE1},
        {"iotaE2", Rule::IotaE2},   {"iotaIT", Rule::IotaIT}, {"iotaE1T", Rule::IotaE1T},
        {"iotaE2T", Rule::IotaE2T}, {"iotaE3T", Rule::IotaE3T},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

const char* axiom_name(AxiomId a) {
    switch (a) {
        case AxiomId::LL: return "LL";
        case AxiomId::AbT: return "AbT";
        case AxiomId::RuI: return "RuI";
        case AxiomId::AbPrime: return "AbPrime";
    }
    return "?";
}

std::optional<AxiomId> axiom_from_name(const std::string& name) {
    if (name == "LL") return AxiomId::LL;
    if (name == "AbT") return AxiomId::AbT;
    if (name == "RuI") return AxiomId::RuI;
    if (name == "AbPrime") return AxiomId::AbPrime;
    return std::nullopt;
}

const AxiomScheme& axiom_scheme(AxiomId id) {
    static const AxiomScheme ll{
        AxiomId::LL, "LL", {{"F", MetaKind::FormulaMeta}, {"x", MetaKind::VarMeta}, {"y", MetaKind::VarMeta}}};
    static const AxiomScheme abt{
        AxiomId::AbT, "AbT", {{"B", MetaKind::FormulaMeta}, {"x", MetaKind::VarMeta}, {"t", MetaKind::TermMeta}}};
    static const AxiomScheme rui{AxiomId::RuI,
                                 "RuI",
                                 {{"B", MetaKind::FormulaMeta},
                                  {"A", MetaKind::FormulaMeta},
                                  {"x", MetaKind::VarMeta},
                                  {"z", MetaKind::VarMeta}}};
    static const AxiomScheme abp{AxiomId::AbPrime,
                                 "AbPrime",
                                 {{"B", MetaKind::FormulaMeta},
                                  {"x", MetaKind::VarMeta},
                                  {"t", MetaKind::TermMeta},
                                  {"z", MetaKind::VarMeta}}};
    switch (id) {
        case AxiomId::LL: return ll;
        case AxiomId::AbT: return abt;
        case AxiomId::RuI: return rui;
        case AxiomId::AbPrime: return abp;
    }
    return ll;
}

namespace {

std::set<Rule> inf_core_rules() {
    return {Rule::AndI,    Rule::AndE1,   Rule::AndE2,   Rule::ImpI, Rule::ImpE,
            Rule::OrI1,    Rule::OrI2,    Rule::OrE,     Rule::BotE, Rule::ForallI,
            Rule::ForallE, Rule::ExistsI, Rule::ExistsE, Rule::EqI,  Rule::EqE,
            Rule::AD,      Rule::IffI,    Rule::IffE1,   Rule::IffE2};
}

SystemSpec make_system(SystemId id) {
    SystemSpec s;
    s.id = id;
    s.rules = inf_core_rules();
    switch (id) {
        case SystemId::INF:
            s.name = "INF";
            s.language = LanguageId::L_INF;
            break;
        case SystemId::INF_IOTA:
            s.name = "INF-iota";
            s.language = LanguageId::L_IOTA;
            s.rules.insert({Rule::IotaI, Rule::IotaE1, Rule::IotaE2});
            break;
        case SystemId::INF_IOTA_R:
            s.name = "INF-iotaR";
            s.language = LanguageId::L_IOTA;
            s.rules.insert({Rule::IotaI, Rule::IotaE1, Rule::IotaE2});
            s.restrict_to_identity_matrix = true;
            break;
        case SystemId::INF_T:
            s.name = "INF-T";
            s.language = LanguageId::L_TLL;
            s.rules.insert({Rule::IotaIT, Rule::IotaE1T, Rule::IotaE2T, Rule::IotaE3T});
            break;
        case SystemId::INF_LL:
            s.name = "INF-LL";
            s.language = LanguageId::L_TLL;
            s.axioms = {AxiomId::LL};
            break;
        case SystemId::INF_LL_DELTA:
            s.name = "INF-LLD";
            s.language = LanguageId::L_DELTA;
            s.axioms = {AxiomId::LL, AxiomId::AbT, AxiomId::RuI};
            break;
    }
    return s;
}

[[noreturn]] void side_condition(const std::string& detail) {
    throw CheckException(CheckError{CheckErrorKind::SideConditionViolated, {}, detail});
}

const Formula& need_formula(const AxiomBindings& b, const std::string& name) {
    auto it = b.formulas.find(name);
    if (it == b.formulas.end()) side_condition("axiom binding for formula metavariable '" + name + "' is missing");
    return it->second;
}

const Term& need_term(const AxiomBindings& b, const std::string& name) {
    auto it = b.terms.find(name);
    if (it == b.terms.end()) side_condition("axiom binding for term metavariable '" + name + "' is missing");
    return it->second;
}

const std::string& need_var(const AxiomBindings& b, const std::string& name) {
    auto it = b.vars.find(name);
    if (it == b.vars.end()) side_condition("axiom binding for variable metavariable '" + name + "' is missing");
    return it->second;
}

bool free_in(const std::string& x, const Formula& f) { return free_vars(f).count(x) != 0; }
bool free_in(const std::string& x, const Term& t) { return free_vars(t).count(x) != 0; }

}  // namespace

const SystemSpec& builtin_system(SystemId id) {
    static const SystemSpec inf = make_system(SystemId::INF);
    static const SystemSpec inf_iota = make_system(SystemId::INF_IOTA);
    static const SystemSpec inf_iota_r = make_system(SystemId::INF_IOTA_R);
    static const SystemSpec inf_t = make_system(SystemId::INF_T);
    static const SystemSpec inf_ll = make_system(SystemId::INF_LL);
    static const SystemSpec inf_lld = make_system(SystemId::INF_LL_DELTA);
    switch (id) {
        case SystemId::INF: return inf;
        case SystemId::INF_IOTA: return inf_iota;
        case SystemId::INF_IOTA_R: return inf_iota_r;
        case SystemId::INF_T: return inf_t;
        case SystemId::INF_LL: return inf_ll;
        case SystemId::INF_LL_DELTA: return inf_lld;
    }
    return inf;
}

const SystemSpec& builtin_system(const std::string& name) {
    if (name == "INF") return builtin_system(SystemId::INF);
    if (name == "INF-iota") return builtin_system(SystemId::INF_IOTA);
    if (name == "INF-iotaR") return builtin_system(SystemId::INF_IOTA_R);
    if (name == "INF-T") return builtin_system(SystemId::INF_T);
    if (name == "INF-LL") return builtin_system(SystemId::INF_LL);
    if (name == "INF-LLD") return builtin_system(SystemId::INF_LL_DELTA);
    throw UnknownSystem(name);
}

Formula instantiate_axiom(const AxiomScheme& scheme, const AxiomBindings& bindings, LanguageId lang) {
    Formula instance = Formula::bot();
    switch (scheme.id) {
        case AxiomId::LL: {
            // forall y (iota x F = y <-> forall x (F <-> x = y))
            const Formula& f = need_formula(bindings, "F");
            const std::string& x = need_var(bindings, "x");
            const std::string& y = need_var(bindings, "y");
            if (y == x) side_condition("LL: the outer variable must differ from the description variable");
            if (free_in(y, f) && y != x)
                side_condition("LL: '" + y + "' occurs free in the restricting formula");
            instance = Formula::forall(
                y, Formula::iff(Formula::eq(Term::iota(x, f), Term::var(y)),
                                Formula::forall(x, Formula::iff(f, Formula::eq(Term::var(x), Term::var(y))))));
            break;
        }
        case AxiomId::AbT: {
            // abst x B, t <-> (ex! t and B_t^x), t free for x in B, x not free in t
            const Formula& b = need_formula(bindings, "B");
            const std::string& x = need_var(bindings, "x");
            const Term& t = need_term(bindings, "t");
            if (free_in(x, t)) side_condition("AbT: '" + x + "' occurs free in the argument term");
            if (!is_free_for(t, x, b))
                throw CheckException(
                    CheckError{CheckErrorKind::CaptureError, {}, "AbT: the argument term is not free for '" + x + "'"});
            instance = Formula::iff(Formula::abst(x, b, t),
                                    Formula::conj(Formula::exists_bang(t), substitute(b, x, t)));
            break;
        }
        case AxiomId::RuI: {
            // abst x B, iota x A <-> exists z (iota x A = z and B_z^x)
            const Formula& b = need_formula(bindings, "B");
            const Formula& a = need_formula(bindings, "A");
            const std::string& x = need_var(bindings, "x");
            const std::string& z = need_var(bindings, "z");
            if (z == x) side_condition("RuI: the witness variable must differ from the abstraction variable");
            if (free_in(z, a) && z != x) side_condition("RuI: '" + z + "' occurs free in the description body");
            if (free_in(z, b)) side_condition("RuI: '" + z + "' occurs free in the abstracted formula");
            if (!is_free_for(Term::var(z), x, b))
                throw CheckException(
                    CheckError{CheckErrorKind::CaptureError, {}, "RuI: '" + z + "' is not free for '" + x + "'"});
            Term iota = Term::iota(x, a);
            instance = Formula::iff(
                Formula::abst(x, b, iota),
                Formula::exists(z, Formula::conj(Formula::eq(iota, Term::var(z)), substitute(b, x, Term::var(z)))));
            break;
        }
        case AxiomId::AbPrime: {
            // abst x B, t <-> exists z (t = z and B_z^x)
            const Formula& b = need_formula(bindings, "B");
            const std::string& x = need_var(bindings, "x");
            const Term& t = need_term(bindings, "t");
            const std::string& z = need_var(bindings, "z");
            if (z == x) side_condition("AbPrime: the witness variable must differ from the abstraction variable");
            if (free_in(z, t)) side_condition("AbPrime: '" + z + "' occurs free in the argument term");
            if (free_in(z, b)) side_condition("AbPrime: '" + z + "' occurs free in the abstracted formula");
            if (!is_free_for(Term::var(z), x, b))
                throw CheckException(
                    CheckError{CheckErrorKind::CaptureError, {}, "AbPrime: '" + z + "' is not free for '" + x + "'"});
            instance = Formula::iff(
                Formula::abst(x, b, t),
                Formula::exists(z, Formula::conj(Formula::eq(t, Term::var(z)), substitute(b, x, Term::var(z)))));
            break;
        }
    }
    if (!well_formed(instance, lang))
        throw CheckException(CheckError{CheckErrorKind::LanguageViolation,
                                        {},
                                        std::string("axiom ") + scheme.name + " instance is not well formed in " +
                                            language_name(lang)});
    return instance;
}

}  // namespace iotalog
