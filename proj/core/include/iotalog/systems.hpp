#ifndef IOTALOG_SYSTEMS_HPP
#define IOTALOG_SYSTEMS_HPP

// The six logics as data: rule sets, axiom schemes and strictness flags.
//
//   INF       intuitionist negative free logic (shared core, incl. <-> rules)
//   INF-iota  INF + the binary quantifier rules iotaI/iotaE1/iotaE2
//   INF-iotaR INF-iota with iotaI/iotaE1 matrices restricted to identities
//   INF-T     INF + Tennant's term-operator rules over L_TLL
//   INF-LL    INF + Lambert's Law as an axiom over L_TLL
//   INF-LLD   INF + LL, the abstraction axiom and the description
//             abstraction axiom over L_DELTA

#include <map>
#include <optional>
#include <set>
#include <string>

#include "iotalog/syntax.hpp"

namespace iotalog {

enum class Rule {
    Assume,
    Axiom,
    AndI,
    AndE1,
    AndE2,
    ImpI,
    ImpE,
    OrI1,
    OrI2,
    OrE,
    BotE,
    ForallI,
    ForallE,
    ExistsI,
    ExistsE,
    EqI,
    EqE,
    AD,
    IffI,
    IffE1,
    IffE2,
    IotaI,
    IotaE1,
    IotaE2,
    IotaIT,
    IotaE1T,
    IotaE2T,
    IotaE3T,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

enum class AxiomId {
    LL,       // forall y (iota x F = y <-> forall x (F <-> x = y))
    AbT,      // abst x B, t <-> (ex! t and B_t^x)
    RuI,      // abst x B, iota x A <-> exists z (iota x A = z and B_z^x)
    AbPrime,  // abst x B, t <-> exists z (t = z and B_z^x)
};

const char* axiom_name(AxiomId a);
std::optional<AxiomId> axiom_from_name(const std::string& name);

// What each scheme's metavariables range over; used by the script reader
// and by instantiate_axiom.
enum class MetaKind { FormulaMeta, TermMeta, VarMeta };

struct AxiomScheme {
    AxiomId id;
    std::string name;
    // Metavariable names in their canonical binding order.
    std::vector<std::pair<std::string, MetaKind>> metavars;
};

const AxiomScheme& axiom_scheme(AxiomId id);

struct AxiomBindings {
    std::map<std::string, Formula> formulas;
    std::map<std::string, Term> terms;
    std::map<std::string, std::string> vars;
};

enum class SystemId { INF, INF_IOTA, INF_IOTA_R, INF_T, INF_LL, INF_LL_DELTA };

struct SystemSpec {
    SystemId id;
    std::string name;  // CLI spelling: INF, INF-iota, INF-iotaR, INF-T, INF-LL, INF-LLD
    LanguageId language;
    std::set<Rule> rules;
    std::set<AxiomId> axioms;
    // In iotaI/iotaE1 the matrix of iotaq must be an identity on the bound
    // variable (the INF-iotaR fragment).
    bool restrict_to_identity_matrix = false;
    // Reject vacuous eqE applications: the template variable must occur in
    // the template and the two terms of the identity must differ.
    bool strict_eqE = true;

    bool has_rule(Rule r) const { return rules.count(r) != 0; }
    bool has_axiom(AxiomId a) const { return axioms.count(a) != 0; }
};

class UnknownSystem : public std::runtime_error {
public:
    explicit UnknownSystem(const std::string& name)
        : std::runtime_error("unknown system '" + name + "'") {}
};

const SystemSpec& builtin_system(SystemId id);
// Accepts the CLI spellings. Throws UnknownSystem.
const SystemSpec& builtin_system(const std::string& name);

// Instantiates an axiom scheme under the given bindings, checking the
// scheme's freshness side conditions and that the result is well formed
// in `lang`. Throws CheckException (see kernel.hpp) on violations.
Formula instantiate_axiom(const AxiomScheme& scheme, const AxiomBindings& bindings, LanguageId lang);

}  // namespace iotalog

#endif  // IOTALOG_SYSTEMS_HPP
