#include "iotalog/proof_io.hpp"

#include <algorithm>
#include <sstream>

namespace iotalog {

namespace {

[[noreturn]] void fail_at(const SExpr& e, const std::string& msg) { throw ParseError(e.line, e.column, msg); }

bool is_keyword(const SExpr& e) { return e.is_atom && !e.atom.empty() && e.atom[0] == ':'; }

bool is_subproof(const SExpr& e) {
    return !e.is_atom && !e.children.empty() && e.children[0].is_atom &&
           (e.children[0].atom == "rule" || e.children[0].atom == "assume" || e.children[0].atom == "axiom");
}

Proof parse_axiom(const SExpr& e, const VarPolicy& policy, LanguageId lang) {
    if (e.children.size() < 2 || !e.children[1].is_atom) fail_at(e, "axiom needs a scheme name");
    auto id = axiom_from_name(e.children[1].atom);
    if (!id)
        throw CheckException(CheckError{
            CheckErrorKind::UnknownRule, {}, "unknown axiom scheme '" + e.children[1].atom + "'"});
    const AxiomScheme& scheme = axiom_scheme(*id);
    AxiomBindings bindings;
    for (std::size_t i = 2; i < e.children.size(); ++i) {
        const SExpr& b = e.children[i];
        if (b.is_atom || b.children.size() != 2 || !b.children[0].is_atom)
            fail_at(b, "axiom binding must be (METAVAR value)");
        const std::string& name = b.children[0].atom;
        auto mv = std::find_if(scheme.metavars.begin(), scheme.metavars.end(),
                               [&](const auto& m) { return m.first == name; });
        if (mv == scheme.metavars.end())
            fail_at(b, "scheme " + scheme.name + " has no metavariable '" + name + "'");
        switch (mv->second) {
            case MetaKind::FormulaMeta:
                bindings.formulas.emplace(name, formula_from_sexpr(b.children[1], policy));
                break;
            case MetaKind::TermMeta:
                bindings.terms.emplace(name, term_from_sexpr(b.children[1], policy));
                break;
            case MetaKind::VarMeta: {
                const SExpr& v = b.children[1];
                if (!v.is_atom || !is_ident(v.atom)) fail_at(v, "variable binding must be an identifier");
                if (!policy.is_variable(v.atom))
                    fail_at(v, "'" + v.atom + "' is not in the declared variable class");
                bindings.vars.emplace(name, v.atom);
                break;
            }
        }
    }
    return Proof::axiom(*id, std::move(bindings), lang);
}

Proof parse_rule(const SExpr& e, const VarPolicy& policy, LanguageId lang) {
    if (e.children.size() < 3 || !e.children[1].is_atom) fail_at(e, "rule needs a name and a conclusion");
    const std::string& name = e.children[1].atom;
    auto rule = rule_from_name(name);
    if (!rule)
        throw CheckException(CheckError{CheckErrorKind::UnknownRule, {}, "unknown rule '" + name + "'"});
    Formula conclusion = formula_from_sexpr(e.children[2], policy);
    ProofMeta meta;
    std::vector<Proof> premises;
    std::size_t i = 3;
    while (i < e.children.size()) {
        const SExpr& part = e.children[i];
        if (is_keyword(part)) {
            const std::string& kw = part.atom;
            if (kw == ":discharge") {
                if (i + 1 >= e.children.size() || !e.children[i + 1].is_atom)
                    fail_at(part, ":discharge needs a label");
                meta.discharge = e.children[i + 1].atom;
                i += 2;
            } else if (kw == ":eigen") {
                if (i + 1 >= e.children.size() || !e.children[i + 1].is_atom)
                    fail_at(part, ":eigen needs an identifier");
                const SExpr& v = e.children[i + 1];
                if (!is_ident(v.atom)) fail_at(v, "eigenvariable must be an identifier");
                if (!policy.is_variable(v.atom))
                    fail_at(v, "eigenvariable '" + v.atom + "' is not in the declared variable class");
                meta.eigen = v.atom;
                i += 2;
            } else if (kw == ":term") {
                ++i;
                bool any = false;
                while (i < e.children.size()) {
                    const SExpr& cand = e.children[i];
                    bool looks_like_term =
                        (cand.is_atom && !is_keyword(cand) && is_ident(cand.atom)) ||
                        (!cand.is_atom && !cand.children.empty() && cand.children[0].is_atom &&
                         cand.children[0].atom == "iota");
                    if (!looks_like_term) break;
                    meta.terms.push_back(term_from_sexpr(cand, policy));
                    any = true;
                    ++i;
                }
                if (!any) fail_at(part, ":term needs at least one term");
            } else if (kw == ":template") {
                if (i + 2 >= e.children.size()) fail_at(part, ":template needs a variable and a formula");
                const SExpr& v = e.children[i + 1];
                if (!v.is_atom || !is_ident(v.atom)) fail_at(v, "template variable must be an identifier");
                if (!policy.is_variable(v.atom))
                    fail_at(v, "template variable '" + v.atom + "' is not in the declared variable class");
                meta.eq_template = {v.atom, formula_from_sexpr(e.children[i + 2], policy)};
                i += 3;
            } else {
                fail_at(part, "unknown keyword '" + kw + "'");
            }
        } else if (is_subproof(part)) {
            premises.push_back(proof_from_sexpr(part, policy, lang));
            ++i;
        } else {
            fail_at(part, "expected a keyword argument or a subproof");
        }
    }
    return Proof::rule(*rule, std::move(conclusion), std::move(premises), std::move(meta));
}

}  // namespace

Proof proof_from_sexpr(const SExpr& e, const VarPolicy& policy, LanguageId lang) {
    if (e.is_atom || e.children.empty() || !e.children[0].is_atom)
        fail_at(e, "expected (assume ...), (axiom ...) or (rule ...)");
    const std::string& head = e.children[0].atom;
    if (head == "assume") {
        if (e.children.size() != 3 || !e.children[1].is_atom) fail_at(e, "assume takes a label and a formula");
        return Proof::assume(e.children[1].atom, formula_from_sexpr(e.children[2], policy));
    }
    if (head == "axiom") return parse_axiom(e, policy, lang);
    if (head == "rule") return parse_rule(e, policy, lang);
    fail_at(e, "expected (assume ...), (axiom ...) or (rule ...)");
}

ProofScript parse_proof_script(const std::string& text) {
    std::optional<LanguageId> lang;
    std::optional<std::set<std::string>> declared_vars;
    std::optional<std::string> sequent_line;
    int sequent_line_no = 0;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::size_t body_offset = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string::npos && line[first] == '#') {
            std::istringstream fields(line.substr(first + 1));
            std::string directive;
            fields >> directive;
            if (directive == "lang") {
                std::string name;
                fields >> name;
                auto parsed = language_from_name(name);
                if (!parsed) throw ParseError(line_no, 1, "unknown language '" + name + "'");
                lang = *parsed;
            } else if (directive == "vars") {
                std::set<std::string> vars;
                std::string v;
                while (fields >> v) {
                    if (!is_ident(v)) throw ParseError(line_no, 1, "invalid variable name '" + v + "'");
                    vars.insert(v);
                }
                declared_vars = std::move(vars);
            } else if (directive == "sequent") {
                std::string rest;
                std::getline(fields, rest);
                sequent_line = rest;
                sequent_line_no = line_no;
            } else {
                throw ParseError(line_no, 1, "unknown directive '#" + directive + "'");
            }
            body_offset += line.size() + 1;
            continue;
        }
        if (first == std::string::npos || line[first] == ';') {
            body_offset += line.size() + 1;
            continue;
        }
        break;  // first body line
    }

    if (!lang) throw ParseError(1, 1, "missing #lang header");
    VarPolicy policy = declared_vars ? VarPolicy::declared(*declared_vars) : VarPolicy();

    std::optional<Judgment> declared_sequent;
    if (sequent_line) {
        std::vector<Formula> assumptions;
        std::size_t pos = 0;
        std::optional<Formula> conclusion;
        while (!at_end_of_input(*sequent_line, pos)) {
            SExpr e = read_sexpr(*sequent_line, pos, sequent_line_no);
            if (e.is_atom && e.atom == "|-") {
                SExpr c = read_sexpr(*sequent_line, pos, sequent_line_no);
                conclusion = formula_from_sexpr(c, policy);
                if (!at_end_of_input(*sequent_line, pos))
                    throw ParseError(sequent_line_no, 1, "trailing input after the sequent conclusion");
                break;
            }
            assumptions.push_back(formula_from_sexpr(e, policy));
        }
        if (!conclusion) throw ParseError(sequent_line_no, 1, "#sequent needs '|-' and a conclusion");
        declared_sequent = Judgment{std::set<Formula>(assumptions.begin(), assumptions.end()), *conclusion};
    }

    std::size_t pos = body_offset;
    SExpr body = read_sexpr(text, pos);
    if (!at_end_of_input(text, pos)) {
        SExpr extra = read_sexpr(text, pos);
        fail_at(extra, "a proof script holds exactly one proof");
    }
    Proof proof = proof_from_sexpr(body, policy, *lang);
    return ProofScript{*lang, policy, std::move(declared_sequent), std::move(proof)};
}

}  // namespace iotalog
