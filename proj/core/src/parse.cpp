#include "iotalog/parse.hpp"

#include <cctype>
#include <sstream>

namespace iotalog {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos;
    int line;
    int col;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char advance() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_blank() {
        while (!done()) {
            char c = peek();
            if (c == ';') {
                while (!done() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
};

bool atom_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';';
}

SExpr read_datum(Cursor& cur) {
    cur.skip_blank();
    if (cur.done()) throw ParseError(cur.line, cur.col, "unexpected end of input");
    int line = cur.line, col = cur.col;
    char c = cur.peek();
    if (c == ')') throw ParseError(line, col, "unexpected ')'");
    if (c == '(') {
        cur.advance();
        SExpr node;
        node.is_atom = false;
        node.line = line;
        node.column = col;
        while (true) {
            cur.skip_blank();
            if (cur.done()) throw ParseError(line, col, "unclosed '('");
            if (cur.peek() == ')') {
                cur.advance();
                break;
            }
            node.children.push_back(read_datum(cur));
        }
        return node;
    }
    SExpr node;
    node.is_atom = true;
    node.line = line;
    node.column = col;
    while (!cur.done() && atom_char(cur.peek())) node.atom.push_back(cur.advance());
    return node;
}

[[noreturn]] void fail(const SExpr& e, const std::string& msg) {
    throw ParseError(e.line, e.column, msg);
}

const std::set<std::string>& reserved_heads() {
    static const std::set<std::string> words = {"and", "or",  "->",    "<->",    "not",  "forall",
                                                "exists", "iotaq", "abst", "iota", "=",  "ex!",
                                                "bot", "rule", "assume", "axiom"};
    return words;
}

}  // namespace

bool is_ident(const std::string& atom) {
    if (atom.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(atom[0]))) return false;
    for (char c : atom)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

SExpr read_sexpr(const std::string& text, std::size_t& pos, int first_line) {
    Cursor cur{text, pos, first_line, 1};
    // Recover line/column for mid-string starts.
    for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++cur.line;
            cur.col = 1;
        } else {
            ++cur.col;
        }
    }
    SExpr e = read_datum(cur);
    pos = cur.pos;
    return e;
}

bool at_end_of_input(const std::string& text, std::size_t pos) {
    Cursor cur{text, pos, 1, 1};
    cur.skip_blank();
    return cur.done();
}

Term term_from_sexpr(const SExpr& e, const VarPolicy& policy) {
    if (e.is_atom) {
        if (!is_ident(e.atom)) fail(e, "'" + e.atom + "' is not a valid term identifier");
        return policy.is_variable(e.atom) ? Term::var(e.atom) : Term::constant(e.atom);
    }
    if (e.children.empty() || !e.children[0].is_atom) fail(e, "expected a term");
    const std::string& head = e.children[0].atom;
    if (head == "iota") {
        if (e.children.size() != 3) fail(e, "iota takes a variable and a formula");
        const SExpr& v = e.children[1];
        if (!v.is_atom || !is_ident(v.atom)) fail(v, "iota binder must be an identifier");
        return Term::iota(v.atom, formula_from_sexpr(e.children[2], policy));
    }
    fail(e, "expected a term, found operator '" + head + "'");
}

Formula formula_from_sexpr(const SExpr& e, const VarPolicy& policy) {
    if (e.is_atom) {
        if (e.atom == "bot") return Formula::bot();
        fail(e, "expected a formula, found atom '" + e.atom + "'");
    }
    if (e.children.empty()) fail(e, "empty list is not a formula");
    const SExpr& h = e.children[0];
    if (!h.is_atom) fail(h, "formula head must be an atom");
    const std::string& head = h.atom;
    auto arity = [&](std::size_t n, const char* what) {
        if (e.children.size() != n + 1) fail(e, std::string(what) + " takes " + std::to_string(n) + " arguments");
    };
    auto binder_var = [&](const SExpr& v) -> const std::string& {
        if (!v.is_atom || !is_ident(v.atom)) fail(v, "binder variable must be an identifier");
        return v.atom;
    };

    if (head == "=") {
        arity(2, "=");
        return Formula::eq(term_from_sexpr(e.children[1], policy), term_from_sexpr(e.children[2], policy));
    }
    if (head == "ex!") {
        arity(1, "ex!");
        return Formula::exists_bang(term_from_sexpr(e.children[1], policy));
    }
    if (head == "and") {
        arity(2, "and");
        return Formula::conj(formula_from_sexpr(e.children[1], policy), formula_from_sexpr(e.children[2], policy));
    }
    if (head == "or") {
        arity(2, "or");
        return Formula::disj(formula_from_sexpr(e.children[1], policy), formula_from_sexpr(e.children[2], policy));
    }
    if (head == "->") {
        arity(2, "->");
        return Formula::imp(formula_from_sexpr(e.children[1], policy), formula_from_sexpr(e.children[2], policy));
    }
    if (head == "<->") {
        arity(2, "<->");
        return Formula::iff(formula_from_sexpr(e.children[1], policy), formula_from_sexpr(e.children[2], policy));
    }
    if (head == "not") {
        arity(1, "not");
        return Formula::neg(formula_from_sexpr(e.children[1], policy));
    }
    if (head == "forall") {
        arity(2, "forall");
        return Formula::forall(binder_var(e.children[1]), formula_from_sexpr(e.children[2], policy));
    }
    if (head == "exists") {
        arity(2, "exists");
        return Formula::exists(binder_var(e.children[1]), formula_from_sexpr(e.children[2], policy));
    }
    if (head == "iotaq") {
        arity(3, "iotaq");
        return Formula::iota_q(binder_var(e.children[1]), formula_from_sexpr(e.children[2], policy),
                               formula_from_sexpr(e.children[3], policy));
    }
    if (head == "abst") {
        arity(3, "abst");
        return Formula::abst(binder_var(e.children[1]), formula_from_sexpr(e.children[2], policy),
                             term_from_sexpr(e.children[3], policy));
    }
    if (head == "iota" || head == "bot") fail(e, "'" + head + "' is not a formula here");
    if (reserved_heads().count(head)) fail(e, "'" + head + "' cannot be used as a predicate symbol");
    if (!is_ident(head)) fail(h, "invalid predicate symbol '" + head + "'");
    std::vector<Term> args;
    args.reserve(e.children.size() - 1);
    for (std::size_t i = 1; i < e.children.size(); ++i) args.push_back(term_from_sexpr(e.children[i], policy));
    return Formula::pred(head, std::move(args));
}

Formula parse_formula(const std::string& text, const VarPolicy& policy) {
    std::size_t pos = 0;
    SExpr e = read_sexpr(text, pos);
    if (!at_end_of_input(text, pos)) {
        Cursor cur{text, pos, 1, 1};
        cur.skip_blank();
        throw ParseError(cur.line, cur.col, "trailing input after formula");
    }
    return formula_from_sexpr(e, policy);
}

Term parse_term(const std::string& text, const VarPolicy& policy) {
    std::size_t pos = 0;
    SExpr e = read_sexpr(text, pos);
    if (!at_end_of_input(text, pos)) {
        Cursor cur{text, pos, 1, 1};
        cur.skip_blank();
        throw ParseError(cur.line, cur.col, "trailing input after term");
    }
    return term_from_sexpr(e, policy);
}

namespace {

void print_term_to(std::ostringstream& out, const Term& t);

void print_formula_to(std::ostringstream& out, const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Pred: {
            out << '(' << f.symbol();
            for (const Term& t : f.args()) {
                out << ' ';
                print_term_to(out, t);
            }
            out << ')';
            return;
        }
        case K::Eq:
            out << "(= ";
            print_term_to(out, f.left());
            out << ' ';
            print_term_to(out, f.right());
            out << ')';
            return;
        case K::ExistsBang:
            out << "(ex! ";
            print_term_to(out, f.term());
            out << ')';
            return;
        case K::Bot:
            out << "bot";
            return;
        case K::And:
        case K::Or:
        case K::Imp:
        case K::Iff: {
            const char* op = f.kind() == K::And ? "and" : f.kind() == K::Or ? "or" : f.kind() == K::Imp ? "->" : "<->";
            out << '(' << op << ' ';
            print_formula_to(out, f.sub(0));
            out << ' ';
            print_formula_to(out, f.sub(1));
            out << ')';
            return;
        }
        case K::Forall:
        case K::Exists:
            out << '(' << (f.kind() == K::Forall ? "forall" : "exists") << ' ' << f.var() << ' ';
            print_formula_to(out, f.body());
            out << ')';
            return;
        case K::IotaQ:
            out << "(iotaq " << f.var() << ' ';
            print_formula_to(out, f.restrictor());
            out << ' ';
            print_formula_to(out, f.matrix());
            out << ')';
            return;
        case K::Abst:
            out << "(abst " << f.var() << ' ';
            print_formula_to(out, f.body());
            out << ' ';
            print_term_to(out, f.term());
            out << ')';
            return;
    }
}

void print_term_to(std::ostringstream& out, const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Var:
        case Term::Kind::Const:
            out << t.name();
            return;
        case Term::Kind::Iota:
            out << "(iota " << t.bound() << ' ';
            print_formula_to(out, t.body());
            out << ')';
            return;
    }
}

}  // namespace

std::string print_formula(const Formula& f) {
    std::ostringstream out;
    print_formula_to(out, f);
    return out.str();
}

std::string print_term(const Term& t) {
    std::ostringstream out;
    print_term_to(out, t);
    return out.str();
}

}  // namespace iotalog
