#ifndef IOTALOG_PARSE_HPP
#define IOTALOG_PARSE_HPP

// S-expression reader and printer for the object languages.
//
//   term    := IDENT | (iota IDENT formula)
//   formula := (SYM term*) | (= term term) | (ex! term) | bot
//            | (and f f) | (or f f) | (-> f f) | (<-> f f) | (not f)
//            | (forall IDENT f) | (exists IDENT f)
//            | (iotaq IDENT f f) | (abst IDENT f term)
//
// IDENT: [a-zA-Z][a-zA-Z0-9_]*. Whether a bare IDENT in term position is a
// variable or a constant is decided by a VarPolicy; the default treats
// identifiers starting with u..z as variables, everything else as a
// constant. ';' starts a comment running to end of line. (not f) is sugar
// for (-> f bot) and is expanded while reading.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotalog/syntax.hpp"

namespace iotalog {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + message),
          line(line),
          column(column) {}
    int line;
    int column;
};

// Lexical class of term identifiers. When a declared set is present
// (e.g. from a "#vars x y z" script header) it alone decides; otherwise
// the u..z initial-letter convention applies.
class VarPolicy {
public:
    VarPolicy() = default;
    static VarPolicy declared(std::set<std::string> vars) {
        VarPolicy p;
        p.declared_ = std::move(vars);
        return p;
    }
    bool is_variable(const std::string& ident) const {
        if (declared_) return declared_->count(ident) != 0;
        char c = ident.empty() ? '\0' : ident[0];
        return c >= 'u' && c <= 'z';
    }

private:
    std::optional<std::set<std::string>> declared_;
};

// Raw s-expression datum with source position, shared by the formula
// reader and the proof script reader.
struct SExpr {
    bool is_atom = false;
    std::string atom;
    std::vector<SExpr> children;
    int line = 0;
    int column = 0;
};

// Reads one datum starting at text[pos], skipping whitespace and ';'
// comments; pos is left just past it. Throws ParseError at end of input.
SExpr read_sexpr(const std::string& text, std::size_t& pos, int first_line = 1);

// True when there is nothing but whitespace/comments from text[pos] on.
bool at_end_of_input(const std::string& text, std::size_t pos);

bool is_ident(const std::string& atom);

Formula formula_from_sexpr(const SExpr& e, const VarPolicy& policy);
Term term_from_sexpr(const SExpr& e, const VarPolicy& policy);

Formula parse_formula(const std::string& text, const VarPolicy& policy = VarPolicy());
Term parse_term(const std::string& text, const VarPolicy& policy = VarPolicy());

std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

}  // namespace iotalog

#endif  // IOTALOG_PARSE_HPP
