#ifndef IOTALOG_SYNTAX_HPP
#define IOTALOG_SYNTAX_HPP

// Object languages for intuitionist negative free logic with definite
// descriptions. Terms are variables, constants, or description terms
// "iota x F"; formulas cover the usual connectives and quantifiers plus
// an existence predicate ex!, the binary description quantifier
// iotaq x [F, G] ("the F is G"), and predicate abstraction
// abst x B, t ("t falls under the predicate abstracted from B").
//
// All values are immutable after construction and freely shareable;
// every operation in this header is pure.

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace iotalog {

class Formula;

// Raised by substitute() when the substituted term would be captured.
// The kernel rejects capture instead of renaming around it.
class CaptureError : public std::runtime_error {
public:
    explicit CaptureError(const std::string& what) : std::runtime_error(what) {}
};

class Term {
public:
    enum class Kind { Var, Const, Iota };

    static Term var(std::string name);
    static Term constant(std::string name);
    static Term iota(std::string bound_var, Formula body);

    Kind kind() const;
    bool is_var() const { return kind() == Kind::Var; }
    bool is_const() const { return kind() == Kind::Const; }
    bool is_iota() const { return kind() == Kind::Iota; }

    // Var / Const name.
    const std::string& name() const;
    // Iota: bound variable and body.
    const std::string& bound() const;
    const Formula& body() const;

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
    friend class Formula;
    friend int compare(const Term&, const Term&);
};

class Formula {
public:
    enum class Kind {
        Pred,        // P(t1, ..., tn), n >= 0
        Eq,          // t1 = t2
        ExistsBang,  // ex! t
        Bot,
        And,
        Or,
        Imp,
        Iff,
        Forall,
        Exists,
        IotaQ,       // iotaq x [restrictor, matrix]
        Abst         // abst x body, arg
    };

    static Formula pred(std::string symbol, std::vector<Term> args);
    static Formula eq(Term left, Term right);
    static Formula exists_bang(Term arg);
    static Formula bot();
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula imp(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);
    // not A is sugar for A -> bot; there is no Neg node.
    static Formula neg(Formula a) { return imp(std::move(a), bot()); }
    static Formula forall(std::string var, Formula body);
    static Formula exists(std::string var, Formula body);
    static Formula iota_q(std::string var, Formula restrictor, Formula matrix);
    static Formula abst(std::string var, Formula body, Term arg);

    Kind kind() const;
    bool is(Kind k) const { return kind() == k; }

    // Pred
    const std::string& symbol() const;
    const std::vector<Term>& args() const;
    // Eq
    const Term& left() const;
    const Term& right() const;
    // ExistsBang / Abst argument term
    const Term& term() const;
    // Binder variable (Forall/Exists/IotaQ/Abst)
    const std::string& var() const;
    // Forall/Exists/Abst body; for And/Or/Imp/Iff, sub(0)/sub(1)
    const Formula& body() const;
    const Formula& sub(std::size_t i) const;
    // IotaQ
    const Formula& restrictor() const;
    const Formula& matrix() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
    friend class Term;
    friend int compare(const Formula&, const Formula&);
};

// Total structural order, used for deterministic set ordering and output.
int compare(const Term& a, const Term& b);
int compare(const Formula& a, const Formula& b);
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

// The three-plus-one object languages.
//
//   L_INF    no description vocabulary at all
//   L_IOTA   binary quantifier iotaq; no iota terms, no abstraction
//   L_TLL    iota terms, but only immediately beside =
//   L_DELTA  iota terms beside = (primary) or as abstraction argument
//            (secondary); abstraction; no binary quantifier
enum class LanguageId { L_INF, L_IOTA, L_TLL, L_DELTA };

const char* language_name(LanguageId lang);
std::optional<LanguageId> language_from_name(const std::string& name);

// Atomic formulas: Pred, Eq, ExistsBang and Bot. ex! counts as atomic so
// that the atomicity side conditions of botE, eqE and AD apply to it.
bool is_atomic(const Formula& f);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);

// True iff no free occurrence of x in the expression lies below a binder
// that binds a free variable of t.
bool is_free_for(const Term& t, const std::string& x, const Formula& a);
bool is_free_for(const Term& t, const std::string& x, const Term& u);

// Replace every free occurrence of x by t. Requires is_free_for(t, x, .).
// Throws CaptureError otherwise; no renaming is ever performed.
Formula substitute(const Formula& a, const std::string& x, const Term& t);
Term substitute(const Term& u, const std::string& x, const Term& t);

bool well_formed(const Formula& f, LanguageId lang);
bool well_formed(const Term& t, LanguageId lang);

// Identity up to consistent renaming of bound variables.
bool alpha_eq(const Formula& a, const Formula& b);
bool alpha_eq(const Term& a, const Term& b);

// First variable of the fixed enumeration y, z, v, w, y1, z1, v1, w1, y2,
// ... that is not in `avoid`. Shared by the translations and the derived
// rule expansions so that generated formulas are reproducible.
std::string fresh_var(const std::set<std::string>& avoid);

}  // namespace iotalog

#endif  // IOTALOG_SYNTAX_HPP
