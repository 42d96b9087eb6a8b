#include "iotalog/syntax.hpp"

#include <algorithm>
#include <cassert>

namespace iotalog {

struct Term::Node {
    Kind kind;
    std::string name;               // Var/Const name, or Iota bound variable
    std::optional<Formula> body;    // Iota only
};

struct Formula::Node {
    Kind kind;
    std::string name;               // Pred symbol or binder variable
    std::vector<Term> terms;        // Pred args, Eq sides, ExistsBang/Abst arg
    std::vector<Formula> subs;      // subformulas
};

namespace {

void require_ident(const std::string& s, const char* what) {
    if (s.empty()) throw std::invalid_argument(std::string(what) + " must be nonempty");
}

}  // namespace

Term Term::var(std::string name) {
    require_ident(name, "variable name");
    return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), std::nullopt}));
}

Term Term::constant(std::string name) {
    require_ident(name, "constant name");
    return Term(std::make_shared<const Node>(Node{Kind::Const, std::move(name), std::nullopt}));
}

Term Term::iota(std::string bound_var, Formula body) {
    require_ident(bound_var, "bound variable");
    return Term(std::make_shared<const Node>(Node{Kind::Iota, std::move(bound_var), std::move(body)}));
}

Term::Kind Term::kind() const { return node_->kind; }

const std::string& Term::name() const {
    assert(kind() != Kind::Iota);
    return node_->name;
}

const std::string& Term::bound() const {
    assert(kind() == Kind::Iota);
    return node_->name;
}

const Formula& Term::body() const {
    assert(kind() == Kind::Iota);
    return *node_->body;
}

bool Term::operator==(const Term& other) const { return compare(*this, other) == 0; }

Formula Formula::pred(std::string symbol, std::vector<Term> args) {
    require_ident(symbol, "predicate symbol");
    return Formula(std::make_shared<const Node>(Node{Kind::Pred, std::move(symbol), std::move(args), {}}));
}

Formula Formula::eq(Term left, Term right) {
    return Formula(std::make_shared<const Node>(Node{Kind::Eq, "", {std::move(left), std::move(right)}, {}}));
}

Formula Formula::exists_bang(Term arg) {
    return Formula(std::make_shared<const Node>(Node{Kind::ExistsBang, "", {std::move(arg)}, {}}));
}

Formula Formula::bot() {
    static const Formula instance(std::make_shared<const Node>(Node{Kind::Bot, "", {}, {}}));
    return instance;
}

Formula Formula::conj(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{Kind::And, "", {}, {std::move(a), std::move(b)}}));
}

Formula Formula::disj(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{Kind::Or, "", {}, {std::move(a), std::move(b)}}));
}

Formula Formula::imp(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{Kind::Imp, "", {}, {std::move(a), std::move(b)}}));
}

Formula Formula::iff(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{Kind::Iff, "", {}, {std::move(a), std::move(b)}}));
}

Formula Formula::forall(std::string var, Formula body) {
    require_ident(var, "bound variable");
    return Formula(std::make_shared<const Node>(Node{Kind::Forall, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists(std::string var, Formula body) {
    require_ident(var, "bound variable");
    return Formula(std::make_shared<const Node>(Node{Kind::Exists, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::iota_q(std::string var, Formula restrictor, Formula matrix) {
    require_ident(var, "bound variable");
    return Formula(std::make_shared<const Node>(
        Node{Kind::IotaQ, std::move(var), {}, {std::move(restrictor), std::move(matrix)}}));
}

Formula Formula::abst(std::string var, Formula body, Term arg) {
    require_ident(var, "bound variable");
    return Formula(std::make_shared<const Node>(Node{Kind::Abst, std::move(var), {std::move(arg)}, {std::move(body)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::symbol() const {
    assert(kind() == Kind::Pred);
    return node_->name;
}

const std::vector<Term>& Formula::args() const {
    assert(kind() == Kind::Pred);
    return node_->terms;
}

const Term& Formula::left() const {
    assert(kind() == Kind::Eq);
    return node_->terms[0];
}

const Term& Formula::right() const {
    assert(kind() == Kind::Eq);
    return node_->terms[1];
}

const Term& Formula::term() const {
    assert(kind() == Kind::ExistsBang || kind() == Kind::Abst);
    return node_->terms[0];
}

const std::string& Formula::var() const {
    assert(kind() == Kind::Forall || kind() == Kind::Exists || kind() == Kind::IotaQ || kind() == Kind::Abst);
    return node_->name;
}

const Formula& Formula::body() const {
    assert(kind() == Kind::Forall || kind() == Kind::Exists || kind() == Kind::Abst);
    return node_->subs[0];
}

const Formula& Formula::sub(std::size_t i) const {
    assert(i < node_->subs.size());
    return node_->subs[i];
}

const Formula& Formula::restrictor() const {
    assert(kind() == Kind::IotaQ);
    return node_->subs[0];
}

const Formula& Formula::matrix() const {
    assert(kind() == Kind::IotaQ);
    return node_->subs[1];
}

bool Formula::operator==(const Formula& other) const { return compare(*this, other) == 0; }

int compare(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    int c = a.node_->name.compare(b.node_->name);
    if (c != 0) return c < 0 ? -1 : 1;
    if (a.kind() == Term::Kind::Iota) return compare(*a.node_->body, *b.node_->body);
    return 0;
}

int compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    int c = a.node_->name.compare(b.node_->name);
    if (c != 0) return c < 0 ? -1 : 1;
    const auto& at = a.node_->terms;
    const auto& bt = b.node_->terms;
    if (at.size() != bt.size()) return at.size() < bt.size() ? -1 : 1;
    for (std::size_t i = 0; i < at.size(); ++i) {
        c = compare(at[i], bt[i]);
        if (c != 0) return c;
    }
    const auto& as = a.node_->subs;
    const auto& bs = b.node_->subs;
    if (as.size() != bs.size()) return as.size() < bs.size() ? -1 : 1;
    for (std::size_t i = 0; i < as.size(); ++i) {
        c = compare(as[i], bs[i]);
        if (c != 0) return c;
    }
    return 0;
}

const char* language_name(LanguageId lang) {
    switch (lang) {
        case LanguageId::L_INF: return "L_INF";
        case LanguageId::L_IOTA: return "L_IOTA";
        case LanguageId::L_TLL: return "L_TLL";
        case LanguageId::L_DELTA: return "L_DELTA";
    }
    return "?";
}

std::optional<LanguageId> language_from_name(const std::string& name) {
    if (name == "L_INF") return LanguageId::L_INF;
    if (name == "L_IOTA") return LanguageId::L_IOTA;
    if (name == "L_TLL") return LanguageId::L_TLL;
    if (name == "L_DELTA") return LanguageId::L_DELTA;
    return std::nullopt;
}

bool is_atomic(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Pred:
        case Formula::Kind::Eq:
        case Formula::Kind::ExistsBang:
        case Formula::Kind::Bot:
            return true;
        default:
            return false;
    }
}

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out);

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Pred:
            for (const Term& t : f.args()) collect_free(t, bound, out);
            return;
        case K::Eq:
            collect_free(f.left(), bound, out);
            collect_free(f.right(), bound, out);
            return;
        case K::ExistsBang:
            collect_free(f.term(), bound, out);
            return;
        case K::Bot:
            return;
        case K::And:
        case K::Or:
        case K::Imp:
        case K::Iff:
            collect_free(f.sub(0), bound, out);
            collect_free(f.sub(1), bound, out);
            return;
        case K::Forall:
        case K::Exists: {
            bool inserted = bound.insert(f.var()).second;
            collect_free(f.body(), bound, out);
            if (inserted) bound.erase(f.var());
            return;
        }
        case K::IotaQ: {
            // x is bound in both the restrictor and the matrix.
            bool inserted = bound.insert(f.var()).second;
            collect_free(f.restrictor(), bound, out);
            collect_free(f.matrix(), bound, out);
            if (inserted) bound.erase(f.var());
            return;
        }
        case K::Abst: {
            // abst x B, t binds x in B only; the argument t is outside.
            bool inserted = bound.insert(f.var()).second;
            collect_free(f.body(), bound, out);
            if (inserted) bound.erase(f.var());
            collect_free(f.term(), bound, out);
            return;
        }
    }
}

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Var:
            if (!bound.count(t.name())) out.insert(t.name());
            return;
        case Term::Kind::Const:
            return;
        case Term::Kind::Iota: {
            bool inserted = bound.insert(t.bound()).second;
            collect_free(t.body(), bound, out);
            if (inserted) bound.erase(t.bound());
            return;
        }
    }
}

bool free_in(const std::string& x, const Formula& f) { return free_vars(f).count(x) != 0; }

// free_for(t, x, e): no free occurrence of x may sit below a binder of a
// variable that occurs free in t (fv below).
bool free_for_term(const std::set<std::string>& fv, const std::string& x, const Term& u);

bool free_for_formula(const std::set<std::string>& fv, const std::string& x, const Formula& a) {
    using K = Formula::Kind;
    switch (a.kind()) {
        case K::Pred: {
            for (const Term& t : a.args())
                if (!free_for_term(fv, x, t)) return false;
            return true;
        }
        case K::Eq:
            return free_for_term(fv, x, a.left()) && free_for_term(fv, x, a.right());
        case K::ExistsBang:
            return free_for_term(fv, x, a.term());
        case K::Bot:
            return true;
        case K::And:
        case K::Or:
        case K::Imp:
        case K::Iff:
            return free_for_formula(fv, x, a.sub(0)) && free_for_formula(fv, x, a.sub(1));
        case K::Forall:
        case K::Exists: {
            if (a.var() == x) return true;  // no free x below
            if (fv.count(a.var())) return !free_in(x, a.body());
            return free_for_formula(fv, x, a.body());
        }
        case K::IotaQ: {
            if (a.var() == x) return true;
            if (fv.count(a.var()))
                return !free_in(x, a.restrictor()) && !free_in(x, a.matrix());
            return free_for_formula(fv, x, a.restrictor()) &&
                   free_for_formula(fv, x, a.matrix());
        }
        case K::Abst: {
            if (!free_for_term(fv, x, a.term())) return false;
            if (a.var() == x) return true;
            if (fv.count(a.var())) return !free_in(x, a.body());
            return free_for_formula(fv, x, a.body());
        }
    }
    return true;
}

bool free_for_term(const std::set<std::string>& fv, const std::string& x, const Term& u) {
    switch (u.kind()) {
        case Term::Kind::Var:
        case Term::Kind::Const:
            return true;
        case Term::Kind::Iota: {
            if (u.bound() == x) return true;
            if (fv.count(u.bound())) return !free_in(x, u.body());
            return free_for_formula(fv, x, u.body());
        }
    }
    return true;
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

bool is_free_for(const Term& t, const std::string& x, const Formula& a) {
    if (t.is_const()) return true;
    std::set<std::string> fv = free_vars(t);
    return free_for_formula(fv, x, a);
}

bool is_free_for(const Term& t, const std::string& x, const Term& u) {
    if (t.is_const()) return true;
    std::set<std::string> fv = free_vars(t);
    return free_for_term(fv, x, u);
}

namespace {

Term subst_term(const Term& u, const std::string& x, const Term& t);

Formula subst_formula(const Formula& a, const std::string& x, const Term& t) {
    using K = Formula::Kind;
    if (!free_in(x, a)) return a;
    switch (a.kind()) {
        case K::Pred: {
            std::vector<Term> args;
            args.reserve(a.args().size());
            for (const Term& u : a.args()) args.push_back(subst_term(u, x, t));
            return Formula::pred(a.symbol(), std::move(args));
        }
        case K::Eq:
            return Formula::eq(subst_term(a.left(), x, t), subst_term(a.right(), x, t));
        case K::ExistsBang:
            return Formula::exists_bang(subst_term(a.term(), x, t));
        case K::Bot:
            return a;
        case K::And:
            return Formula::conj(subst_formula(a.sub(0), x, t), subst_formula(a.sub(1), x, t));
        case K::Or:
            return Formula::disj(subst_formula(a.sub(0), x, t), subst_formula(a.sub(1), x, t));
        case K::Imp:
            return Formula::imp(subst_formula(a.sub(0), x, t), subst_formula(a.sub(1), x, t));
        case K::Iff:
            return Formula::iff(subst_formula(a.sub(0), x, t), subst_formula(a.sub(1), x, t));
        case K::Forall:
            if (a.var() == x) return a;
            return Formula::forall(a.var(), subst_formula(a.body(), x, t));
        case K::Exists:
            if (a.var() == x) return a;
            return Formula::exists(a.var(), subst_formula(a.body(), x, t));
        case K::IotaQ:
            if (a.var() == x) return a;
            return Formula::iota_q(a.var(), subst_formula(a.restrictor(), x, t),
                                   subst_formula(a.matrix(), x, t));
        case K::Abst: {
            Term arg = subst_term(a.term(), x, t);
            if (a.var() == x) {
                if (arg == a.term()) return a;
                return Formula::abst(a.var(), a.body(), std::move(arg));
            }
            return Formula::abst(a.var(), subst_formula(a.body(), x, t), std::move(arg));
        }
    }
    return a;
}

Term subst_term(const Term& u, const std::string& x, const Term& t) {
    switch (u.kind()) {
        case Term::Kind::Var:
            return u.name() == x ? t : u;
        case Term::Kind::Const:
            return u;
        case Term::Kind::Iota:
            if (u.bound() == x || !free_vars(u).count(x)) return u;
            return Term::iota(u.bound(), subst_formula(u.body(), x, t));
    }
    return u;
}

}  // namespace

Formula substitute(const Formula& a, const std::string& x, const Term& t) {
    if (!is_free_for(t, x, a))
        throw CaptureError("substitution of " + (t.is_iota() ? std::string("an iota term") : t.name()) +
                           " for " + x + " would capture a variable");
    return subst_formula(a, x, t);
}

Term substitute(const Term& u, const std::string& x, const Term& t) {
    if (!is_free_for(t, x, u))
        throw CaptureError("substitution for " + x + " in a term would capture a variable");
    return subst_term(u, x, t);
}

namespace {

// Positions in which an iota term may sit, per language.
enum class IotaPosition { Forbidden, BesideEq, BesideEqOrAbst };

bool wf_term(const Term& t, LanguageId lang, IotaPosition pos, bool at_legal_slot);

bool wf_formula(const Formula& f, LanguageId lang) {
    using K = Formula::Kind;
    IotaPosition pos;
    switch (lang) {
        case LanguageId::L_INF:
        case LanguageId::L_IOTA: pos = IotaPosition::Forbidden; break;
        case LanguageId::L_TLL: pos = IotaPosition::BesideEq; break;
        case LanguageId::L_DELTA: pos = IotaPosition::BesideEqOrAbst; break;
    }
    switch (f.kind()) {
        case K::Pred:
            for (const Term& t : f.args())
                if (!wf_term(t, lang, pos, false)) return false;
            return true;
        case K::Eq:
            return wf_term(f.left(), lang, pos, pos != IotaPosition::Forbidden) &&
                   wf_term(f.right(), lang, pos, pos != IotaPosition::Forbidden);
        case K::ExistsBang:
            return wf_term(f.term(), lang, pos, false);
        case K::Bot:
            return true;
        case K::And:
        case K::Or:
        case K::Imp:
        case K::Iff:
            return wf_formula(f.sub(0), lang) && wf_formula(f.sub(1), lang);
        case K::Forall:
        case K::Exists:
            return wf_formula(f.body(), lang);
        case K::IotaQ:
            if (lang != LanguageId::L_IOTA) return false;
            return wf_formula(f.restrictor(), lang) && wf_formula(f.matrix(), lang);
        case K::Abst:
            if (lang != LanguageId::L_DELTA) return false;
            return wf_formula(f.body(), lang) &&
                   wf_term(f.term(), lang, pos, /*at_legal_slot=*/true);
    }
    return false;
}

bool wf_term(const Term& t, LanguageId lang, IotaPosition pos, bool at_legal_slot) {
    switch (t.kind()) {
        case Term::Kind::Var:
        case Term::Kind::Const:
            return true;
        case Term::Kind::Iota:
            if (pos == IotaPosition::Forbidden || !at_legal_slot) return false;
            return wf_formula(t.body(), lang);
    }
    return false;
}

}  // namespace

bool well_formed(const Formula& f, LanguageId lang) { return wf_formula(f, lang); }

bool well_formed(const Term& t, LanguageId lang) {
    if (t.is_iota()) return lang == LanguageId::L_TLL || lang == LanguageId::L_DELTA
                                ? wf_formula(t.body(), lang)
                                : false;
    return true;
}

namespace {

// Alpha comparison with parallel binder environments. Bound variables are
// compared by binder index, free variables by name.
struct AlphaEnv {
    std::vector<std::pair<std::string, std::string>> frames;

    // Returns: -1 both free; otherwise frame index from innermost (>= 0) if
    // both bound at the same depth; -2 on mismatch.
    int resolve(const std::string& a, const std::string& b) const {
        for (std::size_t i = frames.size(); i-- > 0;) {
            bool la = frames[i].first == a;
            bool lb = frames[i].second == b;
            if (la || lb) return (la && lb) ? static_cast<int>(i) : -2;
        }
        return -1;
    }
};

bool alpha_term(const Term& a, const Term& b, AlphaEnv& env);

bool alpha_formula(const Formula& a, const Formula& b, AlphaEnv& env) {
    using K = Formula::Kind;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case K::Pred: {
            if (a.symbol() != b.symbol() || a.args().size() != b.args().size()) return false;
            for (std::size_t i = 0; i < a.args().size(); ++i)
                if (!alpha_term(a.args()[i], b.args()[i], env)) return false;
            return true;
        }
        case K::Eq:
            return alpha_term(a.left(), b.left(), env) && alpha_term(a.right(), b.right(), env);
        case K::ExistsBang:
            return alpha_term(a.term(), b.term(), env);
        case K::Bot:
            return true;
        case K::And:
        case K::Or:
        case K::Imp:
        case K::Iff:
            return alpha_formula(a.sub(0), b.sub(0), env) && alpha_formula(a.sub(1), b.sub(1), env);
        case K::Forall:
        case K::Exists: {
            env.frames.emplace_back(a.var(), b.var());
            bool ok = alpha_formula(a.body(), b.body(), env);
            env.frames.pop_back();
            return ok;
        }
        case K::IotaQ: {
            env.frames.emplace_back(a.var(), b.var());
            bool ok = alpha_formula(a.restrictor(), b.restrictor(), env) &&
                      alpha_formula(a.matrix(), b.matrix(), env);
            env.frames.pop_back();
            return ok;
        }
        case K::Abst: {
            if (!alpha_term(a.term(), b.term(), env)) return false;
            env.frames.emplace_back(a.var(), b.var());
            bool ok = alpha_formula(a.body(), b.body(), env);
            env.frames.pop_back();
            return ok;
        }
    }
    return false;
}

bool alpha_term(const Term& a, const Term& b, AlphaEnv& env) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Term::Kind::Var: {
            int r = env.resolve(a.name(), b.name());
            if (r == -2) return false;
            if (r == -1) return a.name() == b.name();
            return true;
        }
        case Term::Kind::Const:
            return a.name() == b.name();
        case Term::Kind::Iota: {
            env.frames.emplace_back(a.bound(), b.bound());
            bool ok = alpha_formula(a.body(), b.body(), env);
            env.frames.pop_back();
            return ok;
        }
    }
    return false;
}

}  // namespace

bool alpha_eq(const Formula& a, const Formula& b) {
    AlphaEnv env;
    return alpha_formula(a, b, env);
}

bool alpha_eq(const Term& a, const Term& b) {
    AlphaEnv env;
    return alpha_term(a, b, env);
}

std::string fresh_var(const std::set<std::string>& avoid) {
    static const char* base[] = {"y", "z", "v", "w"};
    for (int round = 0;; ++round) {
        for (const char* stem : base) {
            std::string candidate = round == 0 ? std::string(stem) : std::string(stem) + std::to_string(round);
            if (!avoid.count(candidate)) return candidate;
        }
    }
}

}  // namespace iotalog
