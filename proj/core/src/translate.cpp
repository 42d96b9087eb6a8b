#include "iotalog/translate.hpp"

namespace iotalog {

namespace {

[[noreturn]] void language_error(const std::string& detail) {
    throw CheckException(CheckError{CheckErrorKind::LanguageViolation, {}, detail});
}

[[noreturn]] void shape_error(const std::string& detail) {
    throw CheckException(CheckError{CheckErrorKind::PremiseShapeMismatch, {}, detail});
}

void all_vars(const Term& t, std::set<std::string>& out);

void all_vars(const Formula& f, std::set<std::string>& out) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Pred:
            for (const Term& t : f.args()) all_vars(t, out);
            return;
        case K::Eq:
            all_vars(f.left(), out);
            all_vars(f.right(), out);
            return;
        case K::ExistsBang:
            all_vars(f.term(), out);
            return;
        case K::Bot:
            return;
        case K::And:
        case K::Or:
        case K::Imp:
        case K::Iff:
            all_vars(f.sub(0), out);
            all_vars(f.sub(1), out);
            return;
        case K::Forall:
        case K::Exists:
            out.insert(f.var());
            all_vars(f.body(), out);
            return;
        case K::IotaQ:
            out.insert(f.var());
            all_vars(f.restrictor(), out);
            all_vars(f.matrix(), out);
            return;
        case K::Abst:
            out.insert(f.var());
            all_vars(f.body(), out);
            all_vars(f.term(), out);
            return;
    }
}

void all_vars(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Var:
            out.insert(t.name());
            return;
        case Term::Kind::Const:
            return;
        case Term::Kind::Iota:
            out.insert(t.bound());
            all_vars(t.body(), out);
            return;
    }
}

std::set<std::string> vars_of(const Formula& f) {
    std::set<std::string> out;
    all_vars(f, out);
    return out;
}

struct Tracer {
    TranslationTrace* trace;
    void clause(const char* tag) {
        if (trace) trace->clauses_used.emplace_back(tag);
    }
    void renamed(const std::string& from, const std::string& to) {
        if (trace) trace->renamed.emplace_back(from, to);
    }
};

Formula tau_rec(const Formula& f, Tracer& tr);

// Renames the bound variable of a description body when the equated term
// would otherwise be captured.
std::pair<std::string, Formula> tau_binder(const std::string& x, const Formula& body,
                                           const std::set<std::string>& must_avoid, Tracer& tr) {
    if (!must_avoid.count(x)) return {x, body};
    std::set<std::string> avoid = vars_of(body);
    avoid.insert(must_avoid.begin(), must_avoid.end());
    avoid.insert(x);
    std::string fresh = fresh_var(avoid);
    tr.renamed(x, fresh);
    return {fresh, substitute(body, x, Term::var(fresh))};
}

// Clause (d.i) for a description equated with a plain term, output
// oriented iotaq x [A, x=t].
Formula tau_description_eq(const Term& description, const Term& other, Tracer& tr) {
    tr.clause("d.i");
    std::set<std::string> avoid = free_vars(other);
    auto [x, body] = tau_binder(description.bound(), description.body(), avoid, tr);
    return Formula::iota_q(x, tau_rec(body, tr), Formula::eq(Term::var(x), other));
}

Formula tau_rec(const Formula& f, Tracer& tr) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Pred:
            for (const Term& t : f.args())
                if (t.is_iota())
                    language_error("iota term under a predicate is neither a primary nor a secondary occurrence");
            tr.clause("a");
            return f;
        case K::Eq: {
            bool li = f.left().is_iota();
            bool ri = f.right().is_iota();
            if (!li && !ri) {
                tr.clause("a");
                return f;
            }
            if (li && ri) {
                // iota x A = iota y B  ->  iotaq x [A', iotaq y [B', x=y]]
                tr.clause("d.i");
                const Term& l = f.left();
                const Term& r = f.right();
                std::set<std::string> avoid = free_vars(r);
                avoid.insert(r.bound());
                auto [x, a_body] = tau_binder(l.bound(), l.body(), avoid, tr);
                Formula inner = Formula::iota_q(r.bound(), tau_rec(r.body(), tr),
                                                Formula::eq(Term::var(x), Term::var(r.bound())));
                return Formula::iota_q(x, tau_rec(a_body, tr), inner);
            }
            // Orientation is normalized left: t = iota x A uses the same
            // output as iota x A = t.
            return li ? tau_description_eq(f.left(), f.right(), tr)
                      : tau_description_eq(f.right(), f.left(), tr);
        }
        case K::ExistsBang:
            if (f.term().is_iota())
                language_error("the existence predicate cannot apply to an iota term in this language");
            tr.clause("a");
            return f;
        case K::Bot:
            tr.clause("a");
            return f;
        case K::And:
            tr.clause("c");
            return Formula::conj(tau_rec(f.sub(0), tr), tau_rec(f.sub(1), tr));
        case K::Or:
            tr.clause("c");
            return Formula::disj(tau_rec(f.sub(0), tr), tau_rec(f.sub(1), tr));
        case K::Imp:
            tr.clause("c");
            return Formula::imp(tau_rec(f.sub(0), tr), tau_rec(f.sub(1), tr));
        case K::Iff:
            tr.clause("c");
            return Formula::iff(tau_rec(f.sub(0), tr), tau_rec(f.sub(1), tr));
        case K::Forall:
            tr.clause("b");
            return Formula::forall(f.var(), tau_rec(f.body(), tr));
        case K::Exists:
            tr.clause("b");
            return Formula::exists(f.var(), tau_rec(f.body(), tr));
        case K::IotaQ:
            language_error("input to tau already contains the binary quantifier");
        case K::Abst: {
            const std::string& x = f.var();
            const Formula& b = f.body();
            const Term& t = f.term();
            if (!t.is_iota()) {
                // (e.i): abst x B, t  ->  iotaq x [t=x, B]
                tr.clause("e.i");
                auto [v, body] = tau_binder(x, b, free_vars(t), tr);
                return Formula::iota_q(v, Formula::eq(t, Term::var(v)), tau_rec(body, tr));
            }
            // (e.ii): abst x B, iota y A  ->  iotaq v [A', B']
            tr.clause("e.ii");
            const std::string& y = t.bound();
            const Formula& a = t.body();
            std::string v = x;
            Formula a_renamed = a;
            Formula b_renamed = b;
            std::set<std::string> a_free = free_vars(a);
            a_free.erase(y);
            bool x_usable = !a_free.count(x) && is_free_for(Term::var(x), y, a);
            if (x_usable) {
                if (y != x) {
                    a_renamed = substitute(a, y, Term::var(x));
                    tr.renamed(y, x);
                }
            } else {
                std::set<std::string> avoid = vars_of(a);
                avoid.merge(vars_of(b));
                avoid.insert(x);
                avoid.insert(y);
                v = fresh_var(avoid);
                tr.renamed(y, v);
                tr.renamed(x, v);
                a_renamed = substitute(a, y, Term::var(v));
                b_renamed = substitute(b, x, Term::var(v));
            }
            return Formula::iota_q(v, tau_rec(a_renamed, tr), tau_rec(b_renamed, tr));
        }
    }
    language_error("unhandled formula in tau");
}

Formula upsilon_rec(const Formula& f, Tracer& tr) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Pred:
        case K::Eq:
        case K::ExistsBang:
        case K::Bot:
            tr.clause("a");
            return f;
        case K::And:
            tr.clause("c");
            return Formula::conj(upsilon_rec(f.sub(0), tr), upsilon_rec(f.sub(1), tr));
        case K::Or:
            tr.clause("c");
            return Formula::disj(upsilon_rec(f.sub(0), tr), upsilon_rec(f.sub(1), tr));
        case K::Imp:
            tr.clause("c");
            return Formula::imp(upsilon_rec(f.sub(0), tr), upsilon_rec(f.sub(1), tr));
        case K::Iff:
            tr.clause("c");
            return Formula::iff(upsilon_rec(f.sub(0), tr), upsilon_rec(f.sub(1), tr));
        case K::Forall:
            tr.clause("b");
            return Formula::forall(f.var(), upsilon_rec(f.body(), tr));
        case K::Exists:
            tr.clause("b");
            return Formula::exists(f.var(), upsilon_rec(f.body(), tr));
        case K::IotaQ: {
            // upsilon(iotaq x [A, B]) = abst x upsilon(B), iota x upsilon(A)
            tr.clause("upsilon");
            return Formula::abst(f.var(), upsilon_rec(f.matrix(), tr),
                                 Term::iota(f.var(), upsilon_rec(f.restrictor(), tr)));
        }
        case K::Abst:
            language_error("input to upsilon already contains predicate abstraction");
    }
    language_error("unhandled formula in upsilon");
}

void reject_iota_terms(const Formula& f) {
    if (!well_formed(f, LanguageId::L_IOTA))
        language_error("input to upsilon must be a well formed binary quantifier formula");
}

}  // namespace

Formula tau(const Formula& f, TranslationTrace* trace) {
    if (!well_formed(f, LanguageId::L_DELTA) && !well_formed(f, LanguageId::L_TLL))
        language_error("input to tau must be well formed in the abstraction or term operator language");
    Tracer tr{trace};
    return tau_rec(f, tr);
}

Formula upsilon(const Formula& f, TranslationTrace* trace) {
    reject_iota_terms(f);
    Tracer tr{trace};
    return upsilon_rec(f, tr);
}

Formula russell_expand(const Formula& f) {
    if (!f.is(Formula::Kind::IotaQ))
        shape_error("russell_expand applies to binary quantifier formulas");
    const std::string& x = f.var();
    const Formula& restrictor = f.restrictor();
    const Formula& matrix = f.matrix();
    std::set<std::string> avoid = free_vars(restrictor);
    avoid.insert(x);
    std::string y;
    for (std::set<std::string> tried = avoid;;) {
        y = fresh_var(tried);
        if (is_free_for(Term::var(y), x, restrictor)) break;
        tried.insert(y);
    }
    Formula uniqueness =
        Formula::forall(y, Formula::imp(substitute(restrictor, x, Term::var(y)),
                                        Formula::eq(Term::var(x), Term::var(y))));
    return Formula::exists(x, Formula::conj(Formula::conj(restrictor, uniqueness), matrix));
}

Formula bridge_restricted(const Formula& f) {
    using K = Formula::Kind;
    if (f.is(K::Eq)) {
        bool li = f.left().is_iota();
        bool ri = f.right().is_iota();
        if (li && !ri) {
            const Term& d = f.left();
            if (free_vars(f.right()).count(d.bound()))
                shape_error("the equated term depends on the description variable");
            return Formula::iota_q(d.bound(), d.body(), Formula::eq(Term::var(d.bound()), f.right()));
        }
        if (ri && !li) {
            const Term& d = f.right();
            if (free_vars(f.left()).count(d.bound()))
                shape_error("the equated term depends on the description variable");
            return Formula::iota_q(d.bound(), d.body(), Formula::eq(f.left(), Term::var(d.bound())));
        }
        shape_error("bridge expects exactly one side of the identity to be a description term");
    }
    if (f.is(K::IotaQ)) {
        const Formula& g = f.matrix();
        if (!g.is(K::Eq)) shape_error("bridge expects an identity matrix");
        const std::string& x = f.var();
        if (g.left().is_var() && g.left().name() == x && !free_vars(g.right()).count(x) &&
            !g.right().is_iota())
            return Formula::eq(Term::iota(x, f.restrictor()), g.right());
        if (g.right().is_var() && g.right().name() == x && !free_vars(g.left()).count(x) &&
            !g.left().is_iota())
            return Formula::eq(g.left(), Term::iota(x, f.restrictor()));
        shape_error("bridge expects the matrix to be an identity on the bound variable");
    }
    shape_error("bridge applies to description identities and identity-matrix descriptions");
}

}  // namespace iotalog
