#include "iotalog/derived.hpp"

#include <functional>

namespace iotalog {

namespace {

[[noreturn]] void shape_error(const std::string& detail) {
    throw CheckException(CheckError{CheckErrorKind::PremiseShapeMismatch, {}, detail});
}

void collect_labels(const Proof& p, std::set<std::string>& out) {
    if (p.rule_id() == Rule::Assume) out.insert(p.label());
    if (p.meta().discharge) out.insert(*p.meta().discharge);
    for (const Proof& q : p.premises()) collect_labels(q, out);
}

std::string fresh_label(const std::set<std::string>& used, int hint) {
    for (int i = hint;; ++i) {
        std::string candidate = "d" + std::to_string(i);
        if (!used.count(candidate)) return candidate;
    }
}

using LeafReplacer = std::function<std::optional<Proof>(const std::string&, const Formula&)>;

Proof replace_leaves(const Proof& p, const LeafReplacer& fn) {
    if (p.rule_id() == Rule::Assume) {
        auto replacement = fn(p.label(), p.conclusion());
        return replacement ? *replacement : p;
    }
    if (p.rule_id() == Rule::Axiom) return p;
    std::vector<Proof> premises;
    premises.reserve(p.premises().size());
    for (const Proof& q : p.premises()) premises.push_back(replace_leaves(q, fn));
    return Proof::rule(p.rule_id(), p.conclusion(), std::move(premises), p.meta());
}

Formula subst_or_fail(const Formula& a, const std::string& x, const Term& t, const char* what) {
    try {
        return substitute(a, x, t);
    } catch (const CaptureError&) {
        shape_error(std::string(what) + ": substitution would capture a variable");
    }
}

struct LLWorld {
    std::string x;
    Formula restrictor;
    Term subject;

    // forall y* (iota x F = y* <-> forall x (F <-> x = y*)) with y* fresh.
    Proof axiom_instance() const {
        std::set<std::string> avoid = free_vars(restrictor);
        avoid.merge(free_vars(subject));
        avoid.insert(x);
        std::string y = fresh_var(avoid);
        AxiomBindings b;
        b.formulas.emplace("F", restrictor);
        b.vars.emplace("x", x);
        b.vars.emplace("y", y);
        return Proof::axiom(AxiomId::LL, std::move(b), LanguageId::L_TLL);
    }

    // iota x F = t <-> forall x (F <-> x = t), from an ex!t premise.
    Proof law_at_subject(const Proof& exists_subject) const {
        Formula conclusion = Formula::iff(
            Formula::eq(Term::iota(x, restrictor), subject),
            Formula::forall(x, Formula::iff(restrictor, Formula::eq(Term::var(x), subject))));
        return Proof::rule(Rule::ForallE, std::move(conclusion), {axiom_instance(), exists_subject});
    }
};

LLWorld ll_world_from_major(const Proof& major) {
    const Formula& c = major.conclusion();
    if (!c.is(Formula::Kind::Eq) || !c.left().is_iota())
        shape_error("major premise must equate a description term with a term");
    if (free_vars(c.right()).count(c.left().bound()))
        shape_error("the description variable may not occur in the equated term");
    return LLWorld{c.left().bound(), c.left().body(), c.right()};
}

Proof expand_iota_it_in_ll(const DerivedInstance& in) {
    if (in.premises.size() != 3) shape_error("IotaITInLL takes premises [ex!t, Xi, Pi]");
    if (!in.bound_var || !in.restrictor || !in.eigen || !in.label)
        shape_error("IotaITInLL needs bound_var, restrictor, eigen and label");
    const Proof& exists_t = in.premises[0];
    const Proof& xi = in.premises[1];
    const Proof& pi = in.premises[2];
    if (!exists_t.conclusion().is(Formula::Kind::ExistsBang))
        shape_error("first premise must conclude ex!t");
    const Term& t = exists_t.conclusion().term();
    const std::string& x = *in.bound_var;
    const Formula& f = *in.restrictor;
    const std::string& z = *in.eigen;
    if (free_vars(t).count(x)) shape_error("the bound variable may not occur in the equated term");

    Term zv = Term::var(z);
    Formula f_z = subst_or_fail(f, x, zv, "IotaITInLL");
    Formula z_eq_t = Formula::eq(zv, t);
    if (xi.conclusion() != f_z) shape_error("Xi must conclude the restrictor at the eigenvariable");
    if (pi.conclusion() != z_eq_t) shape_error("Pi must conclude that the eigenvariable equals the term");

    std::set<std::string> used;
    collect_labels(xi, used);
    collect_labels(pi, used);
    collect_labels(exists_t, used);
    std::string l_iff = fresh_label(used, 1);
    used.insert(l_iff);
    std::string l_all = fresh_label(used, 2);

    const std::string& original = *in.label;
    Proof xi2 = replace_leaves(xi, [&](const std::string& lbl, const Formula& g) -> std::optional<Proof> {
        if (lbl == original && g == z_eq_t) return Proof::assume(l_iff, g);
        return std::nullopt;
    });
    Proof pi2 = replace_leaves(pi, [&](const std::string& lbl, const Formula& g) -> std::optional<Proof> {
        if (lbl != original) return std::nullopt;
        if (g == f_z) return Proof::assume(l_iff, g);
        if (g == Formula::exists_bang(zv)) return Proof::assume(l_all, g);
        return std::nullopt;
    });

    ProofMeta iff_meta;
    iff_meta.discharge = l_iff;
    Proof iff_step = Proof::rule(Rule::IffI, Formula::iff(f_z, z_eq_t), {pi2, xi2}, iff_meta);

    Formula generalized = Formula::forall(x, Formula::iff(f, Formula::eq(Term::var(x), t)));
    ProofMeta all_meta;
    all_meta.discharge = l_all;
    all_meta.eigen = z;
    Proof all_step = Proof::rule(Rule::ForallI, generalized, {iff_step}, all_meta);

    LLWorld world{x, f, t};
    Proof law = world.law_at_subject(exists_t);
    return Proof::rule(Rule::IffE2, Formula::eq(Term::iota(x, f), t), {law, all_step});
}

Proof expand_iota_ir_in_t(const DerivedInstance& in) {
    if (in.premises.size() != 3) shape_error("IotaIRInT takes premises [F_t, ex!t, Pi]");
    if (!in.bound_var || !in.restrictor || !in.eigen || !in.label)
        shape_error("IotaIRInT needs bound_var, restrictor, eigen and label");
    const Proof& f_t = in.premises[0];
    const Proof& exists_t = in.premises[1];
    const Proof& pi = in.premises[2];
    if (!exists_t.conclusion().is(Formula::Kind::ExistsBang))
        shape_error("second premise must conclude ex!t");
    const Term& t = exists_t.conclusion().term();
    const std::string& x = *in.bound_var;
    const Formula& f = *in.restrictor;
    const std::string& z = *in.eigen;
    const std::string& label = *in.label;
    if (free_vars(t).count(x)) shape_error("the bound variable may not occur in the equated term");
    if (free_vars(t).count(z)) shape_error("the eigenvariable may not occur in the equated term");
    if (!free_vars(f).count(x))
        shape_error("IotaIRInT needs the bound variable to occur in the restrictor (strict eqE)");

    Term zv = Term::var(z);
    Formula f_z = subst_or_fail(f, x, zv, "IotaIRInT");
    if (f_t.conclusion() != subst_or_fail(f, x, t, "IotaIRInT"))
        shape_error("first premise must conclude the restrictor at the term");
    Formula z_eq_t = Formula::eq(zv, t);
    if (pi.conclusion() != z_eq_t) shape_error("Pi must conclude that the eigenvariable equals the term");

    // From [z=t] recover F_z^x out of F_t^x: flip the identity with an
    // eqI detour, then rewrite.
    Proof leaf = Proof::assume(label, z_eq_t);
    Proof ex_z = Proof::rule(Rule::AD, Formula::exists_bang(zv), {leaf});
    Proof z_eq_z = Proof::rule(Rule::EqI, Formula::eq(zv, zv), {ex_z});
    std::set<std::string> avoid = free_vars(f);
    avoid.merge(free_vars(t));
    avoid.insert(x);
    avoid.insert(z);
    std::string w = fresh_var(avoid);
    ProofMeta flip_meta;
    flip_meta.eq_template = {w, Formula::eq(Term::var(w), zv)};
    Proof t_eq_z = Proof::rule(Rule::EqE, Formula::eq(t, zv), {leaf, z_eq_z}, flip_meta);
    ProofMeta rewrite_meta;
    rewrite_meta.eq_template = {x, f};
    Proof xi = Proof::rule(Rule::EqE, f_z, {t_eq_z, f_t}, rewrite_meta);

    ProofMeta it_meta;
    it_meta.eigen = z;
    it_meta.discharge = label;
    return Proof::rule(Rule::IotaIT, Formula::eq(Term::iota(x, f), t), {exists_t, xi, pi}, it_meta);
}

Proof expand_iota_e1r_in_t(const DerivedInstance& in) {
    if (in.premises.size() != 2) shape_error("IotaE1RInT takes premises [major, Pi]");
    if (!in.eigen || !in.label) shape_error("IotaE1RInT needs eigen and label");
    const Proof& major = in.premises[0];
    const Proof& pi = in.premises[1];
    LLWorld world = ll_world_from_major(major);
    const std::string& x = world.x;
    const Formula& f = world.restrictor;
    const Term& t = world.subject;
    const std::string& z = *in.eigen;
    const std::string& label = *in.label;
    if (free_vars(t).count(z)) shape_error("the eigenvariable may not occur in the equated term");

    Term zv = Term::var(z);
    Formula f_z = subst_or_fail(f, x, zv, "IotaE1RInT");
    Formula f_t = subst_or_fail(f, x, t, "IotaE1RInT");
    Formula z_eq_t = Formula::eq(zv, t);

    // exists x (F and x=t) from the major premise alone.
    Proof ex_t = Proof::rule(Rule::IotaE3T, Formula::exists_bang(t), {major});
    Proof t_eq_t = Proof::rule(Rule::EqI, Formula::eq(t, t), {ex_t});
    Proof f_at_t = Proof::rule(Rule::IotaE1T, f_t, {major, t_eq_t});
    Formula pair_body = Formula::conj(f, Formula::eq(Term::var(x), t));
    Formula pair_t = Formula::conj(f_t, Formula::eq(t, t));
    Proof pair = Proof::rule(Rule::AndI, pair_t, {f_at_t, t_eq_t});
    Proof existential = Proof::rule(Rule::ExistsI, Formula::exists(x, pair_body), {pair, ex_t});

    std::set<std::string> used;
    collect_labels(pi, used);
    collect_labels(major, used);
    std::string l2 = fresh_label(used, 1);
    Formula pair_z = Formula::conj(f_z, z_eq_t);
    Proof pi2 = replace_leaves(pi, [&](const std::string& lbl, const Formula& g) -> std::optional<Proof> {
        if (lbl != label) return std::nullopt;
        if (g == f_z) return Proof::rule(Rule::AndE1, f_z, {Proof::assume(l2, pair_z)});
        if (g == z_eq_t) return Proof::rule(Rule::AndE2, z_eq_t, {Proof::assume(l2, pair_z)});
        if (g == Formula::exists_bang(zv)) return Proof::assume(l2, g);
        return std::nullopt;
    });

    ProofMeta e_meta;
    e_meta.eigen = z;
    e_meta.discharge = l2;
    return Proof::rule(Rule::ExistsE, pi.conclusion(), {existential, pi2}, e_meta);
}

Proof expand_iota_e2r_in_t(const DerivedInstance& in) {
    if (in.premises.size() != 5)
        shape_error("IotaE2RInT takes premises [major, ex!t1, ex!t2, F_t1, F_t2]");
    const Proof& major = in.premises[0];
    const Proof& ex1 = in.premises[1];
    const Proof& ex2 = in.premises[2];
    const Proof& f1 = in.premises[3];
    const Proof& f2 = in.premises[4];
    LLWorld world = ll_world_from_major(major);
    const std::string& x = world.x;
    const Formula& f = world.restrictor;
    const Term& t = world.subject;
    if (!ex1.conclusion().is(Formula::Kind::ExistsBang) || !ex2.conclusion().is(Formula::Kind::ExistsBang))
        shape_error("premises two and three must conclude existence claims");
    const Term& t1 = ex1.conclusion().term();
    const Term& t2 = ex2.conclusion().term();
    if (t1 == t || t2 == t || t1 == t2)
        shape_error("IotaE2RInT needs pairwise distinct terms (strict eqE)");
    if (f1.conclusion() != subst_or_fail(f, x, t1, "IotaE2RInT") ||
        f2.conclusion() != subst_or_fail(f, x, t2, "IotaE2RInT"))
        shape_error("premises four and five must be the restrictor at the two terms");

    Proof s1 = Proof::rule(Rule::IotaE2T, Formula::eq(t1, t), {major, f1, ex1});
    Proof s2 = Proof::rule(Rule::IotaE2T, Formula::eq(t2, t), {major, f2, ex2});
    Proof q1 = Proof::rule(Rule::EqI, Formula::eq(t2, t2), {ex2});

    std::set<std::string> avoid = free_vars(f);
    avoid.merge(free_vars(t));
    avoid.merge(free_vars(t1));
    avoid.merge(free_vars(t2));
    avoid.insert(x);
    std::string w = fresh_var(avoid);

    ProofMeta flip_meta;
    flip_meta.eq_template = {w, Formula::eq(Term::var(w), t2)};
    Proof t_eq_t2 = Proof::rule(Rule::EqE, Formula::eq(t, t2), {s2, q1}, flip_meta);
    ProofMeta final_meta;
    final_meta.eq_template = {w, Formula::eq(t1, Term::var(w))};
    return Proof::rule(Rule::EqE, Formula::eq(t1, t2), {t_eq_t2, s1}, final_meta);
}

}  // namespace

Proof expand_derived(const DerivedInstance& instance) {
    switch (instance.rule) {
        case DerivedRule::IotaITInLL: return expand_iota_it_in_ll(instance);
        case DerivedRule::IotaIRInT: return expand_iota_ir_in_t(instance);
        case DerivedRule::IotaE1RInT: return expand_iota_e1r_in_t(instance);
        case DerivedRule::IotaE2RInT: return expand_iota_e2r_in_t(instance);
    }
    shape_error("unknown derived rule");
}

Proof derive_identity_premise(const Proof& exists_t) {
    if (!exists_t.conclusion().is(Formula::Kind::ExistsBang))
        shape_error("identity premise derivation needs an ex!t proof");
    const Term& t = exists_t.conclusion().term();
    return Proof::rule(Rule::EqI, Formula::eq(t, t), {exists_t});
}

Proof derive_iota_e1t_in_ll(const Proof& major, const Proof& minor) {
    LLWorld world = ll_world_from_major(major);
    if (!minor.conclusion().is(Formula::Kind::Eq) || minor.conclusion().right() != world.subject)
        shape_error("minor premise must equate a term with the described term");
    const Term& u = minor.conclusion().left();
    Proof ex_t = Proof::rule(Rule::AD, Formula::exists_bang(world.subject), {minor});
    Proof ex_u = Proof::rule(Rule::AD, Formula::exists_bang(u), {minor});
    Proof law = world.law_at_subject(ex_t);
    Formula all_x =
        Formula::forall(world.x, Formula::iff(world.restrictor, Formula::eq(Term::var(world.x), world.subject)));
    Proof instance = Proof::rule(Rule::IffE1, all_x, {law, major});
    Formula f_u = subst_or_fail(world.restrictor, world.x, u, "iotaE1T in LL");
    Proof at_u = Proof::rule(Rule::ForallE, Formula::iff(f_u, Formula::eq(u, world.subject)),
                             {instance, ex_u});
    return Proof::rule(Rule::IffE2, f_u, {at_u, minor});
}

Proof derive_iota_e2t_in_ll(const Proof& major, const Proof& f_u, const Proof& ex_u) {
    LLWorld world = ll_world_from_major(major);
    if (!ex_u.conclusion().is(Formula::Kind::ExistsBang))
        shape_error("third premise must conclude an existence claim");
    const Term& u = ex_u.conclusion().term();
    if (f_u.conclusion() != subst_or_fail(world.restrictor, world.x, u, "iotaE2T in LL"))
        shape_error("second premise must be the description body at the witnessed term");
    Proof ex_t = Proof::rule(Rule::AD, Formula::exists_bang(world.subject), {major});
    Proof law = world.law_at_subject(ex_t);
    Formula all_x =
        Formula::forall(world.x, Formula::iff(world.restrictor, Formula::eq(Term::var(world.x), world.subject)));
    Proof instance = Proof::rule(Rule::IffE1, all_x, {law, major});
    Proof at_u = Proof::rule(Rule::ForallE,
                             Formula::iff(f_u.conclusion(), Formula::eq(u, world.subject)), {instance, ex_u});
    return Proof::rule(Rule::IffE1, Formula::eq(u, world.subject), {at_u, f_u});
}

Proof derive_iota_e3t_in_ll(const Proof& major) { return iota_e3t_as_ad(major); }

Proof iota_e3t_as_ad(const Proof& major) {
    LLWorld world = ll_world_from_major(major);
    return Proof::rule(Rule::AD, Formula::exists_bang(world.subject), {major});
}

}  // namespace iotalog
