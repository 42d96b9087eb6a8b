#include "iotalog/semantics.hpp"

#include <sstream>

namespace iotalog {

std::optional<Element> denote(const Model& m, const Assignment& g, const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Var: {
            auto it = g.find(t.name());
            if (it == g.end()) return std::nullopt;
            return it->second;
        }
        case Term::Kind::Const: {
            auto it = m.consts.find(t.name());
            if (it == m.consts.end()) return std::nullopt;
            return it->second;
        }
        case Term::Kind::Iota: {
            std::optional<Element> witness;
            Assignment g2 = g;
            for (Element d = 0; d < m.domain_size; ++d) {
                g2[t.bound()] = d;
                if (eval(m, g2, t.body())) {
                    if (witness) return std::nullopt;  // not unique
                    witness = d;
                }
            }
            return witness;
        }
    }
    return std::nullopt;
}

bool eval(const Model& m, const Assignment& g, const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Pred: {
            std::vector<Element> tuple;
            tuple.reserve(f.args().size());
            for (const Term& t : f.args()) {
                auto d = denote(m, g, t);
                if (!d) return false;
                tuple.push_back(*d);
            }
            auto it = m.preds.find(f.symbol());
            if (it == m.preds.end()) return false;
            return it->second.count(tuple) != 0;
        }
        case K::Eq: {
            auto l = denote(m, g, f.left());
            auto r = denote(m, g, f.right());
            return l && r && *l == *r;
        }
        case K::ExistsBang:
            return denote(m, g, f.term()).has_value();
        case K::Bot:
            return false;
        case K::And:
            return eval(m, g, f.sub(0)) && eval(m, g, f.sub(1));
        case K::Or:
            return eval(m, g, f.sub(0)) || eval(m, g, f.sub(1));
        case K::Imp:
            return !eval(m, g, f.sub(0)) || eval(m, g, f.sub(1));
        case K::Iff:
            return eval(m, g, f.sub(0)) == eval(m, g, f.sub(1));
        case K::Forall: {
            Assignment g2 = g;
            for (Element d = 0; d < m.domain_size; ++d) {
                g2[f.var()] = d;
                if (!eval(m, g2, f.body())) return false;
            }
            return true;
        }
        case K::Exists: {
            Assignment g2 = g;
            for (Element d = 0; d < m.domain_size; ++d) {
                g2[f.var()] = d;
                if (eval(m, g2, f.body())) return true;
            }
            return false;
        }
        case K::IotaQ: {
            // Exactly one element satisfies the restrictor, and it
            // satisfies the matrix.
            std::optional<Element> witness;
            Assignment g2 = g;
            for (Element d = 0; d < m.domain_size; ++d) {
                g2[f.var()] = d;
                if (eval(m, g2, f.restrictor())) {
                    if (witness) return false;
                    witness = d;
                }
            }
            if (!witness) return false;
            g2[f.var()] = *witness;
            return eval(m, g2, f.matrix());
        }
        case K::Abst: {
            auto d = denote(m, g, f.term());
            if (!d) return false;
            Assignment g2 = g;
            g2[f.var()] = *d;
            return eval(m, g2, f.body());
        }
    }
    return false;
}

namespace {

void collect_signature(const Term& t, Signature& sig, std::set<std::string>& bound);

void collect_signature(const Formula& f, Signature& sig, std::set<std::string>& bound) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Pred: {
            auto [it, inserted] = sig.preds.emplace(f.symbol(), f.args().size());
            if (!inserted && it->second != f.args().size())
                throw std::invalid_argument("predicate '" + f.symbol() + "' used at two arities");
            for (const Term& t : f.args()) collect_signature(t, sig, bound);
            return;
        }
        case K::Eq:
            collect_signature(f.left(), sig, bound);
            collect_signature(f.right(), sig, bound);
            return;
        case K::ExistsBang:
            collect_signature(f.term(), sig, bound);
            return;
        case K::Bot:
            return;
        case K::And:
        case K::Or:
        case K::Imp:
        case K::Iff:
            collect_signature(f.sub(0), sig, bound);
            collect_signature(f.sub(1), sig, bound);
            return;
        case K::Forall:
        case K::Exists: {
            bool inserted = bound.insert(f.var()).second;
            collect_signature(f.body(), sig, bound);
            if (inserted) bound.erase(f.var());
            return;
        }
        case K::IotaQ: {
            bool inserted = bound.insert(f.var()).second;
            collect_signature(f.restrictor(), sig, bound);
            collect_signature(f.matrix(), sig, bound);
            if (inserted) bound.erase(f.var());
            return;
        }
        case K::Abst: {
            bool inserted = bound.insert(f.var()).second;
            collect_signature(f.body(), sig, bound);
            if (inserted) bound.erase(f.var());
            collect_signature(f.term(), sig, bound);
            return;
        }
    }
}

void collect_signature(const Term& t, Signature& sig, std::set<std::string>& bound) {
    switch (t.kind()) {
        case Term::Kind::Var:
            if (!bound.count(t.name())) sig.vars.insert(t.name());
            return;
        case Term::Kind::Const:
            sig.consts.insert(t.name());
            return;
        case Term::Kind::Iota: {
            bool inserted = bound.insert(t.bound()).second;
            collect_signature(t.body(), sig, bound);
            if (inserted) bound.erase(t.bound());
            return;
        }
    }
}

// Odometer over a mixed radix vector. Returns false once it wraps.
bool bump(std::vector<int>& digits, const std::vector<int>& radix) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < radix[i]) return true;
        digits[i] = 0;
    }
    return false;
}

std::vector<std::vector<Element>> all_tuples(std::size_t arity, int n) {
    std::vector<std::vector<Element>> tuples;
    if (arity == 0) {
        tuples.push_back({});
        return tuples;
    }
    std::vector<int> digits(arity, 0);
    std::vector<int> radix(arity, n);
    if (n == 0) return tuples;
    do {
        tuples.emplace_back(digits.begin(), digits.end());
    } while (bump(digits, radix));
    return tuples;
}

}  // namespace

void Signature::merge(const Signature& other) {
    for (const auto& [sym, arity] : other.preds) {
        auto [it, inserted] = preds.emplace(sym, arity);
        if (!inserted && it->second != arity)
            throw std::invalid_argument("predicate '" + sym + "' used at two arities");
    }
    consts.insert(other.consts.begin(), other.consts.end());
    vars.insert(other.vars.begin(), other.vars.end());
}

Signature signature_of(const Formula& f) {
    Signature sig;
    std::set<std::string> bound;
    collect_signature(f, sig, bound);
    return sig;
}

Signature signature_of(const std::vector<Formula>& assumptions, const Formula& conclusion) {
    Signature sig = signature_of(conclusion);
    for (const Formula& a : assumptions) sig.merge(signature_of(a));
    return sig;
}

ValidityResult valid_upto(const Sequent& seq, int max_size, const Signature& sig, std::uint64_t budget) {
    ValidityResult result;
    std::vector<std::string> const_names(sig.consts.begin(), sig.consts.end());
    std::vector<std::string> var_names(sig.vars.begin(), sig.vars.end());
    std::vector<std::pair<std::string, std::size_t>> pred_list(sig.preds.begin(), sig.preds.end());

    for (int n = 0; n <= max_size; ++n) {
        // Constants: each ranges over undef (0) and the n elements.
        std::vector<int> const_digits(const_names.size(), 0);
        std::vector<int> const_radix(const_names.size(), n + 1);
        // Predicate extensions: one bit per tuple, lexicographic tuple order.
        std::vector<std::vector<std::vector<Element>>> tuple_tables;
        std::size_t total_bits = 0;
        for (const auto& [sym, arity] : pred_list) {
            tuple_tables.push_back(all_tuples(arity, n));
            total_bits += tuple_tables.back().size();
        }
        std::vector<int> pred_digits(total_bits, 0);
        std::vector<int> pred_radix(total_bits, 2);

        bool more_consts = true;
        while (more_consts) {
            bool more_preds = true;
            std::fill(pred_digits.begin(), pred_digits.end(), 0);
            while (more_preds) {
                Model m;
                m.domain_size = n;
                for (std::size_t i = 0; i < const_names.size(); ++i)
                    m.consts[const_names[i]] =
                        const_digits[i] == 0 ? std::nullopt : std::optional<Element>(const_digits[i] - 1);
                std::size_t bit = 0;
                for (std::size_t p = 0; p < pred_list.size(); ++p) {
                    auto& extension = m.preds[pred_list[p].first];
                    for (const auto& tuple : tuple_tables[p]) {
                        if (pred_digits[bit]) extension.insert(tuple);
                        ++bit;
                    }
                }

                std::vector<int> var_digits(var_names.size(), 0);
                std::vector<int> var_radix(var_names.size(), n + 1);
                bool more_vars = true;
                while (more_vars) {
                    Assignment g;
                    for (std::size_t i = 0; i < var_names.size(); ++i)
                        if (var_digits[i] != 0) g[var_names[i]] = var_digits[i] - 1;

                    if (++result.steps > budget) throw ResourceBound(budget);

                    bool premises_hold = true;
                    for (const Formula& a : seq.assumptions) {
                        if (!eval(m, g, a)) {
                            premises_hold = false;
                            break;
                        }
                    }
                    if (premises_hold && !eval(m, g, seq.conclusion)) {
                        result.valid = false;
                        result.countermodel = Countermodel{std::move(m), std::move(g)};
                        return result;
                    }
                    more_vars = bump(var_digits, var_radix);
                }
                more_preds = bump(pred_digits, pred_radix);
            }
            more_consts = bump(const_digits, const_radix);
        }
    }
    result.valid = true;
    return result;
}

ValidityResult valid_upto(const Sequent& seq, int max_size, std::uint64_t budget) {
    return valid_upto(seq, max_size, signature_of(seq.assumptions, seq.conclusion), budget);
}

std::string render_countermodel(const Countermodel& cm) {
    std::ostringstream out;
    out << "domain:";
    for (Element d = 0; d < cm.model.domain_size; ++d) out << " d" << d;
    for (const auto& [name, value] : cm.model.consts) {
        out << "; const " << name << " = ";
        if (value)
            out << 'd' << *value;
        else
            out << "undef";
    }
    for (const auto& [sym, extension] : cm.model.preds) {
        out << "; pred " << sym << " = {";
        bool first = true;
        for (const auto& tuple : extension) {
            if (!first) out << ',';
            first = false;
            out << '(';
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                if (i) out << ' ';
                out << 'd' << tuple[i];
            }
            out << ')';
        }
        out << '}';
    }
    for (const auto& [name, value] : cm.assignment) out << "; var " << name << " = d" << value;
    return out.str();
}

}  // namespace iotalog
