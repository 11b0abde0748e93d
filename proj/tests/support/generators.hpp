#pragma once

#include "paramod/clause.hpp"

#include <map>
#include <random>

// Seeded random term/clause generators for property tests.
namespace testgen {

using paramod::Clause;
using paramod::Literal;
using paramod::Polarity;
using paramod::Symbol;
using paramod::SymbolTable;
using paramod::Term;
using paramod::TermPtr;

struct TermGen {
    std::mt19937 rng;

    explicit TermGen(unsigned seed) : rng(seed) {}

    static const std::vector<TermPtr>& variables() {
        static const std::vector<TermPtr> v = {
            Term::variable("x"), Term::variable("y"), Term::variable("z"),
            Term::variable("u"), Term::variable("v"), Term::variable("w")};
        return v;
    }

    static const std::vector<TermPtr>& constants() {
        static const std::vector<TermPtr> c = {
            Term::constant("a"), Term::constant("b"), Term::constant("c0"),
            Term::constant("hole"), Term::constant("nil")};
        return c;
    }

    std::size_t pick(std::size_t n) { return rng() % n; }

    TermPtr term(int max_depth) {
        const int kind = static_cast<int>(pick(max_depth <= 0 ? 2 : 4));
        if (kind == 0) return variables()[pick(variables().size())];
        if (kind == 1 || max_depth <= 0) return constants()[pick(constants().size())];
        if (kind == 2) {
            static const char* unary[] = {"f", "g", "n"};
            return Term::application(unary[pick(3)], {term(max_depth - 1)});
        }
        static const char* binary[] = {"sum", "l"};
        return Term::application(binary[pick(2)],
                                 {term(max_depth - 1), term(max_depth - 1)});
    }

    Literal literal(int max_depth) {
        Literal lit;
        if (pick(2) == 0) {
            lit.predicate = paramod::equal_predicate();
            lit.args = {term(max_depth), term(max_depth)};
        } else {
            lit.predicate = SymbolTable::intern(pick(2) ? "Q" : "P");
            lit.args = {term(max_depth)};
        }
        lit.polarity = Polarity::Positive;
        return lit;
    }

    Clause clause(int max_depth) { return paramod::make_clause(literal(max_depth)); }

    /// A bijective renaming of the clause's variables onto a random subset of
    /// the variable pool (fresh names first, then shuffled).
    Clause renamed_variant(const Clause& c) {
        std::vector<Symbol> vars = paramod::variables_of(c);
        std::vector<TermPtr> pool = {
            Term::variable("x"),  Term::variable("y"),  Term::variable("z"),
            Term::variable("u"),  Term::variable("v"),  Term::variable("w"),
            Term::variable("x1"), Term::variable("y1"), Term::variable("z1"),
            Term::variable("u1"), Term::variable("v1"), Term::variable("w1")};
        for (std::size_t i = pool.size(); i > 1; --i)
            std::swap(pool[i - 1], pool[pick(i)]);
        std::vector<paramod::Binding> renaming;
        for (std::size_t i = 0; i < vars.size(); ++i)
            renaming.emplace_back(vars[i], pool[i]);
        Clause out = c;
        for (TermPtr& arg : out.literal.args)
            arg = paramod::apply_bindings(renaming, arg);
        return out;
    }
};

/// Independent single-pass substituter (oracle for Substitution::apply /
/// apply_bindings): replaces bound variables once, never revisits images.
inline TermPtr naive_apply(const std::map<Symbol, TermPtr>& map, const TermPtr& t) {
    if (t->is_variable()) {
        auto it = map.find(t->symbol());
        return it == map.end() ? t : it->second;
    }
    if (t->is_constant()) return t;
    std::vector<TermPtr> args;
    for (const TermPtr& a : t->args()) args.push_back(naive_apply(map, a));
    return Term::application(t->symbol(), std::move(args));
}

} // namespace testgen
