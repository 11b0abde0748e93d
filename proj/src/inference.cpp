#include "paramod/inference.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paramod {

namespace {

struct IntoPosition {
    LiteralPosition pos;
    TermPtr term;
};

// All positions of the literal, preorder per argument, argument order.
std::vector<IntoPosition> literal_positions(const Literal& lit) {
    std::vector<IntoPosition> out;
    for (std::uint32_t i = 0; i < lit.args.size(); ++i) {
        for (PositionEntry& e : subterm_positions(lit.args[i]))
            out.push_back({{i, std::move(e.path)}, std::move(e.term)});
    }
    return out;
}

// Core inference for one renamed-apart (from, into) pair with positions of
// the into literal precomputed.
void paramodulate_core(const Clause& from, const Clause& into,
                       std::span<const IntoPosition> positions,
                       const ParamodulationOptions& opts,
                       std::vector<Paramodulant>& out) {
    const TermPtr& lhs = from.literal.args[0];
    const TermPtr& rhs = from.literal.args[1];
    for (Orientation ori : {Orientation::LeftToRight, Orientation::RightToLeft}) {
        const TermPtr& s = ori == Orientation::LeftToRight ? lhs : rhs;
        const TermPtr& t = ori == Orientation::LeftToRight ? rhs : lhs;
        if (s->is_variable() && !opts.from_variables) continue;
        for (const IntoPosition& p : positions) {
            if (p.term->is_variable() && !opts.into_variables) continue;
            std::optional<Substitution> sigma = unify(s, p.term);
            if (!sigma) continue;
            Literal lit = into.literal;
            lit.args[p.pos.arg] = replace_at(lit.args[p.pos.arg], p.pos.path, t);
            for (TermPtr& arg : lit.args) arg = sigma->apply(arg);
            Paramodulant result;
            result.clause = make_clause(std::move(lit));
            result.clause.parents = {{from.id, ParentRole::From},
                                     {into.id, ParentRole::Into}};
            result.from_id = from.id;
            result.into_id = into.id;
            result.into_position = p.pos;
            result.orientation = ori;
            result.unifier = std::move(*sigma);
            out.push_back(std::move(result));
        }
    }
}

void check_from_clause(const Clause& from) {
    if (!from.literal.is_positive_equality())
        throw std::invalid_argument("paramodulation from clause must be a positive EQUAL unit");
}

// Emits both role pairings of (given, partner) in role order, renaming the
// from side apart from the into side.
void paramodulate_partner(const Clause& given, bool given_is_equality,
                          std::span<const IntoPosition> given_positions,
                          const std::vector<Symbol>& given_vars, const Clause& partner,
                          const ParamodulationOptions& opts,
                          std::vector<Paramodulant>& out) {
    if (given_is_equality) {
        std::vector<Symbol> partner_vars = variables_of(partner);
        Clause from = rename_apart(given, partner_vars);
        std::vector<IntoPosition> positions = literal_positions(partner.literal);
        paramodulate_core(from, partner, positions, opts, out);
    }
    if (partner.literal.is_positive_equality()) {
        Clause from = rename_apart(partner, given_vars);
        paramodulate_core(from, given, given_positions, opts, out);
    }
}

} // namespace

std::vector<Paramodulant> paramodulate_pair(const Clause& from, const Clause& into,
                                            const ParamodulationOptions& opts) {
    check_from_clause(from);
    std::vector<Symbol> from_vars = variables_of(from);
    if (!from_vars.empty()) {
        std::vector<Symbol> into_vars = variables_of(into);
        for (Symbol v : from_vars)
            if (std::find(into_vars.begin(), into_vars.end(), v) != into_vars.end())
                throw std::invalid_argument("paramodulate_pair: clauses share variable " +
                                            SymbolTable::name(v));
    }
    std::vector<Paramodulant> out;
    std::vector<IntoPosition> positions = literal_positions(into.literal);
    paramodulate_core(from, into, positions, opts, out);
    return out;
}

std::vector<Paramodulant> paramodulate_given(const Clause& given,
                                             std::span<const Clause* const> usable_by_id,
                                             const ParamodulationOptions& opts) {
    const bool given_is_equality = given.literal.is_positive_equality();
    std::vector<IntoPosition> given_positions = literal_positions(given.literal);
    std::vector<Symbol> given_vars = variables_of(given);
    std::vector<Paramodulant> out;
    for (const Clause* partner : usable_by_id)
        paramodulate_partner(given, given_is_equality, given_positions, given_vars,
                             *partner, opts, out);
    return out;
}

std::vector<Paramodulant> paramodulate_given(const Clause& given,
                                             const std::vector<Clause>& usable,
                                             const ParamodulationOptions& opts) {
    std::vector<const Clause*> by_id;
    by_id.reserve(usable.size());
    for (const Clause& c : usable) by_id.push_back(&c);
    std::stable_sort(by_id.begin(), by_id.end(),
                     [](const Clause* a, const Clause* b) { return a->id < b->id; });
    return paramodulate_given(given, by_id, opts);
}

std::vector<Paramodulant> paramodulate_given_parallel(
    const Clause& given, std::span<const Clause* const> usable_by_id, int threads,
    const ParamodulationOptions& opts) {
    const bool given_is_equality = given.literal.is_positive_equality();
    std::vector<IntoPosition> given_positions = literal_positions(given.literal);
    std::vector<Symbol> given_vars = variables_of(given);

    const std::size_t n = usable_by_id.size();
    std::vector<std::vector<Paramodulant>> buckets(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        paramodulate_partner(given, given_is_equality, given_positions, given_vars,
                             *usable_by_id[static_cast<std::size_t>(i)], opts,
                             buckets[static_cast<std::size_t>(i)]);
    }

    std::size_t total = 0;
    for (const auto& b : buckets) total += b.size();
    std::vector<Paramodulant> out;
    out.reserve(total);
    for (auto& b : buckets)
        for (Paramodulant& p : b) out.push_back(std::move(p));
    return out;
}

} // namespace paramod
