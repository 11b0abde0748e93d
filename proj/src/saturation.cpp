#include "paramod/saturation.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace paramod {

Limits Limits::defaults_for(int width, int height) {
    Limits l;
    l.max_weight = ground_state_weight(width, height) + 4;
    return l;
}

std::uint32_t ground_state_weight(int width, int height) {
    Board goal = Board::standard_goal(width, height);
    return weigh(make_fact(state_predicate(), encode(goal)));
}

std::string_view to_string(LimitKind k) {
    switch (k) {
    case LimitKind::MaxGenerated: return "max_generated";
    case LimitKind::MaxKept: return "max_kept";
    case LimitKind::MaxGiven: return "max_given";
    }
    return "?";
}

std::string_view to_string(OutcomeKind k) {
    switch (k) {
    case OutcomeKind::ProofFound: return "proof_found";
    case OutcomeKind::SosExhausted: return "sos_exhausted";
    case OutcomeKind::LimitHit: return "limit_hit";
    }
    return "?";
}

ClauseId SosQueue::pop() {
    Entry top = heap_.top();
    heap_.pop();
    return top.id;
}

ClauseId SaturationState::add_input(Clause c, bool to_sos) {
    if (!c.parents.empty()) throw std::invalid_argument("input clause has parents");
    c.id = static_cast<ClauseId>(clauses.size() + 1);
    c.birth_index = next_birth++;
    c.weight = weigh(c);
    db.insert(canonical_signature(c), c.id);
    clauses.push_back(c);
    if (to_sos) {
        sos.push(clauses.back());
    } else {
        move_to_usable(c.id);
    }
    return c.id;
}

void SaturationState::move_to_usable(ClauseId id) {
    usable_ids.push_back(id);
    const Clause& c = clause(id);
    if (c.literal.is_positive_equality()) {
        auto it = std::lower_bound(usable_equality_ids.begin(), usable_equality_ids.end(), id);
        usable_equality_ids.insert(it, id);
    }
}

std::optional<Clause> select_given(SaturationState& state) {
    if (state.sos.empty()) return std::nullopt;
    return state.clause(state.sos.pop());
}

namespace {

/// Unit conflict: same predicate, opposite polarity, unifiable argument
/// lists (the candidate is renamed apart from the goal first).
std::optional<Substitution> unit_conflict(const Clause& candidate, const Clause& goal) {
    const Literal& g = goal.literal;
    if (candidate.literal.predicate != g.predicate ||
        candidate.literal.polarity == g.polarity ||
        candidate.literal.args.size() != g.args.size())
        return std::nullopt;
    Clause renamed = rename_apart(candidate, variables_of(goal));
    const Literal& a = renamed.literal;
    if (a.args.size() == 1) return unify(a.args[0], g.args[0]);
    // Simultaneous unification of the argument lists via a wrapper application.
    return unify(Term::application(a.predicate, a.args),
                 Term::application(g.predicate, g.args));
}

} // namespace

ProcessResult process_new(SaturationState& state, Clause candidate, const Clause& goal) {
    ++state.counters.generated;
    candidate.weight = weigh(candidate);
    if (state.limits.max_weight && candidate.weight > *state.limits.max_weight)
        return {ProcessKind::Discarded, 0, std::nullopt};
    std::string signature = canonical_signature(candidate);
    if (ClauseId twin = state.db.find_variant(signature))
        return {ProcessKind::Discarded, twin, std::nullopt};

    candidate.id = static_cast<ClauseId>(state.clauses.size() + 1);
    candidate.birth_index = state.next_birth++;
    state.db.insert(std::move(signature), candidate.id);
    state.clauses.push_back(std::move(candidate));
    const Clause& retained = state.clauses.back();
    state.sos.push(retained);
    ++state.counters.kept;

    if (std::optional<Substitution> sigma = unit_conflict(retained, goal))
        return {ProcessKind::ProofSignal, retained.id, std::move(sigma)};
    return {ProcessKind::Retained, retained.id, std::nullopt};
}

namespace {

std::vector<Clause> reconstruct_proof(const SaturationState& state, ClauseId conflict_id) {
    std::vector<Clause> chain;
    ClauseId id = conflict_id;
    while (id != 0) {
        const Clause& c = state.clause(id);
        chain.push_back(c);
        const Parent* into = c.parent(ParentRole::Into);
        id = into ? into->id : 0;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

void log_given(std::ostream* log, std::uint64_t count, const Clause& given) {
    if (!log) return;
    *log << "given #" << count << ": id=" << given.id << " wt=" << given.weight << ' '
         << to_string(given) << '\n';
}

void log_counters(std::ostream* log, const Counters& c) {
    if (!log) return;
    *log << "generated: " << c.generated << '\n'
         << "kept: " << c.kept << '\n'
         << "given: " << c.given << '\n';
}

} // namespace

ProverResult run(const std::vector<Clause>& input_usable,
                 const std::vector<Clause>& input_sos, const Clause& goal,
                 const Limits& limits, const RunOptions& options) {
    if (goal.literal.is_positive())
        throw std::invalid_argument("run: goal clause must be a negative unit");

    SaturationState state;
    state.limits = limits;
    state.clauses.reserve(1024);
    for (const Clause& c : input_usable) state.add_input(c, /*to_sos=*/false);
    std::vector<ClauseId> sos_input_ids;
    for (const Clause& c : input_sos) sos_input_ids.push_back(state.add_input(c, true));

    ProverResult result;
    auto finish = [&](OutcomeKind outcome, std::optional<LimitKind> limit,
                      std::optional<ClauseId> conflict_id) {
        result.outcome = outcome;
        result.limit = limit;
        result.counters = state.counters;
        if (conflict_id) result.proof = reconstruct_proof(state, *conflict_id);
        log_counters(options.given_log, state.counters);
        return result;
    };

    // Degenerate case: an input already contradicts the goal.
    for (ClauseId id : sos_input_ids)
        if (unit_conflict(state.clause(id), goal))
            return finish(OutcomeKind::ProofFound, std::nullopt, id);

    std::vector<const Clause*> partners;
    std::vector<const Clause*> all_by_id; // materialized only for equality givens
    while (true) {
        if (state.sos.empty())
            return finish(OutcomeKind::SosExhausted, std::nullopt, std::nullopt);
        if (state.limits.max_given && state.counters.given >= *state.limits.max_given)
            return finish(OutcomeKind::LimitHit, LimitKind::MaxGiven, std::nullopt);

        Clause given = *select_given(state);
        ++state.counters.given;
        state.move_to_usable(given.id);
        log_given(options.given_log, state.counters.given, given);

        // Inference partners in ascending id order. A non-equality given only
        // ever plays the into role, so only usable equalities matter; for an
        // equality given every usable clause is a partner.
        partners.clear();
        if (given.literal.is_positive_equality()) {
            all_by_id.clear();
            for (ClauseId id : state.usable_ids) all_by_id.push_back(&state.clause(id));
            std::sort(all_by_id.begin(), all_by_id.end(),
                      [](const Clause* a, const Clause* b) { return a->id < b->id; });
            partners = all_by_id;
        } else {
            for (ClauseId id : state.usable_equality_ids)
                partners.push_back(&state.clause(id));
        }

        std::vector<Paramodulant> inferred =
            options.inference_threads > 1
                ? paramodulate_given_parallel(given, partners, options.inference_threads,
                                              options.paramodulation)
                : paramodulate_given(given, partners, options.paramodulation);

        for (Paramodulant& p : inferred) {
            if (options.on_generated) options.on_generated(p);
            ProcessResult processed = process_new(state, std::move(p.clause), goal);
            if (processed.kind == ProcessKind::ProofSignal)
                return finish(OutcomeKind::ProofFound, std::nullopt, processed.id);
            if (state.limits.max_generated &&
                state.counters.generated > *state.limits.max_generated)
                return finish(OutcomeKind::LimitHit, LimitKind::MaxGenerated, std::nullopt);
            if (processed.kind == ProcessKind::Retained && state.limits.max_kept &&
                state.counters.kept > *state.limits.max_kept)
                return finish(OutcomeKind::LimitHit, LimitKind::MaxKept, std::nullopt);
        }
    }
}

std::vector<Board> extract_solution(const std::vector<Clause>& proof, int width, int height) {
    std::vector<Board> boards;
    boards.reserve(proof.size());
    for (const Clause& c : proof) {
        if (c.literal.predicate != state_predicate() || c.literal.args.size() != 1)
            throw NonGroundStateError("proof chain clause is not a State fact: " +
                                      to_string(c));
        std::optional<Board> b = decode(c.literal.args[0], width, height);
        if (!b)
            throw NonGroundStateError("proof chain state does not decode to a board: " +
                                      to_string(c));
        boards.push_back(std::move(*b));
    }
    return boards;
}

std::string trace_line(const Clause& c) {
    std::string out = std::to_string(c.id);
    const Parent* from = c.parent(ParentRole::From);
    const Parent* into = c.parent(ParentRole::Into);
    if (from && into) {
        out += " [para_from," + std::to_string(from->id) + ',' + std::to_string(into->id) + "] ";
    } else {
        out += " [input] ";
    }
    out += to_string(c);
    return out;
}

} // namespace paramod
