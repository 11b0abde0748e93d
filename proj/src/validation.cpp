#include "paramod/validation.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paramod {

namespace {

// Rule clauses with ids 1..k and a State(board) given with id k+1, ready for
// paramodulate_given.
struct RuleProbe {
    std::vector<Clause> rules;
    std::vector<const Clause*> partners;

    explicit RuleProbe(const std::vector<Clause>& rule_set) {
        rules = rule_set;
        for (std::size_t i = 0; i < rules.size(); ++i) rules[i].id = static_cast<ClauseId>(i + 1);
        partners.reserve(rules.size());
        for (const Clause& c : rules) partners.push_back(&c);
    }

    std::vector<Board> neighbors(const Board& board) const {
        Clause given = make_fact(state_predicate(), encode(board));
        given.id = static_cast<ClauseId>(rules.size() + 1);
        std::vector<Paramodulant> inferred = paramodulate_given(given, partners);
        std::vector<Board> out;
        out.reserve(inferred.size());
        for (const Paramodulant& p : inferred) {
            std::optional<Board> b =
                decode(p.clause.literal.args[0], board.width, board.height);
            if (!b)
                throw std::logic_error("paramodulant of a ground state did not decode: " +
                                       to_string(p.clause));
            out.push_back(std::move(*b));
        }
        return out;
    }
};

std::vector<std::uint64_t> sorted_keys(const std::vector<Board>& boards) {
    std::vector<std::uint64_t> keys;
    keys.reserve(boards.size());
    for (const Board& b : boards) keys.push_back(packed_key(b));
    std::sort(keys.begin(), keys.end());
    return keys;
}

} // namespace

std::vector<Board> paramodulant_neighbors(const Board& board,
                                          const std::vector<Clause>& rules) {
    return RuleProbe(rules).neighbors(board);
}

ParityCheck exhaustive_parity_check(const ReachabilitySet& reach, int threads) {
    const Board& goal = reach.goal;
    const std::int64_t total = static_cast<std::int64_t>(factorial(goal.size()));
    std::uint64_t mismatches = 0;
    std::uint64_t reachable = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : mismatches, reachable) \
    num_threads(threads > 1 ? threads : 1) if (threads > 1)
#endif
    for (std::int64_t rank = 0; rank < total; ++rank) {
        Board b = board_from_rank(static_cast<std::uint64_t>(rank), goal.width, goal.height);
        const bool solvable = is_solvable(b, goal);
        const bool reached = reach.distances.contains(packed_key(b));
        if (reached) ++reachable;
        if (solvable != reached) ++mismatches;
    }
    ParityCheck result;
    result.boards = static_cast<std::uint64_t>(total);
    result.mismatches = mismatches;
    result.reachable = reachable;
    return result;
}

RuleCheck exhaustive_rule_check(int width, int height, RuleMode mode, int threads) {
    const std::vector<Clause> rules = rule_clauses(move_rules(width, height, mode));
    const std::int64_t total = static_cast<std::int64_t>(factorial(width * height));
    std::uint64_t mismatches = 0;
    std::atomic<std::uint64_t> first_mismatch{UINT64_MAX};
#ifdef _OPENMP
#pragma omp parallel num_threads(threads > 1 ? threads : 1) if (threads > 1)
#endif
    {
        RuleProbe probe(rules); // per-thread: clause ids are thread-local copies
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 1024) reduction(+ : mismatches)
#endif
        for (std::int64_t rank = 0; rank < total; ++rank) {
            Board b = board_from_rank(static_cast<std::uint64_t>(rank), width, height);
            std::vector<std::uint64_t> expected = sorted_keys(legal_moves(b));
            std::vector<std::uint64_t> actual = sorted_keys(probe.neighbors(b));
            if (expected != actual) {
                ++mismatches;
                std::uint64_t seen = first_mismatch.load();
                while (static_cast<std::uint64_t>(rank) < seen &&
                       !first_mismatch.compare_exchange_weak(
                           seen, static_cast<std::uint64_t>(rank))) {
                }
            }
        }
    }
    RuleCheck result;
    result.boards = static_cast<std::uint64_t>(total);
    result.mismatches = mismatches;
    result.first_mismatch = first_mismatch.load();
    return result;
}

} // namespace paramod
