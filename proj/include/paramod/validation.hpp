#pragma once

#include "paramod/inference.hpp"
#include "paramod/oracle.hpp"

namespace paramod {

/**
 * Boards derived from `board` by one paramodulation step against the rule
 * set, decoded, in emission order. Throws if a paramodulant state term does
 * not decode (cannot happen for ground boards and well-formed rules).
 */
std::vector<Board> paramodulant_neighbors(const Board& board,
                                          const std::vector<Clause>& rules);

struct ParityCheck {
    std::uint64_t boards = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t reachable = 0; // boards that are in the reachability set
    bool exact() const { return mismatches == 0; }
};

/// Compares is_solvable against oracle reachability for every permutation of
/// the goal's slots. threads <= 1 runs the serial reference loop.
ParityCheck exhaustive_parity_check(const ReachabilitySet& reach, int threads = 1);

struct RuleCheck {
    std::uint64_t boards = 0;
    std::uint64_t mismatches = 0;       // boards whose neighbor sets differ
    std::uint64_t first_mismatch = UINT64_MAX; // rank of the first mismatch
    bool exact() const { return mismatches == 0; }
};

/// Compares the decoded paramodulant neighbor multiset against legal_moves
/// for every board of the given dimensions. threads <= 1 is the serial
/// reference.
RuleCheck exhaustive_rule_check(int width, int height, RuleMode mode, int threads = 1);

} // namespace paramod
