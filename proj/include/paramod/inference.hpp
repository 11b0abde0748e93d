#pragma once

#include "paramod/clause.hpp"

namespace paramod {

enum class Orientation : std::uint8_t { LeftToRight, RightToLeft };

/// Position inside a literal: argument index plus a path within that argument.
struct LiteralPosition {
    std::uint32_t arg = 0;
    Path path;
    bool operator==(const LiteralPosition&) const = default;
};

/**
 * One paramodulation result plus the bookkeeping needed to replay it:
 * the into literal with the subterm at into_position replaced through the
 * unifier by the from equality's other side.
 */
struct Paramodulant {
    Clause clause; // id = 0; parents = {(from_id, From), (into_id, Into)}
    ClauseId from_id = 0;
    ClauseId into_id = 0;
    LiteralPosition into_position;
    Orientation orientation = Orientation::LeftToRight;
    Substitution unifier; // over the renamed-apart from clause's variables
};

struct ParamodulationOptions {
    /// Paramodulate into variable subterm positions (off: OTTER default).
    bool into_variables = false;
    /// Use an orientation whose from side is a bare variable (off: explodes).
    bool from_variables = false;
};

/**
 * All paramodulants from the positive EQUAL `from` clause into `into`.
 *
 * Callers must have renamed the pair apart. Emission order is deterministic:
 * orientation left-to-right first, into positions in preorder.
 */
std::vector<Paramodulant> paramodulate_pair(const Clause& from, const Clause& into,
                                            const ParamodulationOptions& opts = {});

/**
 * All paramodulants between the given clause and the usable list: given as
 * from against every usable clause, and given as into against every usable
 * positive equality. Pairs are renamed apart here (the from side moves away
 * from the into side's variables).
 *
 * Order: usable clauses in ascending id; for one partner, from-role pairings
 * before into-role pairings.
 */
std::vector<Paramodulant> paramodulate_given(const Clause& given,
                                             const std::vector<Clause>& usable,
                                             const ParamodulationOptions& opts = {});

/// Pointer form; `usable_by_id` must already be in ascending id order.
std::vector<Paramodulant> paramodulate_given(const Clause& given,
                                             std::span<const Clause* const> usable_by_id,
                                             const ParamodulationOptions& opts = {});

/// OpenMP variant: partitions partners across threads and concatenates the
/// per-partner buckets in partner order, so the output is bit-identical to
/// the serial paramodulate_given.
std::vector<Paramodulant> paramodulate_given_parallel(
    const Clause& given, std::span<const Clause* const> usable_by_id, int threads,
    const ParamodulationOptions& opts = {});

} // namespace paramod
