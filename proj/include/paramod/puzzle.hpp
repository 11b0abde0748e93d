#pragma once

#include "paramod/clause.hpp"

#include <cstdint>
#include <iosfwd>

namespace paramod {

/// Slot value for the hole.
inline constexpr std::uint8_t kHole = 0;

/**
 * Sliding-puzzle board: width x height slots in reading order, tiles
 * 1..n-1 plus exactly one hole.
 */
struct Board {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> slots; // row-major, kHole marks the hole

    int size() const { return width * height; }
    int hole_index() const;
    bool operator==(const Board&) const = default;

    /// [1, 2, ..., n-1, hole]
    static Board standard_goal(int width, int height);
    /// Validates dimensions (>= 2 each) and the permutation invariant.
    static std::optional<Board> make(int width, int height, std::vector<std::uint8_t> slots);
};

/// "2,3,6,1,7,8,5,4,hole"
std::string to_string(const Board& b);
std::optional<Board> parse_board(std::string_view text, int width, int height);

/// CSV-safe one-token form: "2-3-6-1-7-8-5-4-hole".
std::string board_key(const Board& b);
std::optional<Board> parse_board_key(std::string_view text, int width, int height);

/// One board per line; '#' starts a comment line. Throws on malformed lines.
std::vector<Board> read_board_file(std::istream& in, int width, int height);

/// Per-slot inversion tallies, hole excluded, reading order: tallies[i] is
/// the number of later smaller tiles.
std::vector<int> inversion_tallies(const Board& b);
int count_inversions(const Board& b);

/// Inversion-parity solvability; for even widths the hole row (counted from
/// the bottom) joins the parity. Throws std::invalid_argument on dimension
/// mismatch.
bool is_solvable(const Board& b, const Board& goal);

/// Neighbor boards, deterministic order: hole moves up, down, left, right.
std::vector<Board> legal_moves(const Board& b);

/**
 * `count` distinct solvable boards, uniformly drawn (rejection-sampled,
 * without replacement) from permutations with the hole in the last slot —
 * or anywhere when free_hole. Deterministic in seed.
 */
std::vector<Board> generate_solvable(int count, std::uint64_t seed, const Board& goal,
                                     bool free_hole = false);

/// Right-nested list term: l(s0, l(s1, ... l(s_{n-1}, nil)...)), slot si
/// rendered as n(<tile>) or hole.
TermPtr encode(const Board& b);
/// Inverse of encode on its image; nullopt (NotABoard) for anything else.
std::optional<Board> decode(const TermPtr& t, int width, int height);

enum class RuleMode : std::uint8_t { BoundarySafe, PaperFaithful };
enum class RuleKind : std::uint8_t { Horizontal, Vertical };

std::string_view to_string(RuleMode mode);
std::optional<RuleMode> parse_rule_mode(std::string_view text);

struct MoveRule {
    Clause clause;  // positive EQUAL unit
    RuleKind kind = RuleKind::Horizontal;
    int anchor = -1; // slot index the hole pattern is rooted at; -1 = generic
};

/**
 * Move-rule equalities.
 *
 * BoundarySafe: one full-length, position-anchored rule per legal (hole,
 * neighbor) slot pair — height*(width-1) horizontal + width*(height-1)
 * vertical rules. Matching is pinned to the board root by the nil
 * terminator, so paramodulation generates exactly the legal slides.
 *
 * PaperFaithful: exactly two position-generic rules (hole/tile swap at
 * distance 1 and at distance `width`). The horizontal rule also matches
 * across row boundaries, so it over-generates pseudo-moves.
 */
std::vector<MoveRule> move_rules(int width, int height, RuleMode mode);

/// Extracts the clauses of a rule set, in rule order.
std::vector<Clause> rule_clauses(const std::vector<MoveRule>& rules);

/// Lehmer rank of the slot permutation (hole = 0), in [0, n!).
std::uint64_t board_rank(const Board& b);
Board board_from_rank(std::uint64_t rank, int width, int height);
std::uint64_t factorial(int n);

/// Nibble-packed slots; requires n <= 16 slots.
std::uint64_t packed_key(const Board& b);

} // namespace paramod
