#pragma once

#include "paramod/puzzle.hpp"

#include <unordered_map>

namespace paramod {

/// Complete BFS distance map of the goal's orbit, keyed by packed_key.
struct ReachabilitySet {
    Board goal;
    std::unordered_map<std::uint64_t, std::int32_t> distances;
    std::int32_t max_distance = 0;

    std::size_t size() const { return distances.size(); }
};

/// BFS from goal over legal_moves. Throws std::invalid_argument (TooLarge)
/// when width*height > 12.
ReachabilitySet build_reachability(const Board& goal);

/// nullopt = Unreachable.
std::optional<int> optimal_length(const Board& b, const ReachabilitySet& r);

struct Validation {
    bool valid = true;
    std::size_t index = 0;   // failing step index when invalid
    std::string reason;

    static Validation ok() { return {}; }
    static Validation bad(std::size_t index, std::string reason) {
        return {false, index, std::move(reason)};
    }
};

/// Valid iff steps starts at start, ends at goal, and every consecutive pair
/// is one legal slide.
Validation validate_solution(const Board& start, const std::vector<Board>& steps,
                             const Board& goal);

/// Versioned binary cache of the distance map (format: see README).
void save_reachability(const ReachabilitySet& r, const std::string& path);
/// nullopt when the file is missing, malformed, or built for a different goal.
std::optional<ReachabilitySet> load_reachability(const std::string& path,
                                                 const Board& expected_goal);

} // namespace paramod
