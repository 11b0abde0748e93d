#include "paramod/oracle.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace paramod {

ReachabilitySet build_reachability(const Board& goal) {
    if (goal.size() > 12)
        throw std::invalid_argument("build_reachability: board too large to enumerate");
    ReachabilitySet r;
    r.goal = goal;
    r.distances.reserve(static_cast<std::size_t>(factorial(goal.size()) / 2 + 16));
    r.distances.emplace(packed_key(goal), 0);
    std::vector<Board> frontier{goal};
    std::vector<Board> next;
    std::int32_t depth = 0;
    while (!frontier.empty()) {
        ++depth;
        next.clear();
        for (const Board& b : frontier) {
            for (Board& nb : legal_moves(b)) {
                if (r.distances.emplace(packed_key(nb), depth).second) {
                    r.max_distance = depth;
                    next.push_back(std::move(nb));
                }
            }
        }
        frontier.swap(next);
    }
    return r;
}

std::optional<int> optimal_length(const Board& b, const ReachabilitySet& r) {
    if (b.width != r.goal.width || b.height != r.goal.height)
        throw std::invalid_argument("optimal_length: dimension mismatch");
    auto it = r.distances.find(packed_key(b));
    if (it == r.distances.end()) return std::nullopt;
    return static_cast<int>(it->second);
}

Validation validate_solution(const Board& start, const std::vector<Board>& steps,
                             const Board& goal) {
    if (steps.empty()) return Validation::bad(0, "empty step sequence");
    if (!(steps.front() == start)) return Validation::bad(0, "does not start at the start board");
    if (!(steps.back() == goal))
        return Validation::bad(steps.size() - 1, "does not end at the goal board");
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        const std::vector<Board> moves = legal_moves(steps[i]);
        bool legal = false;
        for (const Board& m : moves)
            if (m == steps[i + 1]) { legal = true; break; }
        if (!legal) return Validation::bad(i + 1, "not a legal slide from the previous board");
    }
    return Validation::ok();
}

namespace {

constexpr char kCacheMagic[8] = {'P', 'M', 'O', 'R', '1', '\n', 0, 0};

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool read_pod(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return static_cast<bool>(in);
}

} // namespace

void save_reachability(const ReachabilitySet& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write reachability cache: " + path);
    out.write(kCacheMagic, sizeof(kCacheMagic));
    write_pod(out, static_cast<std::int32_t>(r.goal.width));
    write_pod(out, static_cast<std::int32_t>(r.goal.height));
    for (std::uint8_t s : r.goal.slots) write_pod(out, s);
    write_pod(out, static_cast<std::uint64_t>(r.distances.size()));
    write_pod(out, r.max_distance);
    for (const auto& [key, dist] : r.distances) {
        write_pod(out, key);
        write_pod(out, dist);
    }
    if (!out) throw std::runtime_error("write failed for reachability cache: " + path);
}

std::optional<ReachabilitySet> load_reachability(const std::string& path,
                                                 const Board& expected_goal) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[sizeof(kCacheMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) return std::nullopt;
    std::int32_t width = 0, height = 0;
    if (!read_pod(in, width) || !read_pod(in, height)) return std::nullopt;
    if (width != expected_goal.width || height != expected_goal.height) return std::nullopt;
    std::vector<std::uint8_t> slots(static_cast<std::size_t>(width) * height);
    for (std::uint8_t& s : slots)
        if (!read_pod(in, s)) return std::nullopt;
    if (slots != expected_goal.slots) return std::nullopt;
    std::uint64_t count = 0;
    ReachabilitySet r;
    r.goal = expected_goal;
    if (!read_pod(in, count) || !read_pod(in, r.max_distance)) return std::nullopt;
    r.distances.reserve(count + 16);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t key = 0;
        std::int32_t dist = 0;
        if (!read_pod(in, key) || !read_pod(in, dist)) return std::nullopt;
        r.distances.emplace(key, dist);
    }
    return r;
}

} // namespace paramod
