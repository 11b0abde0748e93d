#include "paramod/puzzle.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace paramod {

int Board::hole_index() const {
    for (int i = 0; i < static_cast<int>(slots.size()); ++i)
        if (slots[i] == kHole) return i;
    throw std::logic_error("board has no hole");
}

Board Board::standard_goal(int width, int height) {
    Board b;
    b.width = width;
    b.height = height;
    b.slots.resize(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i + 1 < b.slots.size(); ++i)
        b.slots[i] = static_cast<std::uint8_t>(i + 1);
    b.slots.back() = kHole;
    return b;
}

std::optional<Board> Board::make(int width, int height, std::vector<std::uint8_t> slots) {
    if (width < 2 || height < 2) return std::nullopt;
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (slots.size() != n) return std::nullopt;
    std::vector<bool> seen(n, false);
    for (std::uint8_t v : slots) {
        if (v >= n || seen[v]) return std::nullopt;
        seen[v] = true;
    }
    Board b;
    b.width = width;
    b.height = height;
    b.slots = std::move(slots);
    return b;
}

std::string to_string(const Board& b) {
    std::string out;
    for (std::size_t i = 0; i < b.slots.size(); ++i) {
        if (i) out += ',';
        if (b.slots[i] == kHole) out += "hole";
        else out += std::to_string(static_cast<int>(b.slots[i]));
    }
    return out;
}

namespace {

std::optional<Board> parse_board_sep(std::string_view text, int width, int height, char sep) {
    std::vector<std::uint8_t> slots;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i != text.size() && text[i] != sep) continue;
        std::string_view token = text.substr(start, i - start);
        start = i + 1;
        while (!token.empty() && (token.front() == ' ' || token.front() == '\t'))
            token.remove_prefix(1);
        while (!token.empty() && (token.back() == ' ' || token.back() == '\t'))
            token.remove_suffix(1);
        if (token == "hole") {
            slots.push_back(kHole);
            continue;
        }
        int value = 0;
        auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || p != token.data() + token.size() || value <= 0 || value > 255)
            return std::nullopt;
        slots.push_back(static_cast<std::uint8_t>(value));
    }
    return Board::make(width, height, std::move(slots));
}

} // namespace

std::optional<Board> parse_board(std::string_view text, int width, int height) {
    return parse_board_sep(text, width, height, ',');
}

std::string board_key(const Board& b) {
    std::string out = to_string(b);
    std::replace(out.begin(), out.end(), ',', '-');
    return out;
}

std::optional<Board> parse_board_key(std::string_view text, int width, int height) {
    return parse_board_sep(text, width, height, '-');
}

std::vector<Board> read_board_file(std::istream& in, int width, int height) {
    std::vector<Board> boards;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v = line;
        while (!v.empty() && (v.back() == '\r' || v.back() == ' ' || v.back() == '\t'))
            v.remove_suffix(1);
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        if (v.empty() || v.front() == '#') continue;
        std::optional<Board> b = parse_board(v, width, height);
        if (!b)
            throw std::runtime_error("bad board at line " + std::to_string(lineno) + ": " +
                                     std::string(v));
        boards.push_back(std::move(*b));
    }
    return boards;
}

std::vector<int> inversion_tallies(const Board& b) {
    std::vector<std::uint8_t> seq;
    seq.reserve(b.slots.size());
    for (std::uint8_t v : b.slots)
        if (v != kHole) seq.push_back(v);
    std::vector<int> tallies(seq.size(), 0);
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[j] < seq[i]) ++tallies[i];
    return tallies;
}

int count_inversions(const Board& b) {
    std::vector<int> tallies = inversion_tallies(b);
    int sum = 0;
    for (int t : tallies) sum += t;
    return sum;
}

bool is_solvable(const Board& b, const Board& goal) {
    if (b.width != goal.width || b.height != goal.height)
        throw std::invalid_argument("is_solvable: dimension mismatch");
    auto signature = [](const Board& x) {
        int parity = count_inversions(x) % 2;
        if (x.width % 2 == 0) {
            int hole_row_from_bottom = x.height - 1 - x.hole_index() / x.width;
            parity = (parity + hole_row_from_bottom) % 2;
        }
        return parity;
    };
    return signature(b) == signature(goal);
}

std::vector<Board> legal_moves(const Board& b) {
    const int hole = b.hole_index();
    const int row = hole / b.width;
    const int col = hole % b.width;
    std::vector<Board> out;
    out.reserve(4);
    // hole moves up, down, left, right
    const int deltas[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    for (const auto& d : deltas) {
        const int r = row + d[0];
        const int c = col + d[1];
        if (r < 0 || r >= b.height || c < 0 || c >= b.width) continue;
        Board next = b;
        std::swap(next.slots[hole], next.slots[r * b.width + c]);
        out.push_back(std::move(next));
    }
    return out;
}

namespace {

// Unbiased bounded draw from a fixed-width generator; deterministic across
// platforms (std::shuffle's distribution is implementation-defined).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % n;
}

void shuffle_values(std::vector<std::uint8_t>& values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i)
        std::swap(values[i - 1], values[bounded(rng, i)]);
}

} // namespace

std::vector<Board> generate_solvable(int count, std::uint64_t seed, const Board& goal,
                                     bool free_hole) {
    if (count < 0) throw std::invalid_argument("generate_solvable: negative count");
    const int n = goal.size();
    if (n <= 13) {
        std::uint64_t capacity = factorial(free_hole ? n : n - 1) / 2;
        if (static_cast<std::uint64_t>(count) > capacity)
            throw std::invalid_argument("generate_solvable: count exceeds the number of "
                                        "distinct solvable boards");
    }

    std::mt19937_64 rng(seed);
    std::vector<Board> out;
    out.reserve(static_cast<std::size_t>(count));
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint8_t> values;
    while (static_cast<int>(out.size()) < count) {
        values.clear();
        if (free_hole) {
            for (int v = 0; v < n; ++v) values.push_back(static_cast<std::uint8_t>(v));
            shuffle_values(values, rng);
        } else {
            for (int v = 1; v < n; ++v) values.push_back(static_cast<std::uint8_t>(v));
            shuffle_values(values, rng);
            values.push_back(kHole);
        }
        Board b;
        b.width = goal.width;
        b.height = goal.height;
        b.slots = values;
        if (!is_solvable(b, goal)) continue;
        if (!seen.insert(packed_key(b)).second) continue;
        out.push_back(std::move(b));
    }
    return out;
}

namespace {

struct PuzzleSymbols {
    Symbol l = SymbolTable::intern("l");
    Symbol n = SymbolTable::intern("n");
    TermPtr hole = Term::constant("hole");
    TermPtr nil = Term::constant("nil");
    std::vector<TermPtr> tiles; // tiles[v] = constant for tile v, lazily grown

    static PuzzleSymbols& get() {
        static PuzzleSymbols s;
        return s;
    }

    const TermPtr& tile(int v) {
        if (static_cast<std::size_t>(v) >= tiles.size()) tiles.resize(v + 1);
        if (!tiles[v]) tiles[v] = Term::constant(std::to_string(v));
        return tiles[v];
    }
};

} // namespace

TermPtr encode(const Board& b) {
    PuzzleSymbols& sym = PuzzleSymbols::get();
    TermPtr term = sym.nil;
    for (std::size_t i = b.slots.size(); i > 0; --i) {
        const std::uint8_t v = b.slots[i - 1];
        TermPtr slot = v == kHole ? sym.hole : Term::application(sym.n, {sym.tile(v)});
        term = Term::application(sym.l, {std::move(slot), std::move(term)});
    }
    return term;
}

std::optional<Board> decode(const TermPtr& t, int width, int height) {
    PuzzleSymbols& sym = PuzzleSymbols::get();
    const int n = width * height;
    std::vector<std::uint8_t> slots;
    slots.reserve(static_cast<std::size_t>(n));
    TermPtr cur = t;
    for (int i = 0; i < n; ++i) {
        if (!cur->is_application() || cur->symbol() != sym.l || cur->args().size() != 2)
            return std::nullopt;
        const TermPtr& slot = cur->args()[0];
        if (slot->is_constant() && slot->symbol() == sym.hole->symbol()) {
            slots.push_back(kHole);
        } else if (slot->is_application() && slot->symbol() == sym.n &&
                   slot->args().size() == 1 && slot->args()[0]->is_constant()) {
            const std::string& name = SymbolTable::name(slot->args()[0]->symbol());
            int value = 0;
            auto [p, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
            if (ec != std::errc{} || p != name.data() + name.size() || value <= 0 || value >= n)
                return std::nullopt;
            slots.push_back(static_cast<std::uint8_t>(value));
        } else {
            return std::nullopt;
        }
        cur = cur->args()[1];
    }
    if (!cur->is_constant() || cur->symbol() != sym.nil->symbol()) return std::nullopt;
    return Board::make(width, height, std::move(slots));
}

std::string_view to_string(RuleMode mode) {
    return mode == RuleMode::BoundarySafe ? "boundary-safe" : "paper-faithful";
}

std::optional<RuleMode> parse_rule_mode(std::string_view text) {
    if (text == "boundary-safe") return RuleMode::BoundarySafe;
    if (text == "paper-faithful") return RuleMode::PaperFaithful;
    return std::nullopt;
}

namespace {

TermPtr nest_slots(const std::vector<TermPtr>& slots, const TermPtr& tail) {
    PuzzleSymbols& sym = PuzzleSymbols::get();
    TermPtr term = tail;
    for (std::size_t i = slots.size(); i > 0; --i)
        term = Term::application(sym.l, {slots[i - 1], term});
    return term;
}

// Full-length rule pattern: every slot fixed, nil-terminated, so it can only
// match a complete board at the root.
Clause anchored_rule(int n, int hole_slot, int tile_slot) {
    PuzzleSymbols& sym = PuzzleSymbols::get();
    TermPtr tile = Term::application(sym.n, {Term::variable("x")});
    std::vector<TermPtr> lhs(static_cast<std::size_t>(n));
    int filler = 0;
    for (int i = 0; i < n; ++i) {
        if (i == hole_slot) lhs[i] = sym.hole;
        else if (i == tile_slot) lhs[i] = tile;
        else lhs[i] = Term::variable("v" + std::to_string(++filler));
    }
    std::vector<TermPtr> rhs = lhs;
    std::swap(rhs[hole_slot], rhs[tile_slot]);
    return make_equality(nest_slots(lhs, sym.nil), nest_slots(rhs, sym.nil));
}

// Position-generic swap at `distance`. Variable naming follows the source
// fragments: the distance-1 rule is EQUAL(l(hole,l(n(x),y)),l(n(x),l(hole,y)));
// longer rules take intermediates from x,y,z,u,v (then x1,y1,...), tile w,
// and the next pool letter as the tail.
Clause generic_rule(int distance) {
    PuzzleSymbols& sym = PuzzleSymbols::get();
    TermPtr tile_var;
    TermPtr tail;
    std::vector<TermPtr> between;
    if (distance == 1) {
        tile_var = Term::variable("x");
        tail = Term::variable("y");
    } else {
        static const char* kPool[] = {"x", "y", "z", "u", "v"};
        int pool_index = 0;
        auto next_var = [&]() {
            int i = pool_index++;
            std::string name = kPool[i % 5];
            if (i >= 5) name += std::to_string(i / 5);
            return Term::variable(name);
        };
        for (int i = 0; i < distance - 1; ++i) between.push_back(next_var());
        tile_var = Term::variable("w");
        tail = next_var();
    }
    TermPtr tile = Term::application(sym.n, {tile_var});

    std::vector<TermPtr> lhs, rhs;
    lhs.push_back(sym.hole);
    rhs.push_back(tile);
    for (const TermPtr& v : between) {
        lhs.push_back(v);
        rhs.push_back(v);
    }
    lhs.push_back(tile);
    rhs.push_back(sym.hole);
    return make_equality(nest_slots(lhs, tail), nest_slots(rhs, tail));
}

} // namespace

std::vector<MoveRule> move_rules(int width, int height, RuleMode mode) {
    if (width < 2 || height < 2)
        throw std::invalid_argument("move_rules: width and height must be >= 2");
    std::vector<MoveRule> rules;
    if (mode == RuleMode::PaperFaithful) {
        rules.push_back({generic_rule(1), RuleKind::Horizontal, -1});
        rules.push_back({generic_rule(width), RuleKind::Vertical, -1});
        return rules;
    }
    const int n = width * height;
    for (int p = 0; p < n; ++p)
        if (p % width != width - 1)
            rules.push_back({anchored_rule(n, p, p + 1), RuleKind::Horizontal, p});
    for (int p = 0; p + width < n; ++p)
        rules.push_back({anchored_rule(n, p, p + width), RuleKind::Vertical, p});
    return rules;
}

std::vector<Clause> rule_clauses(const std::vector<MoveRule>& rules) {
    std::vector<Clause> out;
    out.reserve(rules.size());
    for (const MoveRule& r : rules) out.push_back(r.clause);
    return out;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t board_rank(const Board& b) {
    const int n = b.size();
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (b.slots[j] < b.slots[i]) ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
    }
    return rank;
}

Board board_from_rank(std::uint64_t rank, int width, int height) {
    const int n = width * height;
    std::vector<std::uint8_t> pool;
    for (int v = 0; v < n; ++v) pool.push_back(static_cast<std::uint8_t>(v));
    std::vector<std::uint8_t> slots;
    slots.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::uint64_t f = factorial(n - 1 - i);
        const std::size_t idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        slots.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    Board b;
    b.width = width;
    b.height = height;
    b.slots = std::move(slots);
    return b;
}

std::uint64_t packed_key(const Board& b) {
    std::uint64_t key = 0;
    for (std::uint8_t v : b.slots) key = (key << 4) | v;
    return key;
}

} // namespace paramod
