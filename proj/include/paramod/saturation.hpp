#pragma once

#include "paramod/inference.hpp"
#include "paramod/puzzle.hpp"

#include <functional>
#include <queue>

namespace paramod {

struct Limits {
    std::optional<std::uint64_t> max_generated; // stop after processing the crossing clause
    std::optional<std::uint64_t> max_kept;
    std::optional<std::uint64_t> max_given;     // checked before each selection
    std::optional<std::uint32_t> max_weight;    // retention filter; never halts the run

    static Limits unlimited() { return {}; }
    /// Unlimited counters plus max_weight = encoded ground-state clause weight
    /// + 4, computed from the encoder. Prunes rule self-composition while
    /// never pruning a ground state.
    static Limits defaults_for(int width, int height);
};

/// Ground State(...) clause weight for a width x height board, from the encoder.
std::uint32_t ground_state_weight(int width, int height);

struct Counters {
    std::uint64_t generated = 0;
    std::uint64_t kept = 0;
    std::uint64_t given = 0;
};

enum class LimitKind : std::uint8_t { MaxGenerated, MaxKept, MaxGiven };
std::string_view to_string(LimitKind k);

/// Min-priority queue over (weight, birth_index): lightest clause first,
/// FIFO tie-break.
class SosQueue {
public:
    struct Entry {
        std::uint32_t weight;
        std::uint64_t birth;
        ClauseId id;
    };
    void push(const Clause& c) { heap_.push({c.weight, c.birth_index, c.id}); }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    ClauseId pop();

private:
    struct After {
        bool operator()(const Entry& a, const Entry& b) const {
            return a.weight != b.weight ? a.weight > b.weight : a.birth > b.birth;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, After> heap_;
};

/**
 * The saturation loop's working state. Retained clauses are stored by id
 * (ids are dense from 1); input clauses get ids 1..k in input order, new
 * clauses in retention order after that.
 */
struct SaturationState {
    std::vector<Clause> clauses; // clauses[id - 1]
    std::vector<ClauseId> usable_ids;          // insertion order
    std::vector<ClauseId> usable_equality_ids; // ascending id
    SosQueue sos;
    ClauseDB db;
    Counters counters;
    Limits limits;
    std::uint64_t next_birth = 0;

    const Clause& clause(ClauseId id) const { return clauses[id - 1]; }
    /// Assigns the next id and birth, registers the signature, queues to SoS
    /// or appends to usable. Input clauses only (parents must be empty).
    ClauseId add_input(Clause c, bool to_sos);
    void move_to_usable(ClauseId id);
    std::size_t usable_size() const { return usable_ids.size(); }
};

/// Removes and returns the minimum-(weight, birth) SoS clause; nullopt when
/// SoS is empty.
std::optional<Clause> select_given(SaturationState& state);

enum class ProcessKind : std::uint8_t { Retained, Discarded, ProofSignal };

struct ProcessResult {
    ProcessKind kind = ProcessKind::Discarded;
    ClauseId id = 0; // retained id; for a variant discard, the retained twin
    std::optional<Substitution> conflict_unifier;
};

/**
 * Retention test and unit-conflict check for one freshly generated clause.
 * Always increments generated_count; discards variants and over-weight
 * clauses; otherwise retains into SoS and tests unit conflict against goal.
 */
ProcessResult process_new(SaturationState& state, Clause candidate, const Clause& goal);

enum class OutcomeKind : std::uint8_t { ProofFound, SosExhausted, LimitHit };
std::string_view to_string(OutcomeKind k);

struct ProverResult {
    OutcomeKind outcome = OutcomeKind::SosExhausted;
    std::optional<LimitKind> limit;
    Counters counters;
    /// Present iff outcome == ProofFound: the into-parent chain from the
    /// input clause to the goal-matching clause.
    std::optional<std::vector<Clause>> proof;
};

struct RunOptions {
    std::ostream* given_log = nullptr; // one line per given clause + counters
    std::function<void(const Paramodulant&)> on_generated; // instrumentation
    int inference_threads = 1; // >1 uses the deterministic parallel merge
    ParamodulationOptions paramodulation;
};

/**
 * The given-clause main loop. Inputs are numbered from 1 in input order
 * (usable first, then sos); the goal stays unnumbered. The unit-conflict
 * check runs once over the input sos clauses before the loop, so a run whose
 * initial state already matches the goal reports generated_count = 0.
 *
 * Bit-for-bit deterministic in its inputs. Throws std::invalid_argument if
 * goal is not a negative unit.
 */
ProverResult run(const std::vector<Clause>& input_usable,
                 const std::vector<Clause>& input_sos, const Clause& goal,
                 const Limits& limits, const RunOptions& options = {});

/// Decodes a State(...) proof chain into its board sequence. Throws
/// NonGroundStateError when a chain term does not decode to a board
/// (variables present, wrong predicate, malformed shape).
struct NonGroundStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
std::vector<Board> extract_solution(const std::vector<Clause>& proof, int width, int height);

/// "<id> [input] <clause>" / "<id> [para_from,<from>,<into>] <clause>"
std::string trace_line(const Clause& c);

} // namespace paramod
