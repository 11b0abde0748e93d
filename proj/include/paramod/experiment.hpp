#pragma once

#include "paramod/oracle.hpp"
#include "paramod/saturation.hpp"

namespace paramod {

struct RunRecord {
    int puzzle_index = 0; // 0-based generation order
    Board board;
    RuleMode rule_mode = RuleMode::BoundarySafe;
    OutcomeKind outcome = OutcomeKind::SosExhausted;
    std::optional<LimitKind> limit;
    std::uint64_t generated = 0;
    std::uint64_t kept = 0;
    std::uint64_t given = 0;
    std::optional<std::uint64_t> solution_length;
    int optimal_length = 0;
    double wall_ms = 0.0;
};

struct ExperimentConfig {
    int count = 100;
    std::uint64_t seed = 1;
    int width = 3;
    int height = 3;
    std::optional<Board> goal;      // default: standard goal for width x height
    RuleMode rule_mode = RuleMode::BoundarySafe;
    std::optional<Limits> limits;   // default: Limits::defaults_for(width, height)
    int jobs = 0;                   // 0 = one worker per available thread
    bool free_hole = false;
    const ReachabilitySet* oracle = nullptr; // reuse a prebuilt/cached oracle

    Board goal_board() const { return goal ? *goal : Board::standard_goal(width, height); }
    Limits effective_limits() const {
        return limits ? *limits : Limits::defaults_for(width, height);
    }
};

/**
 * The end-to-end pipeline: generate `count` seeded solvable boards, build the
 * oracle once, run the prover per board (parallel workers, records reordered
 * by puzzle index), validate every found solution. Deterministic in
 * (config, seed) for everything except wall_ms.
 *
 * With boundary-safe rules an oracle-invalid solution or one shorter than
 * optimal is a prover bug and throws; paper-faithful runs skip those checks
 * (wrap pseudo-moves are expected).
 */
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

/// Writes header index,board,rule_mode,outcome,generated,kept,given,
/// solution_length,optimal_length,wall_ms then one row per record. wall_ms
/// emits 0 unless include_wall (keeps default output byte-deterministic).
void emit_csv(const std::vector<RunRecord>& records, const std::string& path,
              bool include_wall = false);
std::string csv_text(const std::vector<RunRecord>& records, bool include_wall = false);
/// Parses csv_text output back into records (scalar fields).
std::vector<RunRecord> parse_csv(std::istream& in, int width, int height);

struct PlotSeries {
    std::vector<std::uint64_t> by_index; // generated counts in puzzle order
    std::vector<std::uint64_t> sorted;   // the same counts ascending
};

PlotSeries sorted_plot_series(const std::vector<RunRecord>& records);
/// Writes <prefix>-by-index.dat and <prefix>-sorted.dat, two columns
/// (1-based index, generated count).
PlotSeries emit_sorted_plot(const std::vector<RunRecord>& records,
                            const std::string& path_prefix);

struct Summary {
    std::size_t count = 0;
    RunRecord easiest; // minimum generated (first on ties)
    RunRecord hardest; // maximum generated (first on ties)
    double max_min_ratio = 0.0;
    std::string ratio_display; // truncated to 2 decimals
    double mean = 0.0;
    double median = 0.0;
    std::optional<double> spearman; // generated vs optimal length; n/a if undefined
    double total_wall_ms = 0.0;
};

/// Throws std::invalid_argument (EmptyInput) on an empty record list.
Summary summarize(const std::vector<RunRecord>& records);
std::string summary_text(const Summary& s);
std::string summary_json(const Summary& s);

/// Spearman rank correlation with average ranks over ties; nullopt when
/// undefined (fewer than 2 points or zero variance).
std::optional<double> spearman_rank_correlation(std::span<const double> x,
                                                std::span<const double> y);

/// Truncates toward zero at 2 decimals: 155.7357 -> "155.73".
std::string format_ratio_2dp(double ratio);

std::string outcome_tag(OutcomeKind outcome, std::optional<LimitKind> limit);

} // namespace paramod
