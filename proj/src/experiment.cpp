#include "paramod/experiment.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paramod {

namespace {

RunRecord solve_one(int index, const Board& board, const std::vector<Clause>& rules,
                    const Board& goal, RuleMode mode, const Limits& limits,
                    const ReachabilitySet& reach) {
    RunRecord rec;
    rec.puzzle_index = index;
    rec.board = board;
    rec.rule_mode = mode;
    std::optional<int> optimal = optimal_length(board, reach);
    if (!optimal)
        throw std::logic_error("experiment board is not in the oracle's reachable set: " +
                               to_string(board));
    rec.optimal_length = *optimal;

    std::vector<Clause> sos{make_fact(state_predicate(), encode(board))};
    Clause goal_clause = make_fact(state_predicate(), encode(goal), Polarity::Negative);

    const auto t0 = std::chrono::steady_clock::now();
    ProverResult result = run(rules, sos, goal_clause, limits);
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    rec.outcome = result.outcome;
    rec.limit = result.limit;
    rec.generated = result.counters.generated;
    rec.kept = result.counters.kept;
    rec.given = result.counters.given;

    if (result.outcome == OutcomeKind::ProofFound) {
        std::vector<Board> steps = extract_solution(*result.proof, board.width, board.height);
        rec.solution_length = steps.size() - 1;
        if (mode == RuleMode::BoundarySafe) {
            Validation v = validate_solution(board, steps, goal);
            if (!v.valid)
                throw std::logic_error("prover solution failed oracle validation at step " +
                                       std::to_string(v.index) + ": " + v.reason);
            if (*rec.solution_length < static_cast<std::uint64_t>(rec.optimal_length))
                throw std::logic_error("prover solution shorter than the oracle optimum for " +
                                       to_string(board));
        }
    }
    return rec;
}

} // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.count < 0) throw std::invalid_argument("run_experiment: negative count");
    if (cfg.width < 2 || cfg.height < 2)
        throw std::invalid_argument("run_experiment: width and height must be >= 2");
    const Board goal = cfg.goal_board();
    if (goal.width != cfg.width || goal.height != cfg.height)
        throw std::invalid_argument("run_experiment: goal dimensions disagree with config");
    const Limits limits = cfg.effective_limits();

    const std::vector<Board> boards = generate_solvable(cfg.count, cfg.seed, goal, cfg.free_hole);

    ReachabilitySet built;
    const ReachabilitySet* reach = cfg.oracle;
    if (!reach) {
        built = build_reachability(goal);
        reach = &built;
    }
    const std::vector<Clause> rules = rule_clauses(move_rules(cfg.width, cfg.height, cfg.rule_mode));

    std::vector<RunRecord> records(boards.size());
    std::string first_error;
#ifdef _OPENMP
    const int jobs = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs > 1)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(boards.size()); ++i) {
        try {
            records[static_cast<std::size_t>(i)] =
                solve_one(static_cast<int>(i), boards[static_cast<std::size_t>(i)], rules,
                          goal, cfg.rule_mode, limits, *reach);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) throw std::runtime_error(first_error);
    return records;
}

std::string outcome_tag(OutcomeKind outcome, std::optional<LimitKind> limit) {
    if (outcome == OutcomeKind::LimitHit && limit)
        return "limit_" + std::string(to_string(*limit));
    return std::string(to_string(outcome));
}

namespace {

std::string format_wall(double wall_ms) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", wall_ms);
    return buf;
}

std::optional<std::pair<OutcomeKind, std::optional<LimitKind>>>
parse_outcome_tag(std::string_view tag) {
    if (tag == "proof_found") return {{OutcomeKind::ProofFound, std::nullopt}};
    if (tag == "sos_exhausted") return {{OutcomeKind::SosExhausted, std::nullopt}};
    if (tag == "limit_max_generated") return {{OutcomeKind::LimitHit, LimitKind::MaxGenerated}};
    if (tag == "limit_max_kept") return {{OutcomeKind::LimitHit, LimitKind::MaxKept}};
    if (tag == "limit_max_given") return {{OutcomeKind::LimitHit, LimitKind::MaxGiven}};
    return std::nullopt;
}

} // namespace

std::string csv_text(const std::vector<RunRecord>& records, bool include_wall) {
    std::string out =
        "index,board,rule_mode,outcome,generated,kept,given,solution_length,"
        "optimal_length,wall_ms\n";
    for (const RunRecord& r : records) {
        out += std::to_string(r.puzzle_index);
        out += ',';
        out += board_key(r.board);
        out += ',';
        out += to_string(r.rule_mode);
        out += ',';
        out += outcome_tag(r.outcome, r.limit);
        out += ',';
        out += std::to_string(r.generated);
        out += ',';
        out += std::to_string(r.kept);
        out += ',';
        out += std::to_string(r.given);
        out += ',';
        if (r.solution_length) out += std::to_string(*r.solution_length);
        out += ',';
        out += std::to_string(r.optimal_length);
        out += ',';
        out += include_wall ? format_wall(r.wall_ms) : "0";
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<RunRecord>& records, const std::string& path,
              bool include_wall) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write CSV: " + path);
    out << csv_text(records, include_wall);
    if (!out) throw std::runtime_error("write failed for CSV: " + path);
}

std::vector<RunRecord> parse_csv(std::istream& in, int width, int height) {
    std::vector<RunRecord> records;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 10) throw std::runtime_error("bad CSV row: " + line);
        RunRecord r;
        r.puzzle_index = std::stoi(fields[0]);
        std::optional<Board> b = parse_board_key(fields[1], width, height);
        if (!b) throw std::runtime_error("bad CSV board: " + fields[1]);
        r.board = std::move(*b);
        std::optional<RuleMode> mode = parse_rule_mode(fields[2]);
        if (!mode) throw std::runtime_error("bad CSV rule mode: " + fields[2]);
        r.rule_mode = *mode;
        auto outcome = parse_outcome_tag(fields[3]);
        if (!outcome) throw std::runtime_error("bad CSV outcome: " + fields[3]);
        r.outcome = outcome->first;
        r.limit = outcome->second;
        r.generated = std::stoull(fields[4]);
        r.kept = std::stoull(fields[5]);
        r.given = std::stoull(fields[6]);
        if (!fields[7].empty()) r.solution_length = std::stoull(fields[7]);
        r.optimal_length = std::stoi(fields[8]);
        r.wall_ms = std::stod(fields[9]);
        records.push_back(std::move(r));
    }
    return records;
}

PlotSeries sorted_plot_series(const std::vector<RunRecord>& records) {
    PlotSeries s;
    s.by_index.reserve(records.size());
    for (const RunRecord& r : records) s.by_index.push_back(r.generated);
    s.sorted = s.by_index;
    std::sort(s.sorted.begin(), s.sorted.end());
    return s;
}

namespace {

void write_series(const std::string& path, const std::vector<std::uint64_t>& values) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write plot data: " + path);
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (i + 1) << ' ' << values[i] << '\n';
    if (!out) throw std::runtime_error("write failed for plot data: " + path);
}

} // namespace

PlotSeries emit_sorted_plot(const std::vector<RunRecord>& records,
                            const std::string& path_prefix) {
    PlotSeries s = sorted_plot_series(records);
    write_series(path_prefix + "-by-index.dat", s.by_index);
    write_series(path_prefix + "-sorted.dat", s.sorted);
    return s;
}

std::string format_ratio_2dp(double ratio) {
    if (!std::isfinite(ratio)) return "inf";
    const double truncated = std::trunc(ratio * 100.0) / 100.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", truncated);
    return buf;
}

std::optional<double> spearman_rank_correlation(std::span<const double> x,
                                                std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) return std::nullopt;

    auto ranks = [n](std::span<const double> v) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> rank(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
            i = j + 1;
        }
        return rank;
    };

    const std::vector<double> rx = ranks(x);
    const std::vector<double> ry = ranks(y);
    const double mean = (static_cast<double>(n) + 1.0) / 2.0;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

Summary summarize(const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize: empty input");
    Summary s;
    s.count = records.size();
    s.easiest = records.front();
    s.hardest = records.front();
    double sum = 0;
    std::vector<double> generated, optimal;
    generated.reserve(records.size());
    optimal.reserve(records.size());
    for (const RunRecord& r : records) {
        if (r.generated < s.easiest.generated) s.easiest = r;
        if (r.generated > s.hardest.generated) s.hardest = r;
        sum += static_cast<double>(r.generated);
        generated.push_back(static_cast<double>(r.generated));
        optimal.push_back(static_cast<double>(r.optimal_length));
        s.total_wall_ms += r.wall_ms;
    }
    s.max_min_ratio = s.easiest.generated == 0
                          ? std::numeric_limits<double>::infinity()
                          : static_cast<double>(s.hardest.generated) /
                                static_cast<double>(s.easiest.generated);
    s.ratio_display = format_ratio_2dp(s.max_min_ratio);
    s.mean = sum / static_cast<double>(records.size());
    std::vector<double> sorted = generated;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    s.median = n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    s.spearman = spearman_rank_correlation(generated, optimal);
    return s;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

} // namespace

std::string summary_text(const Summary& s) {
    std::string out;
    out += "puzzles: " + std::to_string(s.count) + '\n';
    out += "easiest: " + to_string(s.easiest.board) + " generated=" +
           std::to_string(s.easiest.generated) +
           " optimal=" + std::to_string(s.easiest.optimal_length) + '\n';
    out += "hardest: " + to_string(s.hardest.board) + " generated=" +
           std::to_string(s.hardest.generated) +
           " optimal=" + std::to_string(s.hardest.optimal_length) + '\n';
    out += "max/min ratio: " + s.ratio_display + '\n';
    out += "mean generated: " + format_double(s.mean) + '\n';
    out += "median generated: " + format_double(s.median) + '\n';
    out += "spearman(generated, optimal): " +
           (s.spearman ? format_double(*s.spearman) : std::string("n/a")) + '\n';
    out += "wall total: " + format_wall(s.total_wall_ms) + " ms\n";
    return out;
}

std::string summary_json(const Summary& s) {
    nlohmann::json j;
    j["count"] = s.count;
    j["easiest"] = {{"board", board_key(s.easiest.board)},
                    {"generated", s.easiest.generated},
                    {"optimal_length", s.easiest.optimal_length}};
    j["hardest"] = {{"board", board_key(s.hardest.board)},
                    {"generated", s.hardest.generated},
                    {"optimal_length", s.hardest.optimal_length}};
    if (std::isfinite(s.max_min_ratio)) j["max_min_ratio"] = s.max_min_ratio;
    else j["max_min_ratio"] = nullptr;
    j["max_min_ratio_2dp"] = s.ratio_display;
    j["mean_generated"] = s.mean;
    j["median_generated"] = s.median;
    if (s.spearman) j["spearman_generated_vs_optimal"] = *s.spearman;
    else j["spearman_generated_vs_optimal"] = nullptr;
    j["total_wall_ms"] = s.total_wall_ms;
    return j.dump(2) + "\n";
}

} // namespace paramod
