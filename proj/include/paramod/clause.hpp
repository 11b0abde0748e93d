#pragma once

#include "paramod/term.hpp"

#include <cstdint>
#include <iosfwd>
#include <unordered_map>

namespace paramod {

enum class Polarity : std::uint8_t { Positive, Negative };

/// Well-known predicate symbols.
Symbol equal_predicate(); // "EQUAL", always binary
Symbol state_predicate(); // "State", the ground-board fact predicate

struct Literal {
    Symbol predicate = 0;
    std::vector<TermPtr> args;
    Polarity polarity = Polarity::Positive;

    bool is_positive() const { return polarity == Polarity::Positive; }
    /// Positive binary EQUAL literal (usable as a paramodulation from-literal).
    bool is_positive_equality() const {
        return is_positive() && predicate == equal_predicate() && args.size() == 2;
    }
};

bool equal(const Literal& a, const Literal& b);

using ClauseId = std::uint32_t; // 0 = not yet retained

enum class ParentRole : std::uint8_t { From, Into };

struct Parent {
    ClauseId id = 0;
    ParentRole role = ParentRole::From;
    bool operator==(const Parent&) const = default;
};

/**
 * Unit clause: exactly one literal (the restriction is structural).
 *
 * id and birth_index are assigned at retention; parents is empty iff the
 * clause is an input clause. weight is the symbol count of the literal.
 */
struct Clause {
    ClauseId id = 0;
    Literal literal;
    std::vector<Parent> parents;
    std::uint32_t weight = 0;
    std::uint64_t birth_index = 0;

    const Parent* parent(ParentRole role) const;
};

Clause make_clause(Literal lit);
Clause make_equality(TermPtr lhs, TermPtr rhs, Polarity polarity = Polarity::Positive);
Clause make_fact(Symbol predicate, TermPtr arg, Polarity polarity = Polarity::Positive);

/// Symbol-count weight: every predicate, functor, constant and variable
/// occurrence counts 1.
std::uint32_t weigh(const Clause& c);

void collect_variables(const Literal& lit, std::vector<Symbol>& out);
std::vector<Symbol> variables_of(const Clause& c);

/**
 * Returns a variant of c whose variables are disjoint from `avoid`.
 * Deterministic in (c, avoid): each colliding variable keeps its base letter
 * and gains the smallest positive integer suffix that is fresh.
 */
Clause rename_apart(const Clause& c, std::span<const Symbol> avoid);

/// Equality up to one consistent bijective variable renaming of the whole
/// literal. Predicates are ordered: argument order is never commuted.
bool is_variant(const Clause& a, const Clause& b);

/// Opaque retention key: equal signatures iff is_variant. Variables are
/// renumbered in first-occurrence order before serialization.
std::string canonical_signature(const Clause& c);

/// Retained-clause index keyed by canonical variant signature.
class ClauseDB {
public:
    /// Id of the retained variant, or 0.
    ClauseId find_variant(const std::string& signature) const;
    /// Registers signature -> id; first registration wins. Returns false if a
    /// variant was already present.
    bool insert(std::string signature, ClauseId id);
    std::size_t size() const { return by_signature_.size(); }

private:
    std::unordered_map<std::string, ClauseId> by_signature_;
};

// --- text io ---------------------------------------------------------------

/// "EQUAL(a,b)" — no whitespace.
std::string to_string(const Literal& lit);
/// "EQUAL(a,b)." / "-State(t)." — the clause text syntax.
std::string to_string(const Clause& c);
/// Parses clause text ("EQUAL(a,b)." / "-State(t)."); the trailing '.' is
/// required. Throws std::runtime_error on malformed input.
Clause parse_clause(std::string_view text);

struct ProblemClauses {
    std::vector<Clause> usable;
    std::vector<Clause> sos;
};

/// Reads list(usable). ... end_of_list. / list(sos). ... end_of_list. blocks.
ProblemClauses read_problem(std::istream& in);
/// Writes the same block format, one clause per line.
void write_problem(std::ostream& out, const ProblemClauses& problem);

} // namespace paramod
