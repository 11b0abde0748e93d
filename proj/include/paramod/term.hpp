#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paramod {

/// Interned identifier for variable, constant, functor and predicate names.
/// Symbol 0 is never assigned.
using Symbol = std::uint32_t;

class SymbolTable {
public:
    static Symbol intern(std::string_view name);
    static const std::string& name(Symbol s);

private:
    SymbolTable() = default;
    static SymbolTable& instance();
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Variables are lexically distinguished: one of the letters u..z optionally
/// followed by digits (x, y2, v13). Everything else names a constant/functor.
bool is_variable_name(std::string_view name);

class Term;
using TermPtr = std::shared_ptr<const Term>;

/**
 * First-order term: variable, constant, or function application.
 *
 * Terms are immutable after construction and freely shared across threads.
 * Structural hash, symbol-count weight and groundness are computed once at
 * construction. A zero-arity application is represented as a Constant.
 */
class Term {
public:
    enum class Kind : std::uint8_t { Variable, Constant, Application };

    static TermPtr variable(Symbol name);
    static TermPtr constant(Symbol name);
    static TermPtr application(Symbol functor, std::vector<TermPtr> args);

    static TermPtr variable(std::string_view name);
    static TermPtr constant(std::string_view name);
    static TermPtr application(std::string_view functor, std::vector<TermPtr> args);

    Kind kind() const { return kind_; }
    Symbol symbol() const { return symbol_; }
    const std::vector<TermPtr>& args() const { return args_; }

    bool is_variable() const { return kind_ == Kind::Variable; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    bool is_application() const { return kind_ == Kind::Application; }

    std::size_t hash() const { return hash_; }
    std::uint32_t weight() const { return weight_; }
    bool ground() const { return ground_; }

    struct Private {};
    Term(Private, Kind kind, Symbol symbol, std::vector<TermPtr> args);

private:
    Kind kind_;
    bool ground_;
    Symbol symbol_;
    std::uint32_t weight_;
    std::size_t hash_;
    std::vector<TermPtr> args_;
};

/// Structural (syntactic) equality.
bool equal(const TermPtr& a, const TermPtr& b);

/// True iff variable v appears anywhere in t.
bool occurs_in(Symbol v, const TermPtr& t);

/// Appends each distinct variable of t to out, in first-occurrence order.
void collect_variables(const TermPtr& t, std::vector<Symbol>& out);

using Binding = std::pair<Symbol, TermPtr>;

/// Single-pass substitution: each bound variable is replaced by its image
/// exactly once; images are not re-substituted. Bindings need not form an
/// idempotent map (Substitution::apply funnels through this with one that does).
TermPtr apply_bindings(std::span<const Binding> bindings, const TermPtr& t);

/**
 * Idempotent variable-to-term map.
 *
 * Construction drops identity bindings and rejects any map whose domain
 * intersects the variables of its range (the strong form of idempotence;
 * it subsumes the per-binding occurs check).
 */
class Substitution {
public:
    Substitution() = default;

    /// nullopt = occurs violation (map is not idempotent).
    static std::optional<Substitution> make(std::vector<Binding> bindings);

    /// compose(outer, inner): apply(result, t) == apply(outer, apply(inner, t)).
    /// nullopt = OccursViolation (composition binds a variable into a cycle).
    static std::optional<Substitution> compose(const Substitution& outer,
                                               const Substitution& inner);

    TermPtr apply(const TermPtr& t) const;

    const TermPtr* lookup(Symbol v) const;
    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    /// Bindings sorted by variable symbol id.
    const std::vector<Binding>& bindings() const { return bindings_; }

private:
    std::vector<Binding> bindings_;
};

/// Most general unifier with occurs check; nullopt = NoUnifier.
/// The result is idempotent and fully resolved.
std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b);

/// Argument-index path from the root; root is the empty path.
using Path = std::vector<std::uint32_t>;

struct PositionEntry {
    Path path;
    TermPtr term;
};

/// Preorder enumeration of all subterm positions, root included.
/// Variable positions are included (term->is_variable() flags them).
std::vector<PositionEntry> subterm_positions(const TermPtr& t);

/// Returns t with the subterm at path replaced; shares all untouched structure.
TermPtr replace_at(const TermPtr& t, const Path& path, const TermPtr& replacement);

/// Prints in the prover's text syntax: f(t1,...,tn), no whitespace.
std::string to_string(const TermPtr& t);
void print_term(std::string& out, const TermPtr& t);

/// Parses the term text syntax; whitespace-insensitive. Throws std::runtime_error
/// with position context on malformed input.
TermPtr parse_term(std::string_view text);

} // namespace paramod
