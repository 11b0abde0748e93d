#include "paramod/clause.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace paramod {

Symbol equal_predicate() {
    static const Symbol s = SymbolTable::intern("EQUAL");
    return s;
}

Symbol state_predicate() {
    static const Symbol s = SymbolTable::intern("State");
    return s;
}

bool equal(const Literal& a, const Literal& b) {
    if (a.predicate != b.predicate || a.polarity != b.polarity ||
        a.args.size() != b.args.size())
        return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal(a.args[i], b.args[i])) return false;
    return true;
}

const Parent* Clause::parent(ParentRole role) const {
    for (const Parent& p : parents)
        if (p.role == role) return &p;
    return nullptr;
}

Clause make_clause(Literal lit) {
    Clause c;
    c.literal = std::move(lit);
    c.weight = weigh(c);
    return c;
}

Clause make_equality(TermPtr lhs, TermPtr rhs, Polarity polarity) {
    Literal lit;
    lit.predicate = equal_predicate();
    lit.args = {std::move(lhs), std::move(rhs)};
    lit.polarity = polarity;
    return make_clause(std::move(lit));
}

Clause make_fact(Symbol predicate, TermPtr arg, Polarity polarity) {
    Literal lit;
    lit.predicate = predicate;
    lit.args = {std::move(arg)};
    lit.polarity = polarity;
    return make_clause(std::move(lit));
}

std::uint32_t weigh(const Clause& c) {
    std::uint32_t w = 1; // the predicate
    for (const TermPtr& t : c.literal.args) w += t->weight();
    return w;
}

void collect_variables(const Literal& lit, std::vector<Symbol>& out) {
    for (const TermPtr& t : lit.args) collect_variables(t, out);
}

std::vector<Symbol> variables_of(const Clause& c) {
    std::vector<Symbol> vars;
    collect_variables(c.literal, vars);
    return vars;
}

namespace {

// Base letter of a variable name: strips any digit suffix.
std::string_view variable_base(std::string_view name) {
    std::size_t end = name.size();
    while (end > 1 && name[end - 1] >= '0' && name[end - 1] <= '9') --end;
    return name.substr(0, end);
}

} // namespace

Clause rename_apart(const Clause& c, std::span<const Symbol> avoid) {
    std::vector<Symbol> vars = variables_of(c);
    if (vars.empty() || avoid.empty()) return c;

    auto avoided = [&](Symbol s) {
        return std::find(avoid.begin(), avoid.end(), s) != avoid.end();
    };
    bool any = std::any_of(vars.begin(), vars.end(), avoided);
    if (!any) return c;

    std::vector<Binding> renaming;
    std::vector<Symbol> taken(avoid.begin(), avoid.end());
    taken.insert(taken.end(), vars.begin(), vars.end());
    for (Symbol v : vars) {
        if (!avoided(v)) continue;
        std::string base(variable_base(SymbolTable::name(v)));
        for (unsigned suffix = 1;; ++suffix) {
            Symbol candidate = SymbolTable::intern(base + std::to_string(suffix));
            if (std::find(taken.begin(), taken.end(), candidate) == taken.end()) {
                taken.push_back(candidate);
                renaming.emplace_back(v, Term::variable(candidate));
                break;
            }
        }
    }

    Clause renamed = c;
    for (TermPtr& arg : renamed.literal.args) arg = apply_bindings(renaming, arg);
    return renamed;
}

namespace {

bool variant_rec(const TermPtr& a, const TermPtr& b,
                 std::vector<std::pair<Symbol, Symbol>>& fwd) {
    if (a->kind() != b->kind()) return false;
    if (a->is_variable()) {
        for (const auto& [from, to] : fwd) {
            if (from == a->symbol()) return to == b->symbol();
            if (to == b->symbol()) return false; // not injective
        }
        fwd.emplace_back(a->symbol(), b->symbol());
        return true;
    }
    if (a->symbol() != b->symbol() || a->args().size() != b->args().size()) return false;
    for (std::size_t i = 0; i < a->args().size(); ++i)
        if (!variant_rec(a->args()[i], b->args()[i], fwd)) return false;
    return true;
}

} // namespace

bool is_variant(const Clause& a, const Clause& b) {
    const Literal& la = a.literal;
    const Literal& lb = b.literal;
    if (la.predicate != lb.predicate || la.polarity != lb.polarity ||
        la.args.size() != lb.args.size())
        return false;
    std::vector<std::pair<Symbol, Symbol>> fwd;
    for (std::size_t i = 0; i < la.args.size(); ++i)
        if (!variant_rec(la.args[i], lb.args[i], fwd)) return false;
    return true;
}

namespace {

void append_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void signature_rec(std::string& out, const TermPtr& t, std::vector<Symbol>& seen) {
    switch (t->kind()) {
    case Term::Kind::Variable: {
        auto it = std::find(seen.begin(), seen.end(), t->symbol());
        std::uint32_t index;
        if (it == seen.end()) {
            index = static_cast<std::uint32_t>(seen.size());
            seen.push_back(t->symbol());
        } else {
            index = static_cast<std::uint32_t>(it - seen.begin());
        }
        out.push_back('V');
        append_u32(out, index);
        return;
    }
    case Term::Kind::Constant:
        out.push_back('C');
        append_u32(out, t->symbol());
        return;
    case Term::Kind::Application:
        out.push_back('A');
        append_u32(out, t->symbol());
        out.push_back(static_cast<char>(t->args().size()));
        for (const TermPtr& a : t->args()) signature_rec(out, a, seen);
        return;
    }
}

} // namespace

std::string canonical_signature(const Clause& c) {
    std::string out;
    out.reserve(c.weight * 6);
    out.push_back(c.literal.is_positive() ? '+' : '-');
    append_u32(out, c.literal.predicate);
    std::vector<Symbol> seen;
    for (const TermPtr& arg : c.literal.args) signature_rec(out, arg, seen);
    return out;
}

ClauseId ClauseDB::find_variant(const std::string& signature) const {
    auto it = by_signature_.find(signature);
    return it == by_signature_.end() ? 0 : it->second;
}

bool ClauseDB::insert(std::string signature, ClauseId id) {
    return by_signature_.emplace(std::move(signature), id).second;
}

// --- text io ---------------------------------------------------------------

std::string to_string(const Literal& lit) {
    std::string out = SymbolTable::name(lit.predicate);
    out += '(';
    for (std::size_t i = 0; i < lit.args.size(); ++i) {
        if (i) out += ',';
        print_term(out, lit.args[i]);
    }
    out += ')';
    return out;
}

std::string to_string(const Clause& c) {
    std::string out;
    if (!c.literal.is_positive()) out += '-';
    out += to_string(c.literal);
    out += '.';
    return out;
}

namespace {

struct ClauseParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::runtime_error("clause parse error at offset " + std::to_string(pos) +
                                 ": " + what);
    }

    static bool pred_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    }

    Clause clause() {
        skip_ws();
        Polarity polarity = Polarity::Positive;
        if (pos < text.size() && text[pos] == '-') {
            polarity = Polarity::Negative;
            ++pos;
        }
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && pred_char(text[pos])) ++pos;
        if (pos == start) fail("expected predicate");
        std::string_view pred = text.substr(start, pos - start);
        skip_ws();
        if (pos >= text.size() || text[pos] != '(') fail("expected '('");
        // Balance parentheses to find the argument span, then reuse the term
        // parser per argument at depth 0.
        std::size_t open = pos;
        int depth = 0;
        std::size_t i = pos;
        for (; i < text.size(); ++i) {
            if (text[i] == '(') ++depth;
            else if (text[i] == ')' && --depth == 0) break;
        }
        if (depth != 0) fail("unbalanced parentheses");
        std::string_view inner = text.substr(open + 1, i - open - 1);
        std::vector<TermPtr> args;
        std::size_t arg_start = 0;
        int d = 0;
        for (std::size_t j = 0; j <= inner.size(); ++j) {
            if (j == inner.size() || (inner[j] == ',' && d == 0)) {
                args.push_back(parse_term(inner.substr(arg_start, j - arg_start)));
                arg_start = j + 1;
            } else if (inner[j] == '(') ++d;
            else if (inner[j] == ')') --d;
        }
        pos = i + 1;
        skip_ws();
        if (pos >= text.size() || text[pos] != '.') fail("expected terminating '.'");
        ++pos;
        skip_ws();
        if (pos != text.size()) fail("trailing input");
        Literal lit;
        lit.predicate = SymbolTable::intern(pred);
        lit.args = std::move(args);
        lit.polarity = polarity;
        if (lit.predicate == equal_predicate() && lit.args.size() != 2)
            fail("EQUAL takes exactly 2 arguments");
        return make_clause(std::move(lit));
    }
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Clause parse_clause(std::string_view text) {
    ClauseParser p{text};
    return p.clause();
}

ProblemClauses read_problem(std::istream& in) {
    ProblemClauses problem;
    std::vector<Clause>* current = nullptr;
    std::string line;
    std::string pending; // clauses may wrap across lines; '.' terminates
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '%' || t[0] == '#') continue;
        if (pending.empty()) {
            if (t == "list(usable).") { current = &problem.usable; continue; }
            if (t == "list(sos).") { current = &problem.sos; continue; }
            if (t == "end_of_list.") { current = nullptr; continue; }
        }
        if (!current) throw std::runtime_error("clause outside list block: " + t);
        pending += t;
        if (pending.back() != '.') continue;
        current->push_back(parse_clause(pending));
        pending.clear();
    }
    if (!pending.empty()) throw std::runtime_error("unterminated clause: " + pending);
    return problem;
}

void write_problem(std::ostream& out, const ProblemClauses& problem) {
    out << "list(usable).\n";
    for (const Clause& c : problem.usable) out << to_string(c) << '\n';
    out << "end_of_list.\n";
    out << "list(sos).\n";
    for (const Clause& c : problem.sos) out << to_string(c) << '\n';
    out << "end_of_list.\n";
}

} // namespace paramod
