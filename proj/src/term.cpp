#include "paramod/term.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace paramod {

struct SymbolTable::Impl {
    std::shared_mutex mutex;
    std::unordered_map<std::string, Symbol> ids;
    std::vector<const std::string*> names; // names[id-1] points into `ids` keys
};

SymbolTable& SymbolTable::instance() {
    static SymbolTable table;
    if (!table.impl_) table.impl_ = std::make_unique<Impl>();
    return table;
}

Symbol SymbolTable::intern(std::string_view name) {
    Impl& impl = *instance().impl_;
    {
        std::shared_lock lock(impl.mutex);
        auto it = impl.ids.find(std::string(name));
        if (it != impl.ids.end()) return it->second;
    }
    std::unique_lock lock(impl.mutex);
    auto [it, inserted] = impl.ids.emplace(std::string(name),
                                           static_cast<Symbol>(impl.names.size() + 1));
    if (inserted) impl.names.push_back(&it->first);
    return it->second;
}

const std::string& SymbolTable::name(Symbol s) {
    Impl& impl = *instance().impl_;
    std::shared_lock lock(impl.mutex);
    if (s == 0 || s > impl.names.size()) throw std::out_of_range("unknown symbol id");
    return *impl.names[s - 1];
}

bool is_variable_name(std::string_view name) {
    if (name.empty()) return false;
    if (name[0] < 'u' || name[0] > 'z') return false;
    return std::all_of(name.begin() + 1, name.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

namespace {

std::size_t mix_hash(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Term::Term(Private, Kind kind, Symbol symbol, std::vector<TermPtr> args)
    : kind_(kind), ground_(kind != Kind::Variable), symbol_(symbol), weight_(1),
      args_(std::move(args)) {
    std::size_t h = mix_hash(static_cast<std::size_t>(kind), symbol);
    for (const TermPtr& a : args_) {
        h = mix_hash(h, a->hash());
        weight_ += a->weight();
        ground_ = ground_ && a->ground();
    }
    hash_ = h;
}

TermPtr Term::variable(Symbol name) {
    return std::make_shared<Term>(Private{}, Kind::Variable, name, std::vector<TermPtr>{});
}

TermPtr Term::constant(Symbol name) {
    return std::make_shared<Term>(Private{}, Kind::Constant, name, std::vector<TermPtr>{});
}

TermPtr Term::application(Symbol functor, std::vector<TermPtr> args) {
    if (args.empty()) throw std::invalid_argument("application arity must be >= 1");
    return std::make_shared<Term>(Private{}, Kind::Application, functor, std::move(args));
}

TermPtr Term::variable(std::string_view name) { return variable(SymbolTable::intern(name)); }
TermPtr Term::constant(std::string_view name) { return constant(SymbolTable::intern(name)); }
TermPtr Term::application(std::string_view functor, std::vector<TermPtr> args) {
    return application(SymbolTable::intern(functor), std::move(args));
}

bool equal(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->hash() != b->hash() || a->kind() != b->kind() || a->symbol() != b->symbol() ||
        a->args().size() != b->args().size())
        return false;
    for (std::size_t i = 0; i < a->args().size(); ++i)
        if (!equal(a->args()[i], b->args()[i])) return false;
    return true;
}

bool occurs_in(Symbol v, const TermPtr& t) {
    if (t->ground()) return false;
    if (t->is_variable()) return t->symbol() == v;
    for (const TermPtr& a : t->args())
        if (occurs_in(v, a)) return true;
    return false;
}

void collect_variables(const TermPtr& t, std::vector<Symbol>& out) {
    if (t->ground()) return;
    if (t->is_variable()) {
        if (std::find(out.begin(), out.end(), t->symbol()) == out.end())
            out.push_back(t->symbol());
        return;
    }
    for (const TermPtr& a : t->args()) collect_variables(a, out);
}

TermPtr apply_bindings(std::span<const Binding> bindings, const TermPtr& t) {
    if (bindings.empty() || t->ground()) return t;
    if (t->is_variable()) {
        for (const Binding& b : bindings)
            if (b.first == t->symbol()) return b.second;
        return t;
    }
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    bool changed = false;
    for (const TermPtr& a : t->args()) {
        TermPtr na = apply_bindings(bindings, a);
        changed = changed || na.get() != a.get();
        args.push_back(std::move(na));
    }
    if (!changed) return t;
    return Term::application(t->symbol(), std::move(args));
}

std::optional<Substitution> Substitution::make(std::vector<Binding> bindings) {
    std::erase_if(bindings, [](const Binding& b) {
        return b.second->is_variable() && b.second->symbol() == b.first;
    });
    std::sort(bindings.begin(), bindings.end(),
              [](const Binding& a, const Binding& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < bindings.size(); ++i)
        if (bindings[i].first == bindings[i - 1].first &&
            !equal(bindings[i].second, bindings[i - 1].second))
            return std::nullopt;
    bindings.erase(std::unique(bindings.begin(), bindings.end(),
                               [](const Binding& a, const Binding& b) {
                                   return a.first == b.first;
                               }),
                   bindings.end());
    // dom(s) must not meet vars(range(s)); with identities dropped this is
    // exactly idempotence and covers the per-binding occurs check.
    for (const Binding& b : bindings)
        for (const Binding& d : bindings)
            if (occurs_in(d.first, b.second)) return std::nullopt;
    Substitution s;
    s.bindings_ = std::move(bindings);
    return s;
}

std::optional<Substitution> Substitution::compose(const Substitution& outer,
                                                  const Substitution& inner) {
    std::vector<Binding> out;
    out.reserve(outer.bindings_.size() + inner.bindings_.size());
    for (const Binding& b : inner.bindings_)
        out.emplace_back(b.first, outer.apply(b.second));
    for (const Binding& b : outer.bindings_)
        if (!inner.lookup(b.first)) out.push_back(b);
    return make(std::move(out));
}

TermPtr Substitution::apply(const TermPtr& t) const {
    return apply_bindings(bindings_, t);
}

const TermPtr* Substitution::lookup(Symbol v) const {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                               [](const Binding& b, Symbol s) { return b.first < s; });
    if (it != bindings_.end() && it->first == v) return &it->second;
    return nullptr;
}

namespace {

// Triangular working bindings for unification: entries may reference
// variables bound by later entries; resolution happens at the end.
const TermPtr* tri_lookup(const std::vector<Binding>& tri, Symbol v) {
    for (const Binding& b : tri)
        if (b.first == v) return &b.second;
    return nullptr;
}

TermPtr deref(TermPtr t, const std::vector<Binding>& tri) {
    while (t->is_variable()) {
        const TermPtr* bound = tri_lookup(tri, t->symbol());
        if (!bound) break;
        t = *bound;
    }
    return t;
}

bool occurs_through(Symbol v, const TermPtr& t, const std::vector<Binding>& tri) {
    if (t->is_variable()) {
        if (t->symbol() == v) return true;
        const TermPtr* bound = tri_lookup(tri, t->symbol());
        return bound && occurs_through(v, *bound, tri);
    }
    if (t->ground()) return false;
    for (const TermPtr& a : t->args())
        if (occurs_through(v, a, tri)) return true;
    return false;
}

bool unify_rec(const TermPtr& a, const TermPtr& b, std::vector<Binding>& tri) {
    TermPtr x = deref(a, tri);
    TermPtr y = deref(b, tri);
    if (x->is_variable()) {
        if (y->is_variable() && y->symbol() == x->symbol()) return true;
        if (occurs_through(x->symbol(), y, tri)) return false;
        tri.emplace_back(x->symbol(), y);
        return true;
    }
    if (y->is_variable()) {
        if (occurs_through(y->symbol(), x, tri)) return false;
        tri.emplace_back(y->symbol(), x);
        return true;
    }
    if (x->kind() != y->kind() || x->symbol() != y->symbol() ||
        x->args().size() != y->args().size())
        return false;
    for (std::size_t i = 0; i < x->args().size(); ++i)
        if (!unify_rec(x->args()[i], y->args()[i], tri)) return false;
    return true;
}

// Fully resolves t through the (acyclic) triangular bindings.
TermPtr resolve(const TermPtr& t, const std::vector<Binding>& tri) {
    if (t->ground()) return t;
    if (t->is_variable()) {
        const TermPtr* bound = tri_lookup(tri, t->symbol());
        return bound ? resolve(*bound, tri) : t;
    }
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    bool changed = false;
    for (const TermPtr& a : t->args()) {
        TermPtr na = resolve(a, tri);
        changed = changed || na.get() != a.get();
        args.push_back(std::move(na));
    }
    if (!changed) return t;
    return Term::application(t->symbol(), std::move(args));
}

} // namespace

std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b) {
    std::vector<Binding> tri;
    if (!unify_rec(a, b, tri)) return std::nullopt;
    std::vector<Binding> resolved;
    resolved.reserve(tri.size());
    for (const Binding& bnd : tri)
        resolved.emplace_back(bnd.first, resolve(bnd.second, tri));
    auto sub = Substitution::make(std::move(resolved));
    if (!sub) throw std::logic_error("unify produced a non-idempotent substitution");
    return sub;
}

namespace {

void positions_rec(const TermPtr& t, Path& path, std::vector<PositionEntry>& out) {
    out.push_back({path, t});
    for (std::uint32_t i = 0; i < t->args().size(); ++i) {
        path.push_back(i);
        positions_rec(t->args()[i], path, out);
        path.pop_back();
    }
}

} // namespace

std::vector<PositionEntry> subterm_positions(const TermPtr& t) {
    std::vector<PositionEntry> out;
    out.reserve(t->weight());
    Path path;
    positions_rec(t, path, out);
    return out;
}

TermPtr replace_at(const TermPtr& t, const Path& path, const TermPtr& replacement) {
    TermPtr cur = t;
    if (path.empty()) return replacement;
    std::uint32_t idx = path.front();
    if (idx >= t->args().size()) throw std::out_of_range("replace_at: bad path");
    std::vector<TermPtr> args = t->args();
    Path rest(path.begin() + 1, path.end());
    args[idx] = replace_at(args[idx], rest, replacement);
    return Term::application(t->symbol(), std::move(args));
}

void print_term(std::string& out, const TermPtr& t) {
    out += SymbolTable::name(t->symbol());
    if (t->is_application()) {
        out += '(';
        for (std::size_t i = 0; i < t->args().size(); ++i) {
            if (i) out += ',';
            print_term(out, t->args()[i]);
        }
        out += ')';
    }
}

std::string to_string(const TermPtr& t) {
    std::string out;
    out.reserve(t->weight() * 4);
    print_term(out, t);
    return out;
}

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::runtime_error("parse error at offset " + std::to_string(pos) + ": " + what);
    }

    bool term_ident_char(char c) const {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    }

    std::string_view ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && term_ident_char(text[pos])) ++pos;
        if (pos == start) fail("expected identifier");
        return text.substr(start, pos - start);
    }

    TermPtr term() {
        std::string_view name = ident();
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            std::vector<TermPtr> args;
            while (true) {
                args.push_back(term());
                skip_ws();
                if (pos >= text.size()) fail("unterminated argument list");
                if (text[pos] == ',') { ++pos; continue; }
                if (text[pos] == ')') { ++pos; break; }
                fail("expected ',' or ')'");
            }
            return Term::application(name, std::move(args));
        }
        if (is_variable_name(name)) return Term::variable(name);
        return Term::constant(name);
    }
};

} // namespace

TermPtr parse_term(std::string_view text) {
    Parser p{text};
    TermPtr t = p.term();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return t;
}

} // namespace paramod
