#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hirsch/lincomb.hpp"

namespace hirsch {

struct Word;
using Expr = LinComb<Word>;

/* Immutable generator record. Identity for ordering purposes is (name, side);
 * a session must not register two generators sharing both (see GenStore). */
struct GenData {
    std::string name;
    int degree = 0;
    Side side = Side::L;
    std::shared_ptr<const Expr> diff;  // null means closed
};

using Generator = std::shared_ptr<const GenData>;

struct Atom;

/* Noncommutative monomial: a concatenation of atoms, all on one side.
 * The empty word is the algebra unit and is side-neutral. */
struct Word {
    std::vector<Atom> atoms;

    Word() = default;
    explicit Word(std::vector<Atom> a) : atoms(std::move(a)) {}

    bool is_unit() const { return atoms.empty(); }
    std::size_t size() const { return atoms.size(); }
};

/* E(g; [w1|...|wk]) with k >= 1. Arguments are nonunit words on the head's
 * side; construction goes through make_esymbol_terms which enforces the
 * normalization rule instead of building forbidden symbols. */
struct ESymbol {
    Generator head;
    std::vector<Word> args;
};

struct Atom {
    std::variant<Generator, ESymbol> node;

    Atom(Generator g) : node(std::move(g)) {}
    Atom(ESymbol e) : node(std::move(e)) {}

    bool is_generator() const { return node.index() == 0; }
    const Generator& gen() const { return std::get<Generator>(node); }
    const ESymbol& esym() const { return std::get<ESymbol>(node); }
};

int atom_degree(const Atom& a);

inline int word_degree(const Word& w) {
    int d = 0;
    for (const Atom& a : w.atoms) d += atom_degree(a);
    return d;
}

inline int atom_degree(const Atom& a) {
    if (a.is_generator()) return a.gen()->degree;
    const ESymbol& e = a.esym();
    int d = e.head->degree;
    for (const Word& w : e.args) d += word_degree(w) - 1;
    return d;
}

/* Every atom of a nonempty word carries one side; returns nullopt for the
 * unit word, which concatenates with either side. */
std::optional<Side> word_side(const Word& w);

inline std::optional<Side> atom_side(const Atom& a) {
    if (a.is_generator()) return a.gen()->side;
    return a.esym().head->side;
}

inline std::optional<Side> word_side(const Word& w) {
    for (const Atom& a : w.atoms)
        if (auto s = atom_side(a)) return s;
    return std::nullopt;
}

int compare(const Atom& a, const Atom& b);

inline int compare(const Word& a, const Word& b) {
    std::size_t n = std::min(a.atoms.size(), b.atoms.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(a.atoms[i], b.atoms[i])) return c;
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size() ? -1 : 1;
    return 0;
}

inline int compare(const Generator& a, const Generator& b) {
    if (a->name != b->name) return a->name < b->name ? -1 : 1;
    if (a->side != b->side) return a->side == Side::L ? -1 : 1;
    return 0;
}

/* Term order: generators before E-symbols, then by name, then recursively on
 * E-symbol arguments. */
inline int compare(const Atom& a, const Atom& b) {
    if (a.is_generator() != b.is_generator()) return a.is_generator() ? -1 : 1;
    if (a.is_generator()) return compare(a.gen(), b.gen());
    const ESymbol &x = a.esym(), &y = b.esym();
    if (int c = compare(x.head, y.head)) return c;
    std::size_t n = std::min(x.args.size(), y.args.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(x.args[i], y.args[i])) return c;
    if (x.args.size() != y.args.size()) return x.args.size() < y.args.size() ? -1 : 1;
    return 0;
}

inline bool operator<(const Word& a, const Word& b) { return compare(a, b) < 0; }
inline bool operator==(const Word& a, const Word& b) { return compare(a, b) == 0; }
inline bool operator!=(const Word& a, const Word& b) { return compare(a, b) != 0; }

inline Word concat_words(const Word& a, const Word& b) {
    auto sa = word_side(a), sb = word_side(b);
    if (sa && sb && *sa != *sb) throw DomainError("cannot concatenate words from different sides");
    Word out;
    out.atoms.reserve(a.atoms.size() + b.atoms.size());
    out.atoms.insert(out.atoms.end(), a.atoms.begin(), a.atoms.end());
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    return out;
}

/* Session-scoped registry enforcing name uniqueness per side. Differentials
 * are validated (degree +1, homogeneous, d of it vanishes) by the caller in
 * free_algebra.hpp since that needs the differential itself. */
class GenStore {
    std::vector<Generator> gens_;

  public:
    Generator find(const std::string& name, Side side) const {
        for (const auto& g : gens_)
            if (g->name == name && g->side == side) return g;
        return nullptr;
    }

    Generator find_any_side(const std::string& name) const {
        for (const auto& g : gens_)
            if (g->name == name) return g;
        return nullptr;
    }

    const std::vector<Generator>& all() const { return gens_; }

    Generator add(std::string name, int degree, Side side,
                  std::shared_ptr<const Expr> diff = nullptr) {
        if (name.empty()) throw DomainError("generator name must be nonempty");
        if (find(name, side)) throw DomainError("duplicate generator name on one side: " + name);
        auto g = std::make_shared<GenData>(GenData{std::move(name), degree, side, std::move(diff)});
        gens_.push_back(g);
        return g;
    }
};

}  // namespace hirsch
