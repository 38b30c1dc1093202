#pragma once

#include <string>
#include <vector>

#include "hirsch/bar.hpp"
#include "hirsch/word.hpp"

namespace hirsch {

/* How a free evaluator treats E applied to a product word whose atoms include
 * E-symbols. Level3 has no reduction rule there and rejects; Gerstenhaber
 * composes with the brace relation (mod 2 only). */
enum class EvalMode { Level3, Gerstenhaber };

std::string show_word(const Word& w);

inline std::string show_atom(const Atom& a) {
    if (a.is_generator()) return a.gen()->name;
    const ESymbol& e = a.esym();
    std::string s = "E(" + e.head->name + ";[";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) s += "|";
        s += show_word(e.args[i]);
    }
    return s + "])";
}

inline std::string show_word(const Word& w) {
    if (w.is_unit()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.atoms.size(); ++i) {
        if (i) s += ".";
        s += show_atom(w.atoms[i]);
    }
    return s;
}

/* Free graded algebra on registered generators, with E-symbol atoms. One
 * instance fixes the ring and the nested-head policy. */
struct FreeAlgebra {
    using Mono = Word;

    Ring ring_;
    EvalMode mode_;

    explicit FreeAlgebra(Ring r, EvalMode m = EvalMode::Level3) : ring_(r), mode_(m) {}

    Ring ring() const { return ring_; }
    int degree(const Word& w) const { return word_degree(w); }
    bool is_unit(const Word& w) const { return w.is_unit(); }
    Coeff aug(const Word& w) const { return w.is_unit() ? 1 : 0; }
    LinComb<Word> unit_elem() const { return LinComb<Word>::single(ring_, Word{}); }
    std::string show(const Word& w) const { return show_word(w); }

    LinComb<Word> mul(const Word& a, const Word& b) const {
        return LinComb<Word>::single(ring_, concat_words(a, b));
    }

    LinComb<Word> diff(const Word& w) const;
};

inline Expr expr_single(Ring r, Word w, Coeff c = 1) { return Expr::single(r, std::move(w), c); }

inline Expr expr_gen(Ring r, const Generator& g, Coeff c = 1) {
    return expr_single(r, Word{{Atom(g)}}, c);
}

inline Expr expr_unit(Ring r) { return expr_single(r, Word{}); }

inline Expr expr_single(const FreeAlgebra& alg, Word w, Coeff c = 1) {
    return expr_single(alg.ring(), std::move(w), c);
}

inline Expr expr_gen(const FreeAlgebra& alg, const Generator& g, Coeff c = 1) {
    return expr_gen(alg.ring(), g, c);
}

inline Expr expr_unit(const FreeAlgebra& alg) { return expr_unit(alg.ring()); }

/* E(g; args) with normalization: vanishes if any argument is the unit word;
 * empty argument list degenerates to g itself. */
inline Expr make_esymbol_terms(Ring ring, const Generator& g, const std::vector<Word>& args) {
    if (args.empty()) return expr_gen(ring, g);
    for (const Word& w : args) {
        if (w.is_unit()) return Expr::zero(ring);
        auto s = word_side(w);
        if (s && *s != g->side) throw DomainError("E-symbol argument side differs from head side");
    }
    return expr_single(ring, Word{{Atom(ESymbol{g, args})}});
}

Expr eval_e(const FreeAlgebra& alg, const BarWord<FreeAlgebra>& a, const BarWord<FreeAlgebra>& b);

namespace detail {

Expr eval_e_head(const FreeAlgebra& alg, const Word& w, const BarWord<FreeAlgebra>& b);

/* Brace composition x{y_1..y_m}{z_1..z_n}: the inner E-symbol's arguments are
 * distributed over blocks of the outer arguments. Only available mod 2. */
inline Expr brace_expand(const FreeAlgebra& alg, const ESymbol& x, const BarWord<FreeAlgebra>& z) {
    if (alg.ring() != Ring::Z2)
        throw DomainError("nested E-symbol head reduction is only available over z2");
    const std::size_t m = x.args.size(), n = z.size();
    Expr out = Expr::zero(alg.ring());
    std::vector<std::pair<std::size_t, std::size_t>> blocks(m);
    auto rec = [&](auto&& self, std::size_t t, std::size_t lo) -> void {
        if (t == m) {
            // Evaluate each inner argument on its block of outer entries.
            std::vector<Expr> pieces;
            pieces.reserve(m);
            for (std::size_t s = 0; s < m; ++s) {
                BarWord<FreeAlgebra> blk(z.begin() + blocks[s].first, z.begin() + blocks[s].second);
                Expr piece = eval_e_head(alg, x.args[s], blk);
                if (piece.is_zero()) return;
                pieces.push_back(std::move(piece));
            }
            // Interleave untouched entries with the evaluated blocks.
            auto emit = [&](auto&& eself, std::size_t s, std::size_t zpos,
                            std::vector<Word>& acc) -> void {
                if (s == m) {
                    std::vector<Word> full = acc;
                    for (std::size_t i = zpos; i < n; ++i) full.push_back(z[i]);
                    out += make_esymbol_terms(alg.ring(), x.head, full);
                    return;
                }
                std::vector<Word> base = acc;
                for (std::size_t i = zpos; i < blocks[s].first; ++i) base.push_back(z[i]);
                for (const auto& [pw, pc] : pieces[s].terms()) {
                    (void)pc;  // mod 2, coefficient is 1
                    std::vector<Word> next = base;
                    next.push_back(pw);
                    eself(eself, s + 1, blocks[s].second, next);
                }
            };
            std::vector<Word> acc;
            emit(emit, 0, 0, acc);
            return;
        }
        for (std::size_t i = lo; i <= n; ++i)
            for (std::size_t j = i; j <= n; ++j) {
                blocks[t] = {i, j};
                self(self, t + 1, j);
            }
    };
    rec(rec, 0, 0);
    return out;
}

/* E_{[w]}(b) for a nonunit product word w, by the head product rule
 * E_{[uv]}(b) = sum (-1)^{|v| |b1|} E_{[u]}(b1) E_{[v]}(b2) over Delta(b),
 * the Koszul sign of moving the operator E_{[v]} past b1. */
inline Expr eval_e_head(const FreeAlgebra& alg, const Word& w, const BarWord<FreeAlgebra>& b) {
    if (b.empty()) return expr_single(alg.ring(), w);
    if (w.is_unit()) return alpha(alg, b);
    if (w.size() == 1) {
        const Atom& at = w.atoms[0];
        if (at.is_generator()) return make_esymbol_terms(alg.ring(), at.gen(), b);
        if (alg.mode_ != EvalMode::Gerstenhaber)
            throw DomainError("E applied to an E-symbol head is not reducible at level 3");
        return brace_expand(alg, at.esym(), b);
    }
    Word u{{w.atoms[0]}};
    Word v{std::vector<Atom>(w.atoms.begin() + 1, w.atoms.end())};
    const int vdeg = word_degree(v);
    Expr out = Expr::zero(alg.ring());
    for (const auto& [b1, b2] : deconcat2<FreeAlgebra>(b)) {
        Expr lhs = eval_e(alg, {u}, b1);
        if (lhs.is_zero()) continue;
        Expr rhs = eval_e_head(alg, v, b2);
        if (rhs.is_zero()) continue;
        Coeff s = sign_pow(static_cast<long long>(vdeg) * bar_degree(alg, b1));
        out.axpy(s, mul(alg, lhs, rhs));
    }
    return out;
}

}  // namespace detail

/* Twisting cochain of the free theory: the normalized extension vanishes on
 * unit entries, projects to alpha at bar weight (0,*) and (*,0), and is zero
 * above head weight 1. */
inline Expr eval_e(const FreeAlgebra& alg, const BarWord<FreeAlgebra>& a,
                   const BarWord<FreeAlgebra>& b) {
    if (a.size() > 1) return Expr::zero(alg.ring());
    if (a.empty()) return alpha(alg, b);
    if (b.empty()) return expr_single(alg.ring(), a[0]);
    if (a[0].is_unit()) return Expr::zero(alg.ring());
    for (const Word& w : b)
        if (w.is_unit()) return Expr::zero(alg.ring());
    return detail::eval_e_head(alg, a[0], b);
}

/* E with the head expression in place of a single letter: linear in the head,
 * unit head acts as alpha. */
inline Expr reduce_e_head(const FreeAlgebra& alg, const Expr& head,
                          const BarWord<FreeAlgebra>& arg) {
    Expr out = Expr::zero(alg.ring());
    for (const auto& [w, c] : head.terms()) {
        if (w.is_unit())
            out.axpy(c, alpha(alg, arg));
        else
            out.axpy(c, eval_e(alg, {w}, arg));
    }
    return out;
}

namespace detail {
/* Differential of a stored E-symbol: internal bar differential of the
 * arguments, E over the head's differential, and the two alpha boundary
 * terms from mu(alpha (x) E +/- E (x) alpha) Delta. */
inline Expr d_esymbol(const FreeAlgebra& alg, const ESymbol& e) {
    const Ring R = alg.ring();
    const int dg = e.head->degree;
    Expr out = Expr::zero(R);

    Coeff sg = sign_pow(dg);
    for (const auto& [b, c] : bar_differential(alg, e.args).terms())
        out.axpy(checked_mul(sg, c), make_esymbol_terms(R, e.head, b));

    if (e.head->diff)
        for (const auto& [w, c] : e.head->diff->terms()) out.axpy(c, eval_e(alg, {w}, e.args));

    {
        const Word& u = e.args.front();
        BarWord<FreeAlgebra> rest(e.args.begin() + 1, e.args.end());
        Coeff s = sign_pow(static_cast<long long>(dg) * (word_degree(u) - 1));
        out.axpy(s, mul(alg, expr_single(R, u), make_esymbol_terms(R, e.head, rest)));
    }
    {
        const Word& u = e.args.back();
        BarWord<FreeAlgebra> front(e.args.begin(), e.args.end() - 1);
        Coeff s = sign_pow(dg - 1 + bar_degree(alg, front));
        out.axpy(s, mul(alg, make_esymbol_terms(R, e.head, front), expr_single(R, u)));
    }
    return out;
}
}  // namespace detail

inline LinComb<Word> FreeAlgebra::diff(const Word& w) const {
    Expr out = Expr::zero(ring_);
    int prefix = 0;
    for (std::size_t i = 0; i < w.atoms.size(); ++i) {
        const Atom& at = w.atoms[i];
        Expr da = at.is_generator()
                      ? (at.gen()->diff ? *at.gen()->diff : Expr::zero(ring_))
                      : detail::d_esymbol(*this, at.esym());
        if (!da.is_zero()) {
            Word pre{std::vector<Atom>(w.atoms.begin(), w.atoms.begin() + i)};
            Word post{std::vector<Atom>(w.atoms.begin() + i + 1, w.atoms.end())};
            Coeff s = sign_pow(prefix);
            for (const auto& [m, c] : da.terms())
                out.add(concat_words(concat_words(pre, m), post), checked_mul(s, c));
        }
        prefix += atom_degree(at);
    }
    return out;
}

inline Expr expr_multiply(const FreeAlgebra& alg, const Expr& x, const Expr& y) {
    return mul(alg, x, y);
}

inline Expr expr_differential(const FreeAlgebra& alg, const Expr& x) { return diff(alg, x); }

/* Registration with validation: an assigned differential must live on the
 * same side, raise degree by one, and be closed. */
inline Generator add_generator(GenStore& store, const FreeAlgebra& alg, const std::string& name,
                               int degree, Side side, const Expr& d) {
    if (!d.is_zero()) {
        for (const auto& [w, c] : d.terms()) {
            if (word_degree(w) != degree + 1)
                throw DomainError("assigned differential of " + name + " is not of degree +1");
            auto s = word_side(w);
            if (s && *s != side)
                throw DomainError("assigned differential of " + name + " is on the wrong side");
        }
        if (!diff(alg, d).is_zero())
            throw DomainError("assigned differential of " + name + " is not closed");
    }
    return store.add(name, degree, side,
                     d.is_zero() ? nullptr : std::make_shared<const Expr>(d));
}

inline Generator add_generator(GenStore& store, const FreeAlgebra& alg, const std::string& name,
                               int degree, Side side) {
    return add_generator(store, alg, name, degree, side, Expr::zero(alg.ring()));
}

}  // namespace hirsch
