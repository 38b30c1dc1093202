#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "hirsch/lincomb.hpp"

namespace hirsch {

/* An algebra policy A drives every construction below. It must provide:
 *   Mono                       totally ordered monomial type
 *   Ring ring() const
 *   int degree(Mono) const
 *   LinComb<Mono> mul(Mono, Mono) const
 *   LinComb<Mono> diff(Mono) const
 *   LinComb<Mono> unit_elem() const
 *   bool is_unit(Mono) const         whether the monomial is the unit
 *   Coeff aug(Mono) const            augmentation
 *   std::string show(Mono) const
 */

template <class A>
using ElemOf = LinComb<typename A::Mono>;

/* Entry of the unnormalized bar construction: tensor word of monomials.
 * The empty vector is the bar unit. */
template <class A>
using BarWord = std::vector<typename A::Mono>;

template <class A>
using BarElem = LinComb<BarWord<A>>;

template <class A>
ElemOf<A> mul(const A& alg, const ElemOf<A>& x, const ElemOf<A>& y) {
    ElemOf<A> out(alg.ring());
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) out.axpy(checked_mul(cx, cy), alg.mul(kx, ky));
    return out;
}

template <class A>
ElemOf<A> diff(const A& alg, const ElemOf<A>& x) {
    ElemOf<A> out(alg.ring());
    for (const auto& [k, c] : x.terms()) out.axpy(c, alg.diff(k));
    return out;
}

template <class A>
int degree_of(const A& alg, const ElemOf<A>& x) {
    if (x.is_zero()) throw DomainError("degree of zero element is undefined");
    int d = alg.degree(x.terms().begin()->first);
    for (const auto& [k, c] : x.terms())
        if (alg.degree(k) != d) throw DomainError("degree query on inhomogeneous element");
    return d;
}

template <class A>
Coeff aug(const A& alg, const ElemOf<A>& x) {
    Coeff out = 0;
    for (const auto& [k, c] : x.terms())
        if (Coeff a = alg.aug(k)) out = checked_add(out, checked_mul(a, c));
    return normalize_coeff(alg.ring(), out);
}

/* Degree in BA: sum of desuspended entry degrees. */
template <class A>
int bar_degree(const A& alg, const BarWord<A>& b) {
    int d = 0;
    for (const auto& m : b) d += alg.degree(m) - 1;
    return d;
}

template <class A>
bool is_normalized(const A& alg, const BarWord<A>& b) {
    for (const auto& m : b)
        if (alg.is_unit(m)) return false;
    return true;
}

/* Multilinear expansion of per-entry elements into a BarElem. Any zero entry
 * kills the whole word. */
template <class A>
BarElem<A> expand_entries(const A& alg, const std::vector<ElemOf<A>>& entries) {
    BarElem<A> out(alg.ring());
    BarWord<A> cur(entries.size(), typename A::Mono{});
    auto rec = [&](auto&& self, std::size_t i, Coeff c) -> void {
        if (i == entries.size()) {
            out.add(cur, c);
            return;
        }
        for (const auto& [k, ck] : entries[i].terms()) {
            cur[i] = k;
            self(self, i + 1, checked_mul(c, ck));
        }
    };
    rec(rec, 0, 1);
    return out;
}

template <class A>
BarWord<A> concat(const BarWord<A>& x, const BarWord<A>& y) {
    BarWord<A> out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

/* All splittings of b into an ordered pair of (possibly empty) halves. */
template <class A>
std::vector<std::pair<BarWord<A>, BarWord<A>>> deconcat2(const BarWord<A>& b) {
    std::vector<std::pair<BarWord<A>, BarWord<A>>> out;
    for (std::size_t i = 0; i <= b.size(); ++i)
        out.emplace_back(BarWord<A>(b.begin(), b.begin() + i), BarWord<A>(b.begin() + i, b.end()));
    return out;
}

/* All splittings into r ordered (possibly empty) parts. */
template <class A>
std::vector<std::vector<BarWord<A>>> deconcat(const BarWord<A>& b, std::size_t r) {
    std::vector<std::vector<BarWord<A>>> out;
    std::vector<std::size_t> cuts(r ? r - 1 : 0);
    if (r == 0) {
        if (b.empty()) out.push_back({});
        return out;
    }
    auto rec = [&](auto&& self, std::size_t idx, std::size_t lo) -> void {
        if (idx == cuts.size()) {
            std::vector<BarWord<A>> parts;
            std::size_t prev = 0;
            for (std::size_t c : cuts) {
                parts.emplace_back(b.begin() + prev, b.begin() + c);
                prev = c;
            }
            parts.emplace_back(b.begin() + prev, b.end());
            out.push_back(std::move(parts));
            return;
        }
        for (std::size_t c = lo; c <= b.size(); ++c) {
            cuts[idx] = c;
            self(self, idx + 1, c);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/* d = d_tensor + del on the unnormalized bar construction, with the
 * desuspension sign d[c] = -[dc] folded in. */
template <class A>
BarElem<A> bar_differential(const A& alg, const BarWord<A>& b) {
    BarElem<A> out(alg.ring());
    int prefix = 0;  // bar degree of entries before position i
    for (std::size_t i = 0; i < b.size(); ++i) {
        Coeff s = checked_mul(sign_pow(prefix), -1);
        for (const auto& [m, c] : alg.diff(b[i]).terms()) {
            BarWord<A> w = b;
            w[i] = m;
            out.add(std::move(w), checked_mul(s, c));
        }
        prefix += alg.degree(b[i]) - 1;
        if (i + 1 < b.size()) {
            // prefix now includes entry i, matching the sum over j <= i
            for (const auto& [m, c] : alg.mul(b[i], b[i + 1]).terms()) {
                BarWord<A> w;
                w.reserve(b.size() - 1);
                w.insert(w.end(), b.begin(), b.begin() + i);
                w.push_back(m);
                w.insert(w.end(), b.begin() + i + 2, b.end());
                out.add(std::move(w), checked_mul(sign_pow(prefix), c));
            }
        }
    }
    return out;
}

template <class A>
BarElem<A> bar_differential(const A& alg, const BarElem<A>& x) {
    BarElem<A> out(alg.ring());
    for (const auto& [b, c] : x.terms()) out.axpy(c, bar_differential(alg, b));
    return out;
}

/* alpha: BA -> A, the universal twisting cochain: projection to bar length 1. */
template <class A>
ElemOf<A> alpha(const A& alg, const BarWord<A>& b) {
    ElemOf<A> out(alg.ring());
    if (b.size() == 1) out.add(b[0], 1);
    return out;
}

template <class A>
ElemOf<A> alpha(const A& alg, const BarElem<A>& x) {
    ElemOf<A> out(alg.ring());
    for (const auto& [b, c] : x.terms())
        if (b.size() == 1) out.add(b[0], c);
    return out;
}

/* Bar counit: coefficient of the empty bar word. */
template <class A>
Coeff bar_counit(const BarWord<A>& b) {
    return b.empty() ? 1 : 0;
}

/* Two-sided bar construction A (x) BA (x) A. */
template <class A>
using TwoSidedWord = std::tuple<typename A::Mono, BarWord<A>, typename A::Mono>;

template <class A>
using TwoSidedElem = LinComb<TwoSidedWord<A>>;

template <class A>
int two_sided_degree(const A& alg, const TwoSidedWord<A>& t) {
    return alg.degree(std::get<0>(t)) + bar_degree(alg, std::get<1>(t)) +
           alg.degree(std::get<2>(t));
}

template <class A>
TwoSidedElem<A> two_sided_single(const A& alg, const ElemOf<A>& x, const BarWord<A>& m,
                                 const ElemOf<A>& y, Coeff c0 = 1) {
    TwoSidedElem<A> out(alg.ring());
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms())
            out.add(TwoSidedWord<A>{kx, m, ky}, checked_mul(c0, checked_mul(cx, cy)));
    return out;
}

template <class A>
TwoSidedElem<A> two_sided_differential(const A& alg, const TwoSidedWord<A>& t) {
    const auto& [x, m, y] = t;
    const Ring R = alg.ring();
    TwoSidedElem<A> out(R);
    const int dx = alg.degree(x);
    const int dm = bar_degree(alg, m);

    for (const auto& [k, c] : alg.diff(x).terms()) out.add(TwoSidedWord<A>{k, m, y}, c);

    Coeff sx = sign_pow(dx);
    for (const auto& [b, c] : bar_differential(alg, m).terms())
        out.add(TwoSidedWord<A>{x, b, y}, checked_mul(sx, c));

    Coeff sxy = sign_pow(dx + dm);
    for (const auto& [k, c] : alg.diff(y).terms())
        out.add(TwoSidedWord<A>{x, m, k}, checked_mul(sxy, c));

    // Module boundary: peel the innermost entry into the left or right factor.
    if (!m.empty()) {
        BarWord<A> rest(m.begin() + 1, m.end());
        for (const auto& [k, c] : alg.mul(x, m.front()).terms())
            out.add(TwoSidedWord<A>{k, rest, y}, checked_mul(sx, c));
        BarWord<A> front(m.begin(), m.end() - 1);
        Coeff s = checked_mul(-1, sign_pow(dx + bar_degree(alg, front)));
        for (const auto& [k, c] : alg.mul(m.back(), y).terms())
            out.add(TwoSidedWord<A>{x, front, k}, checked_mul(s, c));
    }
    return out;
}

template <class A>
TwoSidedElem<A> two_sided_differential(const A& alg, const TwoSidedElem<A>& x) {
    TwoSidedElem<A> out(alg.ring());
    for (const auto& [t, c] : x.terms()) out.axpy(c, two_sided_differential(alg, t));
    return out;
}

/* Counit of B(A,A,A): multiply the ends when the middle is empty. */
template <class A>
ElemOf<A> two_sided_counit(const A& alg, const TwoSidedElem<A>& x) {
    ElemOf<A> out(alg.ring());
    for (const auto& [t, c] : x.terms())
        if (std::get<1>(t).empty()) out.axpy(c, alg.mul(std::get<0>(t), std::get<2>(t)));
    return out;
}

template <class A>
std::string show(const A& alg, const BarWord<A>& b) {
    if (b.empty()) return "[]";
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) s += "|";
        s += alg.show(b[i]);
    }
    return s + "]";
}

template <class A>
std::string show_elem(const A& alg, const ElemOf<A>& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + "*";
        s += alg.show(k);
    }
    return s;
}

template <class A>
std::string show_bar_elem(const A& alg, const BarElem<A>& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + "*";
        s += show(alg, k);
    }
    return s;
}

template <class A>
std::string show_two_sided(const A& alg, const TwoSidedElem<A>& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [t, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + "*";
        s += "(" + alg.show(std::get<0>(t)) + ")" + show(alg, std::get<1>(t)) + "(" +
             alg.show(std::get<2>(t)) + ")";
    }
    return s;
}

}  // namespace hirsch
