#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hirsch/twisting.hpp"

namespace hirsch {

/* Tensor product of two graded algebra policies. Monomials are pairs; the
 * product carries the Koszul sign (-1)^{|y1||x2|} for (x1(x)y1)(x2(x)y2). */
template <class AL, class AR>
struct TensorAlg {
    using Mono = std::pair<typename AL::Mono, typename AR::Mono>;

    AL left;
    AR right;

    TensorAlg(AL l, AR r) : left(std::move(l)), right(std::move(r)) {
        if (left.ring() != right.ring()) throw DomainError("tensor factors over different rings");
    }

    Ring ring() const { return left.ring(); }

    int degree(const Mono& m) const { return left.degree(m.first) + right.degree(m.second); }

    LinComb<Mono> mul(const Mono& x, const Mono& y) const {
        Coeff s = sign_pow(static_cast<long long>(right.degree(x.second)) *
                           left.degree(y.first));
        LinComb<Mono> out(ring());
        for (const auto& [kl, cl] : left.mul(x.first, y.first).terms())
            for (const auto& [kr, cr] : right.mul(x.second, y.second).terms())
                out.add(Mono{kl, kr}, checked_mul(s, checked_mul(cl, cr)));
        return out;
    }

    LinComb<Mono> diff(const Mono& m) const {
        LinComb<Mono> out(ring());
        for (const auto& [k, c] : left.diff(m.first).terms()) out.add(Mono{k, m.second}, c);
        Coeff s = sign_pow(left.degree(m.first));
        for (const auto& [k, c] : right.diff(m.second).terms())
            out.add(Mono{m.first, k}, checked_mul(s, c));
        return out;
    }

    LinComb<Mono> unit_elem() const {
        LinComb<Mono> out(ring());
        for (const auto& [kl, cl] : left.unit_elem().terms())
            for (const auto& [kr, cr] : right.unit_elem().terms())
                out.add(Mono{kl, kr}, checked_mul(cl, cr));
        return out;
    }

    bool is_unit(const Mono& m) const { return left.is_unit(m.first) && right.is_unit(m.second); }

    Coeff aug(const Mono& m) const { return checked_mul(left.aug(m.first), right.aug(m.second)); }

    std::string show(const Mono& m) const {
        return left.show(m.first) + " # " + right.show(m.second);
    }
};

/* The unit as a monomial; every policy here has a monomial unit. */
template <class A>
typename A::Mono unit_mono(const A& alg) {
    const auto t = alg.unit_elem().terms();
    if (t.size() != 1 || t.begin()->second != 1)
        throw InternalError("unit element is not a single monomial");
    return t.begin()->first;
}

/* A tensor-product algebra together with twisting cochains for both factors.
 * The factor handles drive the recursive structure on the product. */
template <class AL, class AR>
struct TensorHirsch {
    TensorAlg<AL, AR> alg;
    TwistingHandle<AL> el;
    TwistingHandle<AR> er;
};

/* (E'_{[head]} (x) mu'') on a bar word over the tensor algebra: the left
 * components form the bar argument of E', the right components multiply out.
 * The prefactor moves each right component past the desuspended left
 * components of all later entries. */
template <class AL, class AR>
ElemOf<TensorAlg<AL, AR>> skew_left(const TensorHirsch<AL, AR>& th,
                                    const typename AL::Mono& head,
                                    const BarWord<TensorAlg<AL, AR>>& b) {
    using T = TensorAlg<AL, AR>;
    const T& alg = th.alg;
    long long exp = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            exp += static_cast<long long>(alg.left.degree(b[i].first) - 1) *
                   alg.right.degree(b[j].second);
    BarWord<AL> lw;
    lw.reserve(b.size());
    for (const auto& e : b) lw.push_back(e.first);
    ElemOf<AL> lval = th.el.eval(BarWord<AL>{head}, lw);
    ElemOf<T> out(alg.ring());
    if (lval.is_zero()) return out;
    ElemOf<AR> rprod = alg.right.unit_elem();
    for (const auto& e : b)
        rprod = mul(alg.right, rprod, ElemOf<AR>::single(alg.ring(), e.second));
    Coeff s = sign_pow(exp);
    for (const auto& [kl, cl] : lval.terms())
        for (const auto& [kr, cr] : rprod.terms())
            out.add(typename T::Mono{kl, kr}, checked_mul(s, checked_mul(cl, cr)));
    return out;
}

/* (mu' (x) E''_{[head]}): mirror of skew_left with the other Koszul factor.
 * Re-anchoring each entry's desuspension from the pair to its right component
 * costs (-1)^{|b'_i|} per entry, and the degree-|head| evaluator then moves
 * past the whole left block; skew_left has neither (its re-anchoring is
 * signless and the right factor there has degree 0). */
template <class AL, class AR>
ElemOf<TensorAlg<AL, AR>> skew_right(const TensorHirsch<AL, AR>& th,
                                     const typename AR::Mono& head,
                                     const BarWord<TensorAlg<AL, AR>>& b) {
    using T = TensorAlg<AL, AR>;
    const T& alg = th.alg;
    const long long dh = alg.right.degree(head);
    long long exp = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        exp += (dh + 1) * alg.left.degree(b[i].first);
        for (std::size_t j = 0; j < i; ++j)
            exp += static_cast<long long>(alg.left.degree(b[i].first)) *
                   (alg.right.degree(b[j].second) - 1);
    }
    BarWord<AR> rw;
    rw.reserve(b.size());
    for (const auto& e : b) rw.push_back(e.second);
    ElemOf<AR> rval = th.er.eval(BarWord<AR>{head}, rw);
    ElemOf<T> out(alg.ring());
    if (rval.is_zero()) return out;
    ElemOf<AL> lprod = alg.left.unit_elem();
    for (const auto& e : b)
        lprod = mul(alg.left, lprod, ElemOf<AL>::single(alg.ring(), e.first));
    Coeff s = sign_pow(exp);
    for (const auto& [kl, cl] : lprod.terms())
        for (const auto& [kr, cr] : rval.terms())
            out.add(typename T::Mono{kl, kr}, checked_mul(s, checked_mul(cl, cr)));
    return out;
}

/* G_a(b) in A (x) BA (x) A for the tensor algebra A.
 *
 * Empty a: sum over splittings b = b1 b2 of (-1)^{|b1|} 1 (x) b1 (x) alpha(b2).
 * Single entry a1: apply (skew_left (x) 1 (x) skew_right) to the triple
 * splittings of b; the sign moves skew_right past the first two parts.
 * Longer a: split off a1; feed the tail value x (x) m (x) y through the
 * middle by cutting p1 [x] m into u, v and closing up with skew maps. The
 * first sign moves the tail operator (one step desuspended, so of degree
 * |tail|) past p0, p1; the second moves skew_right past p0, u. */
template <class AL, class AR>
TwoSidedElem<TensorAlg<AL, AR>> g_map(const TensorHirsch<AL, AR>& th,
                                      const BarWord<TensorAlg<AL, AR>>& a,
                                      const BarWord<TensorAlg<AL, AR>>& b) {
    using T = TensorAlg<AL, AR>;
    const T& alg = th.alg;
    TwoSidedElem<T> out(alg.ring());
    if (a.empty()) {
        for (const auto& [b1, b2] : deconcat2<T>(b)) {
            ElemOf<T> tail = alpha(alg, b2);
            if (tail.is_zero()) continue;
            out.axpy(sign_pow(bar_degree(alg, b1)),
                     two_sided_single(alg, alg.unit_elem(), b1, tail));
        }
        return out;
    }
    const auto& a1 = a.front();
    const int dr1 = alg.right.degree(a1.second);
    if (a.size() == 1) {
        for (const auto& parts : deconcat<T>(b, 3)) {
            ElemOf<T> l = skew_left(th, a1.first, parts[0]);
            if (l.is_zero()) continue;
            ElemOf<T> r = skew_right(th, a1.second, parts[2]);
            if (r.is_zero()) continue;
            Coeff s = sign_pow(static_cast<long long>(dr1) *
                               (bar_degree(alg, parts[0]) + bar_degree(alg, parts[1])));
            out.axpy(s, two_sided_single(alg, l, parts[1], r));
        }
        return out;
    }
    BarWord<T> atail(a.begin() + 1, a.end());
    const int dtail = bar_degree(alg, atail);
    for (const auto& [c, p2] : deconcat2<T>(b)) {
        TwoSidedElem<T> gt = g_map(th, atail, p2);
        if (gt.is_zero()) continue;
        for (const auto& [p0, p1] : deconcat2<T>(c)) {
            ElemOf<T> l = skew_left(th, a1.first, p0);
            if (l.is_zero()) continue;
            const int dp0 = bar_degree(alg, p0);
            Coeff s1 = sign_pow(static_cast<long long>(dtail) * (dp0 + bar_degree(alg, p1)));
            for (const auto& [t, ct] : gt.terms()) {
                const auto& [x, m, y] = t;
                BarWord<T> w = p1;
                w.push_back(x);
                w.insert(w.end(), m.begin(), m.end());
                for (const auto& [u, v] : deconcat2<T>(w)) {
                    ElemOf<T> rv = skew_right(th, a1.second, v);
                    if (rv.is_zero()) continue;
                    ElemOf<T> ry = mul(alg, rv, ElemOf<T>::single(alg.ring(), y));
                    if (ry.is_zero()) continue;
                    Coeff s2 = sign_pow(static_cast<long long>(dr1) * (dp0 + bar_degree(alg, u)));
                    out.axpy(checked_mul(checked_mul(s1, s2), ct),
                             two_sided_single(alg, l, u, ry));
                }
            }
        }
    }
    return out;
}

/* Twisting cochain on the tensor algebra: counit of G, with alpha covering
 * the empty-side cases and unit entries killed when both factors are
 * normalized. */
template <class AL, class AR>
ElemOf<TensorAlg<AL, AR>> e_tensor(const TensorHirsch<AL, AR>& th,
                                   const BarWord<TensorAlg<AL, AR>>& a,
                                   const BarWord<TensorAlg<AL, AR>>& b) {
    using T = TensorAlg<AL, AR>;
    const T& alg = th.alg;
    if (a.empty()) return alpha(alg, b);
    if (b.empty()) return alpha(alg, a);
    if (th.el.normalized && th.er.normalized &&
        (!is_normalized(alg, a) || !is_normalized(alg, b)))
        return ElemOf<T>(alg.ring());
    return two_sided_counit(alg, g_map(th, a, b));
}

/* View the tensor structure as a twisting handle. Captures th by reference;
 * keep th alive as long as the handle. */
template <class AL, class AR>
TwistingHandle<TensorAlg<AL, AR>> tensor_handle(const TensorHirsch<AL, AR>& th) {
    TwistingHandle<TensorAlg<AL, AR>> h;
    h.eval = [&th](const BarWord<TensorAlg<AL, AR>>& a, const BarWord<TensorAlg<AL, AR>>& b) {
        return e_tensor(th, a, b);
    };
    h.normalized = th.el.normalized && th.er.normalized;
    h.level3 = false;
    return h;
}

/* Residual of the differential identity for G at (a, b):
 *
 *   d(G_a(b)) + (-1)^{|a|} G_a(db) + G_{da}(b)
 *     = sum (-1)^{(|a|+1)|b1|} alpha(b1) . G_a(b2)
 *     + sum_{i=1..k} (-1)^{|a<=i| + (|a>i|+1)|b1|} G_{a<=i}(b1) . E_{a>i}(b2)
 *
 * with d the full two-sided differential and the module actions on the end
 * slots. Zero identically when the factor handles satisfy their own twisting
 * conditions. */
template <class AL, class AR>
TwoSidedElem<TensorAlg<AL, AR>> g_differential_defect(const TensorHirsch<AL, AR>& th,
                                                      const BarWord<TensorAlg<AL, AR>>& a,
                                                      const BarWord<TensorAlg<AL, AR>>& b) {
    using T = TensorAlg<AL, AR>;
    const T& alg = th.alg;
    const int da = bar_degree(alg, a);

    TwoSidedElem<T> out = two_sided_differential(alg, g_map(th, a, b));

    Coeff sa = sign_pow(da);
    for (const auto& [bw, c] : bar_differential(alg, b).terms())
        out.axpy(checked_mul(sa, c), g_map(th, a, bw));

    for (const auto& [aw, c] : bar_differential(alg, a).terms()) out.axpy(c, g_map(th, aw, b));

    for (const auto& [b1, b2] : deconcat2<T>(b)) {
        ElemOf<T> z = alpha(alg, b1);
        if (z.is_zero()) continue;
        TwoSidedElem<T> g = g_map(th, a, b2);
        if (g.is_zero()) continue;
        Coeff s = checked_mul(
            -1, sign_pow(static_cast<long long>(da + 1) * bar_degree(alg, b1)));
        for (const auto& [zk, zc] : z.terms())
            for (const auto& [t, c] : g.terms()) {
                const auto& [x, m, y] = t;
                for (const auto& [xk, xc] : alg.mul(zk, x).terms())
                    out.add(TwoSidedWord<T>{xk, m, y},
                            checked_mul(checked_mul(s, zc), checked_mul(c, xc)));
            }
    }

    for (std::size_t i = 1; i <= a.size(); ++i) {
        BarWord<T> ahead(a.begin(), a.begin() + i), atail(a.begin() + i, a.end());
        const int dh = bar_degree(alg, ahead), dt = bar_degree(alg, atail);
        for (const auto& [b1, b2] : deconcat2<T>(b)) {
            ElemOf<T> e = e_tensor(th, atail, b2);
            if (e.is_zero()) continue;
            TwoSidedElem<T> g = g_map(th, ahead, b1);
            if (g.is_zero()) continue;
            Coeff s = checked_mul(
                -1, sign_pow(dh + static_cast<long long>(dt + 1) * bar_degree(alg, b1)));
            for (const auto& [ek, ec] : e.terms())
                for (const auto& [t, c] : g.terms()) {
                    const auto& [x, m, y] = t;
                    for (const auto& [yk, yc] : alg.mul(y, ek).terms())
                        out.add(TwoSidedWord<T>{x, m, yk},
                                checked_mul(checked_mul(s, ec), checked_mul(c, yc)));
                }
        }
    }
    return out;
}

/* Shuffle embedding BA' (x) BA'' -> B(A' (x) A''): all interleavings that
 * keep each factor's order, with the Koszul sign of every right entry that
 * jumps over later left entries, on desuspended degrees. */
template <class AL, class AR>
BarElem<TensorAlg<AL, AR>> shuffle(const TensorAlg<AL, AR>& alg, const BarWord<AL>& x,
                                   const BarWord<AR>& y) {
    using T = TensorAlg<AL, AR>;
    const auto ul = unit_mono(alg.left);
    const auto ur = unit_mono(alg.right);
    BarElem<T> out(alg.ring());
    BarWord<T> cur;
    cur.reserve(x.size() + y.size());
    auto rec = [&](auto&& self, std::size_t i, std::size_t j, long long exp) -> void {
        if (i == x.size() && j == y.size()) {
            out.add(cur, sign_pow(exp));
            return;
        }
        if (i < x.size()) {
            cur.push_back(typename T::Mono{x[i], ur});
            self(self, i + 1, j, exp);
            cur.pop_back();
        }
        if (j < y.size()) {
            long long jump = 0;
            for (std::size_t t = i; t < x.size(); ++t) jump += alg.left.degree(x[t]) - 1;
            cur.push_back(typename T::Mono{ul, y[j]});
            self(self, i, j + 1, exp + jump * (alg.right.degree(y[j]) - 1));
            cur.pop_back();
        }
    };
    rec(rec, 0, 0, 0);
    return out;
}

/* ([a1|a2], [b1]) with its value: nonzero for generic closed generators,
 * an operation that any level-3 structure would kill. */
template <class AL, class AR>
struct Level3Witness {
    BarWord<TensorAlg<AL, AR>> a, b;
    ElemOf<TensorAlg<AL, AR>> value;
};

template <class AL, class AR>
Level3Witness<AL, AR> level3_failure_witness(const TensorHirsch<AL, AR>& th,
                                             const typename TensorAlg<AL, AR>::Mono& a1,
                                             const typename TensorAlg<AL, AR>::Mono& a2,
                                             const typename TensorAlg<AL, AR>::Mono& b1) {
    BarWord<TensorAlg<AL, AR>> a{a1, a2}, b{b1};
    ElemOf<TensorAlg<AL, AR>> v = e_tensor(th, a, b);
    return {std::move(a), std::move(b), std::move(v)};
}

}  // namespace hirsch
