#pragma once
// Cosemisimplicial diagrams of dg algebras carrying level-3 operation
// families, their total complexes, and the Mayer-Vietoris double complex of
// an ordered cover of a simplicial set. The total complex again carries a
// level-3 family: the internal operations act within one cosimplicial level
// while the cosimplicial direction is realized by the same interval-cut
// combinatorics that drives the simplicial cochain operations, with every
// Koszul sign transported from the two-factor recursion on a free bigraded
// model so the recursion stays the single source of sign conventions.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hirsch/direct.hpp"
#include "hirsch/free_algebra.hpp"
#include "hirsch/simplicial.hpp"

namespace hirsch {

/* ------------------------------------------------------------------ */
/* Cosemisimplicial dg algebras with level-3 operations               */
/* ------------------------------------------------------------------ */

/* A finite truncated cosemisimplicial diagram of dg algebras A^0..A^top,
 * each carrying a level-3 operation family:
 *   levels        the algebra policies, level q at index q;
 *   coface(q,i,m) the i-th coface A^q -> A^{q+1} (0 <= i <= q+1) on a basis
 *                 monomial, defined for q < top;
 *   op(q,a,b)     the level-q operation family on bar words of level-q
 *                 monomials, with the contract of a TwistingHandle evaluator
 *                 (first argument of length > 1 gives zero, empty first
 *                 argument gives the length-one projection);
 *   basis(q,dmax) the level-q monomials of internal degree at most dmax.
 * Levels above top() are zero. */
template <class A>
struct CosemisimplicialH3 {
    std::shared_ptr<const std::vector<A>> levels;
    std::function<ElemOf<A>(std::size_t, std::size_t, const typename A::Mono&)> coface;
    std::function<ElemOf<A>(std::size_t, const BarWord<A>&, const BarWord<A>&)> op;
    std::function<std::vector<typename A::Mono>(std::size_t, int)> basis;

    std::size_t top() const { return levels->size() - 1; }
    const A& level(std::size_t q) const { return (*levels)[q]; }
    Ring ring() const { return level(0).ring(); }
};

/* Linear extension of one coface; zero once the target level lies above the
 * stored range. */
template <class A>
ElemOf<A> apply_coface(const CosemisimplicialH3<A>& co, std::size_t q, std::size_t i,
                       const ElemOf<A>& x) {
    ElemOf<A> out(x.ring());
    if (q + 1 > co.top()) return out;
    if (i > q + 1) throw DomainError("coface index out of range");
    for (const auto& [k, c] : x.terms()) out.axpy(c, co.coface(q, i, k));
    return out;
}

/* Push a level-q element to level q_to along the face keeping the given
 * positions of [0..q_to] (`face` lists q+1 strictly increasing positions).
 * Realized as the composition of the cofaces at the missing positions,
 * applied in increasing order with indices read in target coordinates. */
template <class A>
ElemOf<A> coface_composition(const CosemisimplicialH3<A>& co, std::size_t q_from,
                             const std::vector<std::size_t>& face, std::size_t q_to,
                             const ElemOf<A>& x) {
    if (face.size() != q_from + 1)
        throw DomainError("face position count does not match the source level");
    for (std::size_t t = 0; t < face.size(); ++t) {
        if (face[t] > q_to || (t > 0 && face[t] <= face[t - 1]))
            throw DomainError("face positions must increase within the target level");
    }
    if (q_to > co.top()) return ElemOf<A>(x.ring());
    ElemOf<A> cur = x;
    std::size_t level = q_from;
    std::size_t next = 0;  // next kept position expected
    for (std::size_t m = 0; m <= q_to; ++m) {
        if (next < face.size() && face[next] == m) {
            ++next;
            continue;
        }
        ElemOf<A> step(x.ring());
        for (const auto& [k, c] : cur.terms()) step.axpy(c, co.coface(level, m, k));
        cur = std::move(step);
        ++level;
        if (cur.is_zero()) return cur;
    }
    return cur;
}

/* Multilinear extension of the level-q operation family. */
template <class A>
ElemOf<A> op_multilinear(const CosemisimplicialH3<A>& co, std::size_t q, const ElemOf<A>& a,
                         const std::vector<ElemOf<A>>& bs) {
    ElemOf<A> out(a.ring());
    std::vector<typename A::Mono> pick(bs.size());
    for (const auto& [ma, ca] : a.terms()) {
        auto rec = [&](auto&& self, std::size_t i, Coeff c) -> void {
            if (i == bs.size()) {
                out.axpy(c, co.op(q, BarWord<A>{ma}, BarWord<A>(pick.begin(), pick.end())));
                return;
            }
            for (const auto& [mb, cb] : bs[i].terms()) {
                pick[i] = mb;
                self(self, i + 1, checked_mul(c, cb));
            }
        };
        rec(rec, 0, ca);
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* The total complex                                                  */
/* ------------------------------------------------------------------ */

/* Total complex of a cosemisimplicial dg algebra, as an algebra policy.
 * Monomials pair the cosimplicial level q with a level-q monomial. The
 * degree adds q to the internal degree; the differential is the internal one
 * plus (-1)^p times the alternating coface sum; the product pushes both
 * factors to the common level along the front and back faces and multiplies
 * there, with the Koszul sign of moving the left factor's cosimplicial part
 * past the right factor's internal part. */
template <class A>
struct TotAlgebra {
    using Mono = std::pair<std::size_t, typename A::Mono>;

    CosemisimplicialH3<A> co;

    explicit TotAlgebra(CosemisimplicialH3<A> c) : co(std::move(c)) {}

    Ring ring() const { return co.ring(); }

    int degree(const Mono& m) const {
        return static_cast<int>(m.first) + co.level(m.first).degree(m.second);
    }

    LinComb<Mono> mul(const Mono& x, const Mono& y) const {
        LinComb<Mono> out(ring());
        const std::size_t q = x.first + y.first;
        if (q > co.top()) return out;
        std::vector<std::size_t> front(x.first + 1), back(y.first + 1);
        for (std::size_t i = 0; i < front.size(); ++i) front[i] = i;
        for (std::size_t i = 0; i < back.size(); ++i) back[i] = x.first + i;
        const ElemOf<A> fx =
            coface_composition(co, x.first, front, q, ElemOf<A>::single(ring(), x.second));
        if (fx.is_zero()) return out;
        const ElemOf<A> fy =
            coface_composition(co, y.first, back, q, ElemOf<A>::single(ring(), y.second));
        if (fy.is_zero()) return out;
        const Coeff s = sign_pow(static_cast<long long>(co.level(y.first).degree(y.second)) *
                                 static_cast<long long>(x.first));
        for (const auto& [k, c] : hirsch::mul(co.level(q), fx, fy).terms())
            out.add(Mono{q, k}, checked_mul(s, c));
        return out;
    }

    LinComb<Mono> diff(const Mono& m) const {
        LinComb<Mono> out(ring());
        for (const auto& [k, c] : co.level(m.first).diff(m.second).terms())
            out.add(Mono{m.first, k}, c);
        if (m.first < co.top()) {
            const Coeff sp = sign_pow(co.level(m.first).degree(m.second));
            for (std::size_t i = 0; i <= m.first + 1; ++i) {
                const Coeff si = checked_mul(sp, sign_pow(static_cast<long long>(i)));
                for (const auto& [k, c] : co.coface(m.first, i, m.second).terms())
                    out.add(Mono{m.first + 1, k}, checked_mul(si, c));
            }
        }
        return out;
    }

    LinComb<Mono> unit_elem() const {
        LinComb<Mono> out(ring());
        for (const auto& [k, c] : co.level(0).unit_elem().terms()) out.add(Mono{0, k}, c);
        return out;
    }

    bool is_unit(const Mono&) const { return false; }

    Coeff aug(const Mono& m) const { return m.first == 0 ? co.level(0).aug(m.second) : 0; }

    std::string show(const Mono& m) const {
        return "q" + std::to_string(m.first) + ":" + co.level(m.first).show(m.second);
    }
};

template <class A>
using TotElement = ElemOf<TotAlgebra<A>>;

namespace detail {

/* Koszul signs of the splitting schemes of the tensor-product operation
 * E(x_1..x_k; y_1..y_l) at the given (internal, cosimplicial) bidegrees:
 * one per scheme of cut_schemes(k, l), in enumeration order. Each sign is
 * the coefficient of the scheme's word in the two-factor recursion on a
 * free bigraded model, so the recursion stays the single source of sign
 * conventions; the signs depend only on the split bidegree list and are
 * computed over the integers. Memoized. */
inline const std::vector<Coeff>& tensor_scheme_signs(
    std::size_t k, const std::vector<std::pair<int, int>>& bidegs) {
    using Key = std::pair<std::size_t, std::vector<std::pair<int, int>>>;
    static thread_local std::map<Key, std::vector<Coeff>> cache;
    Key key{k, bidegs};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const std::size_t l = bidegs.size() - k;
    GenStore store;
    FreeAlgebra fl(Ring::Z), fr(Ring::Z);
    std::vector<Generator> gl(bidegs.size()), gr(bidegs.size());
    for (std::size_t i = 0; i < bidegs.size(); ++i) {
        const std::string name = "t" + std::to_string(i);
        gl[i] = add_generator(store, fl, name, bidegs[i].first, Side::L);
        gr[i] = add_generator(store, fr, name, bidegs[i].second, Side::R);
    }
    using TA = TensorAlg<FreeAlgebra, FreeAlgebra>;
    TA talg(fl, fr);
    TensorHirsch<FreeAlgebra, FreeAlgebra> th{
        talg,
        {[&fl](const BarWord<FreeAlgebra>& a, const BarWord<FreeAlgebra>& b) {
             return eval_e(fl, a, b);
         },
         true, true},
        {[&fr](const BarWord<FreeAlgebra>& a, const BarWord<FreeAlgebra>& b) {
             return eval_e(fr, a, b);
         },
         true, true}};
    auto pairw = [&](std::size_t i) -> typename TA::Mono {
        return {Word{{Atom(gl[i])}}, Word{{Atom(gr[i])}}};
    };
    BarWord<TA> a, b;
    for (std::size_t i = 0; i < k; ++i) a.push_back(pairw(i));
    for (std::size_t i = k; i < bidegs.size(); ++i) b.push_back(pairw(i));

    const ElemOf<TA> ref = e_tensor(th, a, b);
    std::vector<Coeff> signs;
    for (const CutScheme& scheme : cut_schemes(k, l)) {
        const ElemOf<TA> word = realize_cut(th, a, b, scheme);
        if (word.size() != 1)
            throw InternalError("free scheme word is not a single monomial");
        const Coeff c = ref.coeff(word.terms().begin()->first);
        if (c == 0) throw InternalError("scheme word missing from the recursion expansion");
        signs.push_back(c);
    }
    return cache.emplace(std::move(key), std::move(signs)).first->second;
}

/* One piece of a total-complex evaluation layout: a bare letter (the
 * argument at index `head`) or an operation evaluation with the arguments
 * at the `groups` indices cut into the head. Each group is one argument of
 * the cut — in the cosimplicial direction it occupies a single interval,
 * subdivided consecutively among its members (the front/back product of the
 * members), so a multi-member group is a fused product entry. */
struct TotPiece {
    bool is_op = false;
    std::size_t head = 0;
    std::vector<std::vector<std::size_t>> groups;
};

/* One term of the cosimplicial-direction expansion of a piece sequence:
 * positions of [0..total_dim] assigned to each argument, and the interval-
 * cut sign collected from the operation pieces. */
struct CechConfig {
    int total_dim = 0;
    std::vector<std::vector<std::size_t>> face;
    Coeff sign = 1;
};

/* Expand a piece sequence in the cosimplicial direction over the abstract
 * simplex [0..Q]: bare letters take consecutive intervals sharing endpoints
 * (the front/back product rule), operation pieces enumerate the interval
 * cuts of their local simplex with the default sign rule — the same
 * combinatorics as the simplicial cochain operations, so degree-0 cut
 * arguments admit no term. qdeg[i] is the cosimplicial degree of argument
 * i. */
inline std::vector<CechConfig> cech_expand(const std::vector<TotPiece>& seq,
                                           const std::vector<int>& qdeg) {
    std::vector<CechConfig> out;
    const auto group_dim = [&qdeg](const std::vector<std::size_t>& g) {
        int d = 0;
        for (std::size_t j : g) d += qdeg[j];
        return d;
    };
    int total = 0;
    for (const TotPiece& pc : seq) {
        int d = qdeg[pc.head];
        for (const auto& g : pc.groups) d += group_dim(g) - 1;
        if (d < 0) return out;  // the piece admits no cut at these degrees
        total += d;
    }
    CechConfig cur;
    cur.total_dim = total;
    cur.face.assign(qdeg.size(), {});
    auto shift = [](const std::vector<std::size_t>& ps, int by) {
        std::vector<std::size_t> out2(ps.size());
        for (std::size_t t = 0; t < ps.size(); ++t)
            out2[t] = ps[t] + static_cast<std::size_t>(by);
        return out2;
    };
    auto rec = [&](auto&& self, std::size_t item, int cursor) -> void {
        if (item == seq.size()) {
            out.push_back(cur);
            return;
        }
        const TotPiece& pc = seq[item];
        if (pc.groups.empty()) {
            const int d = qdeg[pc.head];
            auto& f = cur.face[pc.head];
            f.resize(static_cast<std::size_t>(d) + 1);
            for (int p = 0; p <= d; ++p)
                f[static_cast<std::size_t>(p)] = static_cast<std::size_t>(cursor + p);
            self(self, item + 1, cursor + d);
            return;
        }
        std::vector<int> mdims;
        mdims.reserve(pc.groups.size());
        for (const auto& g : pc.groups) mdims.push_back(group_dim(g));
        const Coeff outer = cur.sign;
        for_each_cut_shape(
            qdeg[pc.head], mdims,
            [&](int n, const std::vector<std::size_t>& keep,
                const std::vector<std::vector<std::size_t>>& ivals,
                const std::vector<int>& adims) {
                cur.face[pc.head] = shift(keep, cursor);
                for (std::size_t u = 0; u < pc.groups.size(); ++u) {
                    std::size_t at = ivals[u][0];
                    for (std::size_t j : pc.groups[u]) {
                        auto& f = cur.face[j];
                        const int d = qdeg[j];
                        f.resize(static_cast<std::size_t>(d) + 1);
                        for (int p = 0; p <= d; ++p)
                            f[static_cast<std::size_t>(p)] =
                                static_cast<std::size_t>(cursor) + at +
                                static_cast<std::size_t>(p);
                        at += static_cast<std::size_t>(d);
                    }
                }
                cur.sign =
                    checked_mul(outer, sign_pow(kDefaultCutRule.exponent(adims, mdims)));
                self(self, item + 1, cursor + n);
            });
        cur.sign = outer;
    };
    rec(rec, 0, 0);
    return out;
}

/* Realize one (internal layout, cosimplicial layout) pair on a monomial
 * tuple: expand the cosimplicial side into interval-cut configurations, push
 * every argument to the common level along its assigned face, evaluate the
 * internal layout there in order, and embed the result at that level. */
template <class A>
ElemOf<TotAlgebra<A>> realize_tot_word(const TotAlgebra<A>& tot, const std::vector<TotPiece>& left,
                                       const std::vector<TotPiece>& right,
                                       const std::vector<typename TotAlgebra<A>::Mono>& args,
                                       Coeff scale) {
    using Tot = TotAlgebra<A>;
    const auto& co = tot.co;
    const Ring R = tot.ring();
    ElemOf<Tot> out(R);
    if (scale == 0) return out;

    std::vector<int> qdeg(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) qdeg[i] = static_cast<int>(args[i].first);

    for (const CechConfig& cfg : cech_expand(right, qdeg)) {
        const std::size_t q = static_cast<std::size_t>(cfg.total_dim);
        if (q > co.top()) continue;  // levels above the top are zero
        std::vector<ElemOf<A>> pushed;
        pushed.reserve(args.size());
        bool dead = false;
        for (std::size_t i = 0; i < args.size() && !dead; ++i) {
            pushed.push_back(coface_composition(co, args[i].first, cfg.face[i], q,
                                                ElemOf<A>::single(R, args[i].second)));
            dead = pushed.back().is_zero();
        }
        if (dead) continue;

        std::vector<typename A::Mono> sel(args.size());
        auto rec = [&](auto&& self, std::size_t i, Coeff c) -> void {
            if (i == args.size()) {
                ElemOf<A> v(R);
                bool first = true;
                for (const TotPiece& pc : left) {
                    ElemOf<A> pv(R);
                    if (pc.is_op) {
                        BarWord<A> bw;
                        for (const auto& g : pc.groups)
                            for (std::size_t j : g) bw.push_back(sel[j]);
                        pv = co.op(q, BarWord<A>{sel[pc.head]}, bw);
                    } else {
                        pv = ElemOf<A>::single(R, sel[pc.head]);
                    }
                    if (pv.is_zero()) return;
                    v = first ? std::move(pv) : hirsch::mul(co.level(q), v, pv);
                    first = false;
                    if (v.is_zero()) return;
                }
                const Coeff f = checked_mul(checked_mul(scale, cfg.sign), c);
                for (const auto& [mv, cv] : v.terms())
                    out.add(typename Tot::Mono{q, mv}, checked_mul(f, cv));
                return;
            }
            for (const auto& [mp, cp] : pushed[i].terms()) {
                sel[i] = mp;
                self(self, i + 1, checked_mul(c, cp));
            }
        };
        rec(rec, 0, 1);
    }
    return out;
}

}  // namespace detail

/* The operation family on the total complex: E(a_1..a_k; b_1..b_l) sums
 * over the splitting schemes of the two-factor recursion. Each scheme lays
 * the internal components out as evaluator/letter words (evaluated at the
 * common level) and the cosimplicial components as a front-letter prefix
 * followed by the k evaluators over the fused remainder, realized by
 * interval cuts. The scheme signs come from the free-model expansion of the
 * recursion. */
template <class A>
TotElement<A> tot_eval(const TotAlgebra<A>& tot, const BarWord<TotAlgebra<A>>& a,
                       const BarWord<TotAlgebra<A>>& b) {
    using Tot = TotAlgebra<A>;
    if (a.empty()) return alpha(tot, b);
    if (b.empty()) return alpha(tot, a);
    const std::size_t k = a.size(), l = b.size();
    ElemOf<Tot> out(tot.ring());

    std::vector<typename Tot::Mono> args;
    args.reserve(k + l);
    for (const auto& m : a) args.push_back(m);
    for (const auto& m : b) args.push_back(m);

    std::vector<std::pair<int, int>> bidegs(k + l);
    for (std::size_t i = 0; i < k + l; ++i)
        bidegs[i] = {tot.co.level(args[i].first).degree(args[i].second),
                     static_cast<int>(args[i].first)};

    const auto schemes = cut_schemes(k, l);
    const std::vector<Coeff>& signs = detail::tensor_scheme_signs(k, bidegs);
    for (std::size_t si = 0; si < schemes.size(); ++si) {
        const CutScheme& sc = schemes[si];
        std::vector<detail::TotPiece> left, right;

        // internal word: evaluators on the even blocks, letters in between
        std::size_t pos = 0;
        for (std::size_t blk = 0; blk < 2 * k; ++blk) {
            const std::size_t sz = sc.left_cut[blk];
            if (blk % 2 == 0) {
                detail::TotPiece op;
                op.is_op = true;
                op.head = blk / 2;
                for (std::size_t t = 0; t < sz; ++t) op.groups.push_back({k + pos + t});
                left.push_back(std::move(op));
            } else {
                for (std::size_t t = 0; t < sz; ++t) left.push_back({false, k + pos + t, {}});
            }
            pos += sz;
        }

        // cosimplicial word: the first block's letters up front, then the k
        // evaluators over the fused remainder (later even blocks fuse into
        // single entries, odd blocks keep entries separate)
        for (std::size_t t = 0; t < sc.left_cut[0]; ++t) right.push_back({false, k + t, {}});
        std::vector<std::vector<std::size_t>> fused;
        pos = sc.left_cut[0];
        for (std::size_t blk = 1; blk < 2 * k; ++blk) {
            const std::size_t sz = sc.left_cut[blk];
            if (blk % 2 == 1) {
                for (std::size_t t = 0; t < sz; ++t) fused.push_back({k + pos + t});
            } else if (sz > 0) {
                std::vector<std::size_t> g;
                g.reserve(sz);
                for (std::size_t t = 0; t < sz; ++t) g.push_back(k + pos + t);
                fused.push_back(std::move(g));
            }
            pos += sz;
        }
        std::size_t entry = 0;
        for (std::size_t i = 0; i < k; ++i) {
            detail::TotPiece op;
            op.is_op = true;
            op.head = i;
            for (std::size_t t = 0; t < sc.right_cut[i]; ++t, ++entry)
                op.groups.push_back(fused[entry]);
            right.push_back(std::move(op));
        }

        out += detail::realize_tot_word(tot, left, right, args, signs[si]);
    }
    return out;
}

/* Single-entry component E(a; b_1..b_l). */
template <class A>
TotElement<A> tot_e1k(const TotAlgebra<A>& tot, const typename TotAlgebra<A>::Mono& a,
                      const std::vector<typename TotAlgebra<A>::Mono>& bs) {
    return tot_eval(tot, BarWord<TotAlgebra<A>>{a}, bs);
}

/* Multilinear extension. */
template <class A>
TotElement<A> tot_e1k(const TotAlgebra<A>& tot, const TotElement<A>& a,
                      const std::vector<TotElement<A>>& bs) {
    using Tot = TotAlgebra<A>;
    ElemOf<Tot> out(tot.ring());
    std::vector<typename Tot::Mono> pick(bs.size());
    for (const auto& [ma, ca] : a.terms()) {
        auto rec = [&](auto&& self, std::size_t i, Coeff c) -> void {
            if (i == bs.size()) {
                out.axpy(c, tot_e1k(tot, ma, pick));
                return;
            }
            for (const auto& [mb, cb] : bs[i].terms()) {
                pick[i] = mb;
                self(self, i + 1, checked_mul(c, cb));
            }
        };
        rec(rec, 0, ca);
    }
    return out;
}

/* Twisting-cochain handle backed by the total-complex operations. The
 * algebra must outlive the handle. Evaluations are memoized, so sweeps that
 * revisit the same bar words (as the residual sweeps do) pay for each
 * distinct input once. */
template <class A>
TwistingHandle<TotAlgebra<A>> tot_handle(const TotAlgebra<A>& tot) {
    using Tot = TotAlgebra<A>;
    using Memo = std::map<std::pair<BarWord<Tot>, BarWord<Tot>>, ElemOf<Tot>>;
    auto memo = std::make_shared<Memo>();
    TwistingHandle<Tot> h;
    h.level3 = false;
    h.normalized = true;
    h.eval = [&tot, memo](const BarWord<Tot>& a, const BarWord<Tot>& b) -> ElemOf<Tot> {
        if (a.empty()) return alpha(tot, b);
        if (b.empty()) return alpha(tot, a);
        auto key = std::make_pair(a, b);
        if (auto it = memo->find(key); it != memo->end()) return it->second;
        ElemOf<Tot> v = tot_eval(tot, a, b);
        memo->emplace(std::move(key), v);
        return v;
    };
    return h;
}

/* ------------------------------------------------------------------ */
/* Pairings of internal and cosimplicial operations                   */
/* ------------------------------------------------------------------ */

enum class TotOpKind {
    Product,  // iterated front/back product of all arguments, in order
    Cut       // operation evaluation cutting the rest into the first argument
};

/* Apply a pair of operations to total-complex elements: the internal one
 * acts within the common level, the cosimplicial one is realized by
 * interval cuts in the cosimplicial direction, and each argument splits
 * into its internal and cosimplicial parts with the Koszul unzip sign
 * (every cosimplicial part crosses the internal parts of the later
 * arguments). A Product needs at least two arguments and a Cut at least its
 * head. With both operations products this is the bilinear total-complex
 * product. */
template <class A>
TotElement<A> tot_action(const TotAlgebra<A>& tot, TotOpKind internal_op, TotOpKind cosimplicial_op,
                         const std::vector<TotElement<A>>& args) {
    using Tot = TotAlgebra<A>;
    const std::size_t m = args.size();
    const auto min_arity = [](TotOpKind k) {
        return k == TotOpKind::Product ? std::size_t{2} : std::size_t{1};
    };
    if (m < min_arity(internal_op) || m < min_arity(cosimplicial_op))
        throw DomainError("tot_action needs as many arguments as the operation arity");

    const auto pieces = [m](TotOpKind k) {
        std::vector<detail::TotPiece> seq;
        if (k == TotOpKind::Product) {
            for (std::size_t i = 0; i < m; ++i) seq.push_back({false, i, {}});
        } else {
            detail::TotPiece op;
            op.is_op = true;
            op.head = 0;
            for (std::size_t i = 1; i < m; ++i) op.groups.push_back({i});
            seq.push_back(std::move(op));
        }
        return seq;
    };
    const auto left = pieces(internal_op);
    const auto right = pieces(cosimplicial_op);

    ElemOf<Tot> out(tot.ring());
    std::vector<typename Tot::Mono> sel(m);
    auto rec = [&](auto&& self, std::size_t i, Coeff c) -> void {
        if (i == m) {
            long long kappa = 0;
            for (std::size_t u = 0; u < m; ++u)
                for (std::size_t v = u + 1; v < m; ++v)
                    kappa += static_cast<long long>(sel[u].first) *
                             tot.co.level(sel[v].first).degree(sel[v].second);
            out += detail::realize_tot_word(tot, left, right, sel,
                                            checked_mul(c, sign_pow(kappa)));
            return;
        }
        for (const auto& [k, ck] : args[i].terms()) {
            sel[i] = k;
            self(self, i + 1, checked_mul(c, ck));
        }
    };
    rec(rec, 0, 1);
    return out;
}

/* ------------------------------------------------------------------ */
/* Exhaustive checks                                                  */
/* ------------------------------------------------------------------ */

template <class A>
std::vector<typename TotAlgebra<A>::Mono> tot_basis_up_to(const TotAlgebra<A>& tot,
                                                          int degree_cap) {
    std::vector<typename TotAlgebra<A>::Mono> out;
    for (std::size_t q = 0; q <= tot.co.top(); ++q) {
        if (static_cast<int>(q) > degree_cap) break;
        for (const auto& m : tot.co.basis(q, degree_cap - static_cast<int>(q)))
            out.push_back({q, m});
    }
    return out;
}

/* All bar words over the total-degree-bounded basis, up to the given
 * length, whose total degrees sum to at most the cap. */
template <class A>
std::vector<BarWord<TotAlgebra<A>>> tot_bar_words(const TotAlgebra<A>& tot, std::size_t max_len,
                                                  int degree_cap) {
    std::vector<BarWord<TotAlgebra<A>>> out;
    const auto monos = tot_basis_up_to(tot, degree_cap);
    BarWord<TotAlgebra<A>> cur;
    auto rec = [&](auto&& self, int budget) -> void {
        out.push_back(cur);
        if (cur.size() == max_len) return;
        for (const auto& m : monos) {
            const int d = tot.degree(m);
            if (d > budget) continue;
            cur.push_back(m);
            self(self, budget - d);
            cur.pop_back();
        }
    };
    rec(rec, degree_cap);
    return out;
}

struct TotSweepCaps {
    std::size_t max_len_a = 2;
    std::size_t max_len_b = 2;
    int total_degree = 3;
};

template <class A>
std::vector<BarPair<TotAlgebra<A>>> tot_bar_pairs(const TotAlgebra<A>& tot,
                                                  const TotSweepCaps& caps) {
    std::vector<BarPair<TotAlgebra<A>>> out;
    const auto degsum = [&](const BarWord<TotAlgebra<A>>& w) {
        int d = 0;
        for (const auto& m : w) d += tot.degree(m);
        return d;
    };
    const auto as = tot_bar_words(tot, caps.max_len_a, caps.total_degree);
    const auto bs = tot_bar_words(tot, caps.max_len_b, caps.total_degree);
    for (const auto& a : as) {
        const int da = degsum(a);
        for (const auto& b : bs)
            if (da + degsum(b) <= caps.total_degree) out.emplace_back(a, b);
    }
    return out;
}

/* Cosemisimplicial identities and coface compatibility, exhaustively on
 * basis monomials up to the total degree cap: the relations
 * d_j d_i = d_i d_{j-1} for i < j, each coface a unital dg-algebra map, and
 * each coface intertwining the operation families at arities one and two. */
template <class A>
std::vector<DefectReport> check_cosemisimplicial(const CosemisimplicialH3<A>& co,
                                                 int degree_cap) {
    std::vector<DefectReport> reps;
    const Ring R = co.ring();

    DefectReport rel;
    rel.check = "coface-relations";
    rel.ring = R;
    for (std::size_t q = 0; q + 2 <= co.top(); ++q) {
        const int cap = degree_cap - static_cast<int>(q);
        if (cap < 0) break;
        for (const auto& m : co.basis(q, cap)) {
            const ElemOf<A> x = ElemOf<A>::single(R, m);
            for (std::size_t i = 0; i <= q + 1; ++i) {
                const ElemOf<A> dix = apply_coface(co, q, i, x);
                for (std::size_t j = i + 1; j <= q + 2; ++j) {
                    const ElemOf<A> lhs = apply_coface(co, q + 1, j, dix);
                    const ElemOf<A> rhs =
                        apply_coface(co, q + 1, i, apply_coface(co, q, j - 1, x));
                    const ElemOf<A> r = lhs - rhs;
                    rel.record("q=" + std::to_string(q) + " i=" + std::to_string(i) +
                                   " j=" + std::to_string(j) + " m=" + co.level(q).show(m),
                               r.size(), show_elem(co.level(q + 2), r));
                }
            }
        }
    }
    reps.push_back(std::move(rel));

    DefectReport mor;
    mor.check = "coface-morphism";
    mor.ring = R;
    for (std::size_t q = 0; q < co.top(); ++q) {
        const int cap = degree_cap - static_cast<int>(q);
        if (cap < 0) break;
        const A& src = co.level(q);
        const A& dst = co.level(q + 1);
        const auto basis = co.basis(q, cap);
        for (std::size_t i = 0; i <= q + 1; ++i) {
            const std::string where = " q=" + std::to_string(q) + " i=" + std::to_string(i);
            {
                const ElemOf<A> r = apply_coface(co, q, i, src.unit_elem()) - dst.unit_elem();
                mor.record("unit" + where, r.size(), show_elem(dst, r));
            }
            for (const auto& m : basis) {
                const ElemOf<A> x = ElemOf<A>::single(R, m);
                const ElemOf<A> r =
                    apply_coface(co, q, i, src.diff(m)) - diff(dst, apply_coface(co, q, i, x));
                mor.record("diff" + where + " m=" + src.show(m), r.size(), show_elem(dst, r));
            }
            for (const auto& m1 : basis) {
                const ElemOf<A> x1 = apply_coface(co, q, i, ElemOf<A>::single(R, m1));
                for (const auto& m2 : basis) {
                    if (src.degree(m1) + src.degree(m2) > cap) continue;
                    const ElemOf<A> x2 = apply_coface(co, q, i, ElemOf<A>::single(R, m2));
                    const ElemOf<A> r =
                        apply_coface(co, q, i, src.mul(m1, m2)) - hirsch::mul(dst, x1, x2);
                    mor.record("mul" + where + " " + src.show(m1) + "," + src.show(m2),
                               r.size(), show_elem(dst, r));
                }
            }
        }
    }
    reps.push_back(std::move(mor));

    DefectReport eop;
    eop.check = "coface-operations";
    eop.ring = R;
    for (std::size_t q = 0; q < co.top(); ++q) {
        const int cap = degree_cap - static_cast<int>(q);
        if (cap < 0) break;
        const A& src = co.level(q);
        const auto basis = co.basis(q, cap);
        for (std::size_t i = 0; i <= q + 1; ++i) {
            const std::string where = " q=" + std::to_string(q) + " i=" + std::to_string(i);
            for (const auto& h : basis) {
                const ElemOf<A> ph = apply_coface(co, q, i, ElemOf<A>::single(R, h));
                for (const auto& b1 : basis) {
                    if (src.degree(h) + src.degree(b1) > cap) continue;
                    const ElemOf<A> p1 = apply_coface(co, q, i, ElemOf<A>::single(R, b1));
                    {
                        const ElemOf<A> r =
                            apply_coface(co, q, i, co.op(q, BarWord<A>{h}, BarWord<A>{b1})) -
                            op_multilinear(co, q + 1, ph, {p1});
                        eop.record("op1" + where + " " + src.show(h) + ";" + src.show(b1),
                                   r.size(), show_elem(co.level(q + 1), r));
                    }
                    for (const auto& b2 : basis) {
                        if (src.degree(h) + src.degree(b1) + src.degree(b2) > cap) continue;
                        const ElemOf<A> p2 = apply_coface(co, q, i, ElemOf<A>::single(R, b2));
                        const ElemOf<A> r =
                            apply_coface(co, q, i,
                                         co.op(q, BarWord<A>{h}, BarWord<A>{b1, b2})) -
                            op_multilinear(co, q + 1, ph, {p1, p2});
                        eop.record("op2" + where + " " + src.show(h) + ";" + src.show(b1) +
                                       "," + src.show(b2),
                                   r.size(), show_elem(co.level(q + 1), r));
                    }
                }
            }
        }
    }
    reps.push_back(std::move(eop));

    return reps;
}

/* d^2 = 0 on the total complex, over the total-degree-bounded basis. */
template <class A>
DefectReport tot_d_squared(const TotAlgebra<A>& tot, int degree_cap) {
    DefectReport rep;
    rep.check = "tot-d-squared";
    rep.ring = tot.ring();
    for (const auto& m : tot_basis_up_to(tot, degree_cap)) {
        const ElemOf<TotAlgebra<A>> r = diff(tot, tot.diff(m));
        rep.record(tot.show(m), r.size(), show_elem(tot, r));
    }
    return rep;
}

/* Full verification bundle for the total complex of a cosemisimplicial
 * level-3 algebra: the cosemisimplicial identities, d^2 = 0 on the total
 * complex, the twisting-cochain residual sweep for the induced operation
 * family, and its unit/counit behaviour. */
template <class A>
std::vector<DefectReport> verify_tot_hirsch(const CosemisimplicialH3<A>& co,
                                            const TotSweepCaps& caps = {}) {
    std::vector<DefectReport> reps = check_cosemisimplicial(co, caps.total_degree);
    const TotAlgebra<A> tot(co);
    reps.push_back(tot_d_squared(tot, caps.total_degree));
    const TwistingHandle<TotAlgebra<A>> E = tot_handle(tot);
    reps.push_back(twisting_defect_sweep(tot, E, tot_bar_pairs(tot, caps)));
    reps.push_back(check_unit_counit(
        tot, E, tot_bar_words(tot, std::max(caps.max_len_a, caps.max_len_b), caps.total_degree)));
    return reps;
}

/* ------------------------------------------------------------------ */
/* The Mayer-Vietoris double complex of an ordered cover              */
/* ------------------------------------------------------------------ */

/* Product of simplicial cochain algebras indexed by the nerve tuples of one
 * cosimplicial level. Monomials are (factor, cell) pairs; the product and
 * differential act within a factor, the unit is the sum of the factor
 * units, and the augmentation evaluates through the first factor. */
class ProductCochainAlgebra {
  public:
    using Mono = std::pair<std::size_t, SimplexRef>;

    ProductCochainAlgebra(std::vector<std::vector<std::size_t>> tuples,
                          std::vector<CochainAlgebra> factors, CutRule rule)
        : tuples_(std::move(tuples)), factors_(std::move(factors)), rule_(rule) {
        if (factors_.empty() || factors_.size() != tuples_.size())
            throw InternalError("misaligned product-algebra data");
    }

    Ring ring() const { return factors_[0].ring(); }
    std::size_t factor_count() const { return factors_.size(); }
    const CochainAlgebra& factor(std::size_t i) const { return factors_.at(i); }
    const std::vector<std::size_t>& tuple(std::size_t i) const { return tuples_.at(i); }

    int degree(const Mono& m) const { return m.second.dim; }

    LinComb<Mono> mul(const Mono& a, const Mono& b) const {
        LinComb<Mono> out(ring());
        if (a.first != b.first) return out;
        for (const auto& [k, c] : factors_[a.first].mul(a.second, b.second).terms())
            out.add(Mono{a.first, k}, c);
        return out;
    }

    LinComb<Mono> diff(const Mono& m) const {
        LinComb<Mono> out(ring());
        for (const auto& [k, c] : factors_[m.first].diff(m.second).terms())
            out.add(Mono{m.first, k}, c);
        return out;
    }

    LinComb<Mono> unit_elem() const {
        LinComb<Mono> out(ring());
        for (std::size_t i = 0; i < factors_.size(); ++i)
            for (const auto& [k, c] : factors_[i].unit_elem().terms()) out.add(Mono{i, k}, c);
        return out;
    }

    bool is_unit(const Mono&) const { return false; }

    Coeff aug(const Mono& m) const { return m.first == 0 ? factors_[0].aug(m.second) : 0; }

    std::string show(const Mono& m) const {
        std::string s = "U";
        const auto& T = tuples_[m.first];
        for (std::size_t t = 0; t < T.size(); ++t) {
            if (t) s += '.';
            s += std::to_string(T[t]);
        }
        return s + ":" + factors_[m.first].show(m.second);
    }

    std::vector<Mono> basis_up_to(int dmax) const {
        std::vector<Mono> out;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            for (const auto& m : factors_[i].basis_up_to(dmax)) out.push_back({i, m});
        return out;
    }

    /* The componentwise interval-cut operation family: all inputs must sit
     * in the same factor, otherwise the value is zero. */
    LinComb<Mono> e1k(const Mono& a, const std::vector<Mono>& bs) const {
        LinComb<Mono> out(ring());
        std::vector<SimplexRef> cells;
        cells.reserve(bs.size());
        for (const auto& b : bs) {
            if (b.first != a.first) return out;
            cells.push_back(b.second);
        }
        for (const auto& [k, c] : cochain_e1k(factors_[a.first], a.second, cells, rule_).terms())
            out.add(Mono{a.first, k}, c);
        return out;
    }

  private:
    std::vector<std::vector<std::size_t>> tuples_;
    std::vector<CochainAlgebra> factors_;
    CutRule rule_;
};

/* A cover of a simplicial set by subcomplexes with a fixed total order on
 * the members. */
struct OrderedCover {
    std::vector<SubComplex> members;
};

inline OrderedCover cover_by_stars(const FiniteSimplicialSet& X,
                                   const std::vector<std::size_t>& vertices) {
    OrderedCover U;
    U.members.reserve(vertices.size());
    for (std::size_t v : vertices) U.members.push_back(vertex_star(X, v));
    return U;
}

/* The Mayer-Vietoris cosemisimplicial algebra of an ordered cover: level q
 * is the product of the cochain algebras of the (q+1)-fold intersections
 * over strictly increasing tuples with nonempty intersection, the i-th
 * coface restricts along dropping the i-th member of a tuple, and the
 * operation family acts componentwise by interval cuts. The space and the
 * cover are consumed up front, so the returned diagram owns its data. */
inline CosemisimplicialH3<ProductCochainAlgebra> mv_double_complex(
    const FiniteSimplicialSet& X, const OrderedCover& U, Ring ring,
    CutRule rule = kDefaultCutRule) {
    if (U.members.empty()) throw DomainError("an ordered cover needs at least one member");
    for (const auto& sub : U.members)
        if (sub.space != &X) throw DomainError("cover member lives on a different space");
    if (!covers(X, U.members)) throw DomainError("the collection does not cover the space");

    const std::size_t n = U.members.size();
    auto levels = std::make_shared<std::vector<ProductCochainAlgebra>>();
    for (std::size_t q = 0; q < n; ++q) {
        std::vector<std::vector<std::size_t>> tuples;
        std::vector<CochainAlgebra> factors;
        std::vector<std::size_t> cur;
        auto rec = [&](auto&& self, std::size_t lo) -> void {
            if (cur.size() == q + 1) {
                SubComplex inter = U.members[cur[0]];
                for (std::size_t t = 1; t < cur.size(); ++t)
                    inter = intersect(inter, U.members[cur[t]]);
                if (inter.count(0) == 0) return;  // empty intersection: no nerve simplex
                tuples.push_back(cur);
                factors.emplace_back(std::move(inter), ring);
                return;
            }
            for (std::size_t i = lo; i < n; ++i) {
                cur.push_back(i);
                self(self, i + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        if (tuples.empty()) break;
        levels->emplace_back(std::move(tuples), std::move(factors), rule);
    }

    CosemisimplicialH3<ProductCochainAlgebra> co;
    co.levels = levels;
    co.coface = [levels](std::size_t q, std::size_t i, const ProductCochainAlgebra::Mono& m) {
        const auto& lv = *levels;
        LinComb<ProductCochainAlgebra::Mono> out(lv[0].ring());
        if (q + 1 >= lv.size()) return out;
        if (i > q + 1) throw DomainError("coface index out of range");
        const auto& T = lv[q].tuple(m.first);
        const auto& next = lv[q + 1];
        for (std::size_t j = 0; j < next.factor_count(); ++j) {
            const auto& J = next.tuple(j);
            bool match = true;
            for (std::size_t t = 0, u = 0; t < J.size() && match; ++t) {
                if (t == i) continue;
                match = J[t] == T[u++];
            }
            if (!match) continue;
            if (!next.factor(j).member(m.second)) continue;
            out.add({j, m.second}, 1);
        }
        return out;
    };
    co.op = [levels](std::size_t q, const BarWord<ProductCochainAlgebra>& a,
                     const BarWord<ProductCochainAlgebra>& b) {
        const auto& lv = *levels;
        if (a.size() > 1) return LinComb<ProductCochainAlgebra::Mono>(lv[0].ring());
        if (a.empty()) return alpha(lv[q], b);
        return lv[q].e1k(a[0], b);
    };
    co.basis = [levels](std::size_t q, int dmax) { return (*levels)[q].basis_up_to(dmax); };
    return co;
}

/* The inclusion of the cochains of the whole space into level zero of the
 * Mayer-Vietoris total complex (a cochain restricts to every cover member).
 * Checks that the inclusion preserves the unit, the differential, the
 * product, and the operation family at arities one and two, on all basis
 * inputs up to the degree bound. */
inline DefectReport inclusion_morphism_check(const FiniteSimplicialSet& X, const OrderedCover& U,
                                             Ring ring, int degree_cap,
                                             CutRule rule = kDefaultCutRule) {
    const CochainAlgebra whole(X, ring);
    const auto co = mv_double_complex(X, U, ring, rule);
    using Tot = TotAlgebra<ProductCochainAlgebra>;
    const Tot tot(co);

    const auto incl = [&](const LinComb<SimplexRef>& x) {
        ElemOf<Tot> out(ring);
        const auto& lv0 = tot.co.level(0);
        for (const auto& [m, c] : x.terms())
            for (std::size_t f = 0; f < lv0.factor_count(); ++f)
                if (lv0.factor(f).member(m)) out.add(typename Tot::Mono{0, {f, m}}, c);
        return out;
    };
    const auto one = [&](SimplexRef m) { return LinComb<SimplexRef>::single(ring, m); };

    DefectReport rep;
    rep.check = "inclusion-morphism";
    rep.ring = ring;

    {
        const ElemOf<Tot> r = incl(whole.unit_elem()) - tot.unit_elem();
        rep.record("unit", r.size(), show_elem(tot, r));
    }
    const auto basis = whole.basis_up_to(degree_cap);
    for (const auto& a : basis) {
        const ElemOf<Tot> r = incl(whole.diff(a)) - diff(tot, incl(one(a)));
        rep.record("d " + whole.show(a), r.size(), show_elem(tot, r));
    }
    for (const auto& a : basis) {
        const ElemOf<Tot> ia = incl(one(a));
        for (const auto& b : basis) {
            if (a.dim + b.dim > degree_cap) continue;
            const ElemOf<Tot> ib = incl(one(b));
            {
                const ElemOf<Tot> r = incl(whole.mul(a, b)) - hirsch::mul(tot, ia, ib);
                rep.record("mul " + whole.show(a) + "," + whole.show(b), r.size(),
                           show_elem(tot, r));
            }
            {
                const ElemOf<Tot> r =
                    incl(cochain_e1k(whole, a, {b}, rule)) - tot_e1k(tot, ia, {ib});
                rep.record("op1 " + whole.show(a) + ";" + whole.show(b), r.size(),
                           show_elem(tot, r));
            }
            for (const auto& c : basis) {
                if (a.dim + b.dim + c.dim > degree_cap) continue;
                const ElemOf<Tot> ic = incl(one(c));
                const ElemOf<Tot> r =
                    incl(cochain_e1k(whole, a, {b, c}, rule)) - tot_e1k(tot, ia, {ib, ic});
                rep.record("op2 " + whole.show(a) + ";" + whole.show(b) + "," + whole.show(c),
                           r.size(), show_elem(tot, r));
            }
        }
    }
    return rep;
}

}  // namespace hirsch
