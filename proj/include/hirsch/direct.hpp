#pragma once
// Term-by-term cut enumeration for the tensor-product twisting cochain.
// Each scheme realizes one unsigned monomial of e_tensor; signs are looked
// up in the recursion's expansion, which stays the source of truth.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tensor.hpp"

namespace hirsch {

/* One splitting pattern for e_tensor(a, b) with k = len(a):
 * left_cut has 2k block sizes over [b_1|...|b_l], the blocks at positions
 * 3, 5, ..., 2k-1 nonempty; right_cut has k block sizes over the fused
 * remainder (block 1's entries are set apart as the front factor, later odd
 * blocks fuse into single entries, even blocks keep entries separate). */
struct CutScheme {
    std::vector<std::size_t> left_cut;
    std::vector<std::size_t> right_cut;
};

template <class AL, class AR>
struct DirectTerm {
    Coeff sign;
    typename TensorAlg<AL, AR>::Mono word;
};

/* Ordered splittings of n into m possibly-empty block sizes. */
inline std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t m) {
    std::vector<std::vector<std::size_t>> out;
    if (m == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    std::vector<std::size_t> cur(m, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == m) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (std::size_t take = 0; take <= left; ++take) {
            cur[pos] = take;
            self(self, pos + 1, left - take);
        }
    };
    rec(rec, 0, n);
    return out;
}

/* Entry of the fused remainder word: the b-index range it covers and the
 * largest right block (1-based) it may land in. Entries consumed by the
 * i-th left evaluator must sit in block i-1 or earlier; the rest are free. */
struct FusedEntry {
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::size_t bound = 0;
};

inline std::vector<FusedEntry> fused_layout(std::size_t k,
                                            const std::vector<std::size_t>& left_cut) {
    std::vector<FusedEntry> out;
    std::size_t pos = left_cut[0];
    for (std::size_t blk = 1; blk < 2 * k; ++blk) {
        const std::size_t sz = left_cut[blk];
        if (blk % 2 == 1) {
            for (std::size_t t = 0; t < sz; ++t) out.push_back({pos + t, pos + t + 1, k});
        } else if (sz > 0) {
            out.push_back({pos, pos + sz, blk / 2});
        }
        pos += sz;
    }
    return out;
}

inline std::vector<CutScheme> cut_schemes(std::size_t k, std::size_t l) {
    if (k == 0) throw DomainError("cut schemes need a nonempty first bar argument");
    std::vector<CutScheme> out;
    for (const auto& lc : compositions(l, 2 * k)) {
        bool ok = true;
        for (std::size_t blk = 2; blk + 1 < 2 * k; blk += 2)
            if (lc[blk] == 0) { ok = false; break; }
        if (!ok) continue;
        const auto layout = fused_layout(k, lc);
        for (const auto& rc : compositions(layout.size(), k)) {
            bool fits = true;
            std::size_t entry = 0;
            for (std::size_t m = 1; m <= k && fits; ++m)
                for (std::size_t t = 0; t < rc[m - 1]; ++t, ++entry)
                    if (m > layout[entry].bound) { fits = false; break; }
            if (fits) out.push_back({lc, rc});
        }
    }
    return out;
}

namespace detail {

template <class A>
std::pair<typename A::Mono, Coeff> single_mono(const A&, const LinComb<typename A::Mono>& v) {
    if (v.size() != 1) throw InternalError("cut realization expects monomial factors");
    const auto& [m, c] = *v.terms().begin();
    return {m, c};
}

}  // namespace detail

/* The unsigned monomial a scheme contributes to e_tensor(a, b), or zero if a
 * handle evaluation vanishes. Coefficients from the handles are discarded;
 * the recipe tracks only the word shape. */
template <class AL, class AR>
ElemOf<TensorAlg<AL, AR>> realize_cut(const TensorHirsch<AL, AR>& th,
                                      const BarWord<TensorAlg<AL, AR>>& a,
                                      const BarWord<TensorAlg<AL, AR>>& b,
                                      const CutScheme& scheme) {
    using T = TensorAlg<AL, AR>;
    const T& alg = th.alg;
    const std::size_t k = a.size();

    ElemOf<AL> lval = alg.left.unit_elem();
    std::size_t pos = 0;
    for (std::size_t blk = 0; blk < 2 * k; ++blk) {
        const std::size_t sz = scheme.left_cut[blk];
        if (blk % 2 == 0) {
            BarWord<AL> arg;
            arg.reserve(sz);
            for (std::size_t t = 0; t < sz; ++t) arg.push_back(b[pos + t].first);
            lval = mul(alg.left, lval, th.el.eval(BarWord<AL>{a[blk / 2].first}, arg));
        } else {
            for (std::size_t t = 0; t < sz; ++t)
                lval = mul(alg.left, lval,
                           ElemOf<AL>::single(alg.ring(), b[pos + t].first));
        }
        pos += sz;
        if (lval.is_zero()) return ElemOf<T>(alg.ring());
    }

    ElemOf<AR> rval = alg.right.unit_elem();
    for (std::size_t t = 0; t < scheme.left_cut[0]; ++t)
        rval = mul(alg.right, rval, ElemOf<AR>::single(alg.ring(), b[t].second));

    const auto layout = fused_layout(k, scheme.left_cut);
    std::vector<typename AR::Mono> fused;
    fused.reserve(layout.size());
    for (const auto& fe : layout) {
        ElemOf<AR> prod = ElemOf<AR>::single(alg.ring(), b[fe.lo].second);
        for (std::size_t j = fe.lo + 1; j < fe.hi; ++j)
            prod = mul(alg.right, prod, ElemOf<AR>::single(alg.ring(), b[j].second));
        fused.push_back(detail::single_mono(alg.right, prod).first);
    }

    std::size_t entry = 0;
    for (std::size_t i = 0; i < k; ++i) {
        BarWord<AR> arg;
        for (std::size_t t = 0; t < scheme.right_cut[i]; ++t, ++entry)
            arg.push_back(fused[entry]);
        rval = mul(alg.right, rval, th.er.eval(BarWord<AR>{a[i].second}, arg));
        if (rval.is_zero()) return ElemOf<T>(alg.ring());
    }

    ElemOf<T> out(alg.ring());
    for (const auto& [ml, cl] : lval.terms())
        for (const auto& [mr, cr] : rval.terms()) out.add(typename T::Mono{ml, mr}, 1);
    return out;
}

/* All terms of e_tensor(a, b) by cut enumeration. Signs come from matching
 * each unsigned word against the expanded recursion; with all-distinct
 * generators that matching is injective. */
template <class AL, class AR>
std::vector<DirectTerm<AL, AR>> direct_terms(const TensorHirsch<AL, AR>& th,
                                             const BarWord<TensorAlg<AL, AR>>& a,
                                             const BarWord<TensorAlg<AL, AR>>& b) {
    using T = TensorAlg<AL, AR>;
    if (a.empty()) throw DomainError("direct_terms needs a nonempty first bar argument");
    const ElemOf<T> ref = e_tensor(th, a, b);
    std::vector<DirectTerm<AL, AR>> out;
    for (const CutScheme& scheme : cut_schemes(a.size(), b.size())) {
        ElemOf<T> val = realize_cut(th, a, b, scheme);
        for (const auto& [m, c] : val.terms()) {
            (void)c;
            Coeff s = ref.coeff(m);
            if (s == 0)
                throw InternalError("cut term missing from the recursion expansion");
            out.push_back({s, m});
        }
    }
    return out;
}

}  // namespace hirsch
