#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hirsch/bar.hpp"

namespace hirsch {

/* A twisting cochain BA (x) BA -> A presented by its evaluator on pairs of
 * bar words. level3 means it vanishes when the first argument has more than
 * one entry; normalized means it kills unit entries and extends alpha. */
template <class A>
struct TwistingHandle {
    std::function<ElemOf<A>(const BarWord<A>&, const BarWord<A>&)> eval;
    bool normalized = true;
    bool level3 = true;
};

/* Residual of the twisting-cochain condition at (a, b); identically zero iff
 * the handle satisfies d(E) = E cup E together with the alpha boundary
 * behaviour. Reported instead of asserted so a sign error pinpoints terms. */
template <class A>
ElemOf<A> twisting_defect(const A& alg, const TwistingHandle<A>& E, const BarWord<A>& a,
                          const BarWord<A>& b) {
    ElemOf<A> out = diff(alg, E.eval(a, b));

    for (const auto& [aw, c] : bar_differential(alg, a).terms()) out.axpy(c, E.eval(aw, b));

    Coeff sa = sign_pow(bar_degree(alg, a));
    for (const auto& [bw, c] : bar_differential(alg, b).terms())
        out.axpy(checked_mul(sa, c), E.eval(a, bw));

    for (const auto& [a1, a2] : deconcat2<A>(a)) {
        const int d1 = bar_degree(alg, a1), d2 = bar_degree(alg, a2);
        for (const auto& [b1, b2] : deconcat2<A>(b)) {
            ElemOf<A> l = E.eval(a1, b1);
            if (l.is_zero()) continue;
            ElemOf<A> r = E.eval(a2, b2);
            if (r.is_zero()) continue;
            Coeff s = sign_pow(d1 + static_cast<long long>(d2 + 1) * bar_degree(alg, b1));
            out.axpy(checked_mul(-1, s), mul(alg, l, r));
        }
    }
    return out;
}

/* Product on BA induced by a twisting cochain: the unique coalgebra map
 * whose single-entry component is E. Sums over simultaneous splittings of
 * both factors into r blocks each; the sign is the unzip Koszul factor of
 * the iterated coproduct on BA (x) BA, and blocks with both halves empty
 * drop out because E kills them. */
template <class A>
BarElem<A> bar_product(const A& alg, const TwistingHandle<A>& E, const BarWord<A>& a,
                       const BarWord<A>& b) {
    BarElem<A> out(alg.ring());
    if (a.empty() && b.empty()) {
        out.add(BarWord<A>{}, 1);
        return out;
    }
    const std::size_t rmax = a.size() + b.size();
    for (std::size_t r = 1; r <= rmax; ++r) {
        for (const auto& pa : deconcat<A>(a, r)) {
            for (const auto& pb : deconcat<A>(b, r)) {
                long long exp = 0;
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = i + 1; j < r; ++j)
                        exp += static_cast<long long>(bar_degree(alg, pa[j])) *
                               bar_degree(alg, pb[i]);
                std::vector<ElemOf<A>> vals;
                vals.reserve(r);
                bool dead = false;
                for (std::size_t i = 0; i < r; ++i) {
                    ElemOf<A> v = E.eval(pa[i], pb[i]);
                    if (v.is_zero()) {
                        dead = true;
                        break;
                    }
                    vals.push_back(std::move(v));
                }
                if (dead) continue;
                out.axpy(sign_pow(exp), expand_entries(alg, vals));
            }
        }
    }
    return out;
}

/* Bilinear extension of the induced product. */
template <class A>
BarElem<A> bar_product(const A& alg, const TwistingHandle<A>& E, const BarElem<A>& x,
                       const BarElem<A>& y) {
    BarElem<A> out(alg.ring());
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms())
            out.axpy(checked_mul(cx, cy), bar_product(alg, E, wx, wy));
    return out;
}

/* Outcome of an exhaustive residual sweep. */
struct DefectReport {
    std::string check;
    Ring ring = Ring::Z;
    std::size_t inputs_examined = 0;
    std::size_t failures = 0;
    std::size_t max_residual_terms = 0;
    std::string first_failure_input;
    std::string first_failure_residual;

    bool pass() const { return failures == 0; }

    void record(const std::string& input, std::size_t residual_terms,
                const std::string& residual) {
        ++inputs_examined;
        if (residual_terms == 0) return;
        ++failures;
        if (residual_terms > max_residual_terms) max_residual_terms = residual_terms;
        if (failures == 1) {
            first_failure_input = input;
            first_failure_residual = residual;
        }
    }
};

template <class A>
using BarPair = std::pair<BarWord<A>, BarWord<A>>;

template <class A>
std::string show_pair(const A& alg, const BarPair<A>& p) {
    return "a=" + show(alg, p.first) + " b=" + show(alg, p.second);
}

template <class A>
DefectReport twisting_defect_sweep(const A& alg, const TwistingHandle<A>& E,
                                   const std::vector<BarPair<A>>& inputs,
                                   const std::string& name = "twisting-cochain") {
    DefectReport rep;
    rep.check = name;
    rep.ring = alg.ring();
    for (const auto& p : inputs) {
        ElemOf<A> r = twisting_defect(alg, E, p.first, p.second);
        rep.record(show_pair(alg, p), r.size(), show_elem(alg, r));
    }
    return rep;
}

/* E(unit, b) = alpha(b) and E(a, unit) = alpha(a). */
template <class A>
DefectReport check_unit_counit(const A& alg, const TwistingHandle<A>& E,
                               const std::vector<BarWord<A>>& inputs) {
    DefectReport rep;
    rep.check = "unit-counit";
    rep.ring = alg.ring();
    for (const auto& w : inputs) {
        ElemOf<A> r1 = E.eval({}, w) - alpha(alg, w);
        rep.record("a=[] b=" + show(alg, w), r1.size(), show_elem(alg, r1));
        ElemOf<A> r2 = E.eval(w, {}) - alpha(alg, w);
        rep.record("a=" + show(alg, w) + " b=[]", r2.size(), show_elem(alg, r2));
    }
    return rep;
}

/* Vanishing on inputs containing a unit entry, and augmentation vanishing
 * epsilon(E(a,b)) = 0 whenever the total weight exceeds one. */
template <class A>
DefectReport check_normalized(const A& alg, const TwistingHandle<A>& E,
                              const std::vector<BarPair<A>>& unit_inputs,
                              const std::vector<BarPair<A>>& aug_inputs) {
    DefectReport rep;
    rep.check = "normalized";
    rep.ring = alg.ring();
    for (const auto& p : unit_inputs) {
        ElemOf<A> r = E.eval(p.first, p.second);
        rep.record(show_pair(alg, p), r.size(), show_elem(alg, r));
    }
    for (const auto& p : aug_inputs) {
        if (p.first.size() + p.second.size() <= 1) continue;
        Coeff c = aug(alg, E.eval(p.first, p.second));
        rep.record("aug " + show_pair(alg, p), c == 0 ? 0 : 1, std::to_string(c));
    }
    return rep;
}

}  // namespace hirsch
