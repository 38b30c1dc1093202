#pragma once
// Degree-one homotopy correcting the associativity of the induced product on
// the bar construction of a tensor algebra. Mod 2 only: the two bracketings
// of three single letters differ by the boundary of a two-term element.

#include "tensor.hpp"

namespace hirsch {

/* h([x], [y], [z]) for elementary tensors x, y, z:
 * [x' E'([y'], [z']) (x) E''([x''], [z''|y''])]
 * + [E'([x'], [y'|z']) (x) E''([y''], [z'']) x'']. */
template <class AL, class AR>
BarElem<TensorAlg<AL, AR>> assoc_homotopy_value(const TensorHirsch<AL, AR>& th,
                                                const typename TensorAlg<AL, AR>::Mono& x,
                                                const typename TensorAlg<AL, AR>::Mono& y,
                                                const typename TensorAlg<AL, AR>::Mono& z) {
    using T = TensorAlg<AL, AR>;
    const T& alg = th.alg;
    if (alg.ring() != Ring::Z2)
        throw DomainError("the associativity homotopy is only defined over z2");

    ElemOf<AL> l1 = mul(alg.left, ElemOf<AL>::single(alg.ring(), x.first),
                        th.el.eval(BarWord<AL>{y.first}, BarWord<AL>{z.first}));
    ElemOf<AR> r1 = th.er.eval(BarWord<AR>{x.second}, BarWord<AR>{z.second, y.second});
    ElemOf<AL> l2 = th.el.eval(BarWord<AL>{x.first}, BarWord<AL>{y.first, z.first});
    ElemOf<AR> r2 = mul(alg.right, th.er.eval(BarWord<AR>{y.second}, BarWord<AR>{z.second}),
                        ElemOf<AR>::single(alg.ring(), x.second));

    BarElem<T> out(alg.ring());
    auto emit = [&](const ElemOf<AL>& l, const ElemOf<AR>& r) {
        for (const auto& [ml, cl] : l.terms())
            for (const auto& [mr, cr] : r.terms())
                out.add(BarWord<T>{typename T::Mono{ml, mr}}, checked_mul(cl, cr));
    };
    emit(l1, r1);
    emit(l2, r2);
    return out;
}

/* ([x][y])[z] + [x]([y][z]) + d(h([x],[y],[z])) for closed letters; zero when
 * both factor handles satisfy the nested head reduction. */
template <class AL, class AR>
BarElem<TensorAlg<AL, AR>> assoc_homotopy_defect(const TensorHirsch<AL, AR>& th,
                                                 const typename TensorAlg<AL, AR>::Mono& x,
                                                 const typename TensorAlg<AL, AR>::Mono& y,
                                                 const typename TensorAlg<AL, AR>::Mono& z) {
    using T = TensorAlg<AL, AR>;
    const T& alg = th.alg;
    if (alg.ring() != Ring::Z2)
        throw DomainError("the associativity defect is only defined over z2");
    for (const auto& m : {x, y, z})
        if (!alg.diff(m).is_zero())
            throw DomainError("the associativity defect needs closed letters");

    TwistingHandle<T> H = tensor_handle(th);
    auto single = [&](const typename T::Mono& m) {
        return BarElem<T>::single(alg.ring(), BarWord<T>{m});
    };
    BarElem<T> out = bar_product(alg, H, bar_product(alg, H, single(x), single(y)), single(z));
    out.axpy(1, bar_product(alg, H, single(x), bar_product(alg, H, single(y), single(z))));
    out.axpy(1, bar_differential(alg, assoc_homotopy_value(th, x, y, z)));
    return out;
}

}  // namespace hirsch
