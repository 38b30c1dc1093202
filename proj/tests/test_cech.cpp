#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <utility>
#include <vector>

#include "hirsch/cech.hpp"

using namespace hirsch;

namespace {

using PAlg = ProductCochainAlgebra;
using PMono = PAlg::Mono;
using Tot = TotAlgebra<PAlg>;
using TotMono = Tot::Mono;
using TA = TensorAlg<CochainAlgebra, CochainAlgebra>;
using TMono = TA::Mono;

/* The constant two-member cover of a space: both members are the whole
 * space, so the total complex is the tensor product of the cochains of the
 * space with the cochains of the one-simplex nerve, identifying the level-0
 * factor t with the t-th nerve vertex and level 1 with the nerve edge. */
struct ConstantCoverModel {
    FiniteSimplicialSet nerve = standard_simplex(1);
    Ring ring;
    CosemisimplicialH3<PAlg> co;
    Tot tot;
    CochainAlgebra ax, an;
    TA talg;
    TensorHirsch<CochainAlgebra, CochainAlgebra> th;

    ConstantCoverModel(const FiniteSimplicialSet& X, Ring r)
        : ring(r),
          co(mv_double_complex(X, OrderedCover{{full_subcomplex(X), full_subcomplex(X)}}, r)),
          tot(co),
          ax(X, r),
          an(nerve, r),
          talg(ax, an),
          th{talg, cochain_handle(ax), cochain_handle(an)} {}

    ConstantCoverModel(const ConstantCoverModel&) = delete;

    TMono map_mono(const TotMono& m) const {
        if (m.first == 0) return {m.second.second, SimplexRef{0, m.second.first}};
        return {m.second.second, SimplexRef{1, 0}};
    }

    LinComb<TMono> map_elem(const LinComb<TotMono>& x) const {
        LinComb<TMono> out(ring);
        for (const auto& [k, c] : x.terms()) out.add(map_mono(k), c);
        return out;
    }
};

int word_degree_sum(const Tot& tot, const std::vector<TotMono>& w) {
    int d = 0;
    for (const auto& m : w) d += tot.degree(m);
    return d;
}

bool all_pass(const std::vector<DefectReport>& reps) {
    for (const auto& r : reps) {
        INFO(r.check << ": " << r.failures << " failures, first at " << r.first_failure_input
                     << " -> " << r.first_failure_residual);
        if (!r.pass()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("the constant two-member cover realizes the tensor-product model") {
    for (Ring ring : {Ring::Z, Ring::Z2}) {
        for (int which : {0, 1}) {
            FiniteSimplicialSet X = which == 0 ? standard_simplex(1) : boundary_simplex(2);
            CAPTURE(ring == Ring::Z ? "Z" : "Z2", which);
            ConstantCoverModel mdl(X, ring);
            const auto monos = tot_basis_up_to(mdl.tot, 4);

            SECTION("gradings, unit, and augmentation coincide") {
                LinComb<TMono> u(ring);
                for (const auto& [k, c] : mdl.talg.unit_elem().terms()) u.add(k, c);
                REQUIRE(mdl.map_elem(mdl.tot.unit_elem()) == u);
                for (const auto& m : monos) {
                    REQUIRE(mdl.tot.degree(m) == mdl.talg.degree(mdl.map_mono(m)));
                    REQUIRE(mdl.tot.aug(m) == mdl.talg.aug(mdl.map_mono(m)));
                }
            }

            SECTION("differentials coincide") {
                for (const auto& m : monos)
                    REQUIRE(mdl.map_elem(mdl.tot.diff(m)) == mdl.talg.diff(mdl.map_mono(m)));
            }

            SECTION("products coincide") {
                for (const auto& x : monos)
                    for (const auto& y : monos) {
                        INFO(mdl.tot.show(x) << " * " << mdl.tot.show(y));
                        REQUIRE(mdl.map_elem(mdl.tot.mul(x, y)) ==
                                mdl.talg.mul(mdl.map_mono(x), mdl.map_mono(y)));
                    }
            }

            SECTION("the operation family matches the tensor-product recursion") {
                const int cap = 4;
                std::vector<std::vector<TotMono>> heads, arg_words{{}};
                for (const auto& m : monos) {
                    heads.push_back({m});
                    arg_words.push_back({m});
                }
                for (const auto& m1 : monos)
                    for (const auto& m2 : monos) {
                        heads.push_back({m1, m2});
                        arg_words.push_back({m1, m2});
                    }
                for (const auto& a : heads) {
                    const int da = word_degree_sum(mdl.tot, a);
                    for (const auto& bs : arg_words) {
                        if (da + word_degree_sum(mdl.tot, bs) > cap) continue;
                        BarWord<TA> ta, tb;
                        for (const auto& m : a) ta.push_back(mdl.map_mono(m));
                        for (const auto& m : bs) tb.push_back(mdl.map_mono(m));
                        INFO("k=" << a.size() << " l=" << bs.size());
                        REQUIRE(mdl.map_elem(tot_eval(mdl.tot, a, bs)) ==
                                e_tensor(mdl.th, ta, tb));
                    }
                }
            }
        }
    }
}

TEST_CASE("a single-member cover degenerates to the plain cochain structure") {
    FiniteSimplicialSet X = boundary_simplex(2);
    for (Ring ring : {Ring::Z, Ring::Z2}) {
        CAPTURE(ring == Ring::Z ? "Z" : "Z2");
        auto co = mv_double_complex(X, OrderedCover{{full_subcomplex(X)}}, ring);
        REQUIRE(co.levels->size() == 1);
        Tot tot(co);
        CochainAlgebra whole(X, ring);

        auto embed_mono = [](SimplexRef m) { return TotMono{0, {0, m}}; };
        auto embed = [&](const LinComb<SimplexRef>& x) {
            LinComb<TotMono> out(ring);
            for (const auto& [k, c] : x.terms()) out.add(embed_mono(k), c);
            return out;
        };

        const auto basis = whole.basis_up_to(2);
        for (const auto& a : basis) {
            REQUIRE(embed(whole.diff(a)) == tot.diff(embed_mono(a)));
            for (const auto& b : basis) {
                REQUIRE(embed(whole.mul(a, b)) == tot.mul(embed_mono(a), embed_mono(b)));
                REQUIRE(embed(cochain_e1k(whole, a, {b})) ==
                        tot_e1k(tot, embed_mono(a), {embed_mono(b)}));
                for (const auto& c : basis)
                    REQUIRE(embed(cochain_e1k(whole, a, {b, c})) ==
                            tot_e1k(tot, embed_mono(a), {embed_mono(b), embed_mono(c)}));
            }
        }

        REQUIRE(all_pass(verify_tot_hirsch(co)));
    }
}

TEST_CASE("the two-star cover of the triangle boundary carries the structure") {
    FiniteSimplicialSet X = boundary_simplex(2);
    OrderedCover U = cover_by_stars(X, {0, 1});
    for (Ring ring : {Ring::Z2, Ring::Z}) {
        CAPTURE(ring == Ring::Z ? "Z" : "Z2");
        auto co = mv_double_complex(X, U, ring);

        SECTION("nerve combinatorics") {
            REQUIRE(co.levels->size() == 2);
            REQUIRE(co.level(0).factor_count() == 2);
            REQUIRE(co.level(1).factor_count() == 1);
            // the double intersection keeps all three vertices and one edge
            REQUIRE(co.level(1).factor(0).support().count(0) == 3);
            REQUIRE(co.level(1).factor(0).support().count(1) == 1);
        }

        SECTION("each factor carries the interval-cut structure") {
            for (std::size_t q = 0; q <= co.top(); ++q)
                for (std::size_t f = 0; f < co.level(q).factor_count(); ++f)
                    REQUIRE(all_pass(verify_cochain_level3(co.level(q).factor(f),
                                                           CochainSweepCaps{})));
        }

        SECTION("the total complex verifies at total degree 3") {
            REQUIRE(all_pass(verify_tot_hirsch(co, TotSweepCaps{2, 2, 3})));
        }

        SECTION("the inclusion of the whole space is a morphism up to degree 2") {
            DefectReport rep = inclusion_morphism_check(X, U, ring, 2);
            INFO(rep.first_failure_input << " -> " << rep.first_failure_residual);
            REQUIRE(rep.inputs_examined > 0);
            REQUIRE(rep.pass());
        }
    }
}

TEST_CASE("corrupting a coface is detected") {
    FiniteSimplicialSet X = boundary_simplex(2);
    OrderedCover U = cover_by_stars(X, {0, 1});
    for (Ring ring : {Ring::Z2, Ring::Z}) {
        CAPTURE(ring == Ring::Z ? "Z" : "Z2");
        auto co = mv_double_complex(X, U, ring);
        auto orig = co.coface;
        co.coface = [orig, ring](std::size_t q, std::size_t i, const PMono& m) {
            if (q == 0 && i == 0) return LinComb<PMono>(ring);
            return orig(q, i, m);
        };
        std::size_t failures = 0;
        for (const auto& rep : verify_tot_hirsch(co, TotSweepCaps{2, 2, 2}))
            failures += rep.failures;
        REQUIRE(failures > 0);
    }
}

TEST_CASE("operation pairings act through coface compositions") {
    FiniteSimplicialSet X = standard_simplex(1);
    for (Ring ring : {Ring::Z, Ring::Z2}) {
        CAPTURE(ring == Ring::Z ? "Z" : "Z2");
        ConstantCoverModel mdl(X, ring);
        const auto monos = tot_basis_up_to(mdl.tot, 3);
        auto one = [&](const TotMono& m) { return LinComb<TotMono>::single(ring, m); };

        SECTION("paired products reproduce the total-complex product") {
            for (const auto& x : monos)
                for (const auto& y : monos)
                    REQUIRE(tot_action(mdl.tot, TotOpKind::Product, TotOpKind::Product,
                                       {one(x), one(y)}) == mdl.tot.mul(x, y));
        }

        SECTION("level (0,0) products need no cofaces") {
            for (const auto& x : monos) {
                if (x.first != 0) continue;
                for (const auto& y : monos) {
                    if (y.first != 0) continue;
                    LinComb<TotMono> expect(ring);
                    for (const auto& [k, c] : mdl.co.level(0).mul(x.second, y.second).terms())
                        expect.add(TotMono{0, k}, c);
                    REQUIRE(tot_action(mdl.tot, TotOpKind::Product, TotOpKind::Product,
                                       {one(x), one(y)}) == expect);
                }
            }
        }

        SECTION("level (0,1) products compose one coface and multiply") {
            for (const auto& x : monos) {
                if (x.first != 0) continue;
                for (const auto& y : monos) {
                    if (y.first != 1) continue;
                    const ElemOf<PAlg> px =
                        apply_coface(mdl.co, 0, 1, ElemOf<PAlg>::single(ring, x.second));
                    LinComb<TotMono> expect(ring);
                    for (const auto& [k, c] :
                         hirsch::mul(mdl.co.level(1), px,
                                     ElemOf<PAlg>::single(ring, y.second))
                             .terms())
                        expect.add(TotMono{1, k}, c);
                    REQUIRE(mdl.tot.mul(x, y) == expect);
                }
            }
        }

        SECTION("an internal cut paired with the product matches the tensor model") {
            for (const auto& x : monos)
                for (const auto& y : monos) {
                    const TMono tx = mdl.map_mono(x), ty = mdl.map_mono(y);
                    LinComb<TMono> expect(ring);
                    const Coeff s = sign_pow(static_cast<long long>(x.first) *
                                             mdl.ax.degree(ty.first));
                    for (const auto& [kl, cl] : cochain_e1k(mdl.ax, tx.first, {ty.first}).terms())
                        for (const auto& [kr, cr] : mdl.an.mul(tx.second, ty.second).terms())
                            expect.add(TMono{kl, kr}, checked_mul(s, checked_mul(cl, cr)));
                    INFO(mdl.tot.show(x) << " ; " << mdl.tot.show(y));
                    REQUIRE(mdl.map_elem(tot_action(mdl.tot, TotOpKind::Cut,
                                                    TotOpKind::Product, {one(x), one(y)})) ==
                            expect);
                }
        }

        SECTION("a product paired with a cosimplicial cut matches the tensor model") {
            for (const auto& x : monos)
                for (const auto& y : monos) {
                    const TMono tx = mdl.map_mono(x), ty = mdl.map_mono(y);
                    LinComb<TMono> expect(ring);
                    const Coeff s = sign_pow(static_cast<long long>(x.first) *
                                             mdl.ax.degree(ty.first));
                    for (const auto& [kl, cl] : mdl.ax.mul(tx.first, ty.first).terms())
                        for (const auto& [kr, cr] :
                             cochain_e1k(mdl.an, tx.second, {ty.second}).terms())
                            expect.add(TMono{kl, kr}, checked_mul(s, checked_mul(cl, cr)));
                    INFO(mdl.tot.show(x) << " ; " << mdl.tot.show(y));
                    REQUIRE(mdl.map_elem(tot_action(mdl.tot, TotOpKind::Product,
                                                    TotOpKind::Cut, {one(x), one(y)})) ==
                            expect);
                }
        }

        SECTION("arity is validated and truncation returns zero") {
            REQUIRE_THROWS_AS(tot_action(mdl.tot, TotOpKind::Product, TotOpKind::Product,
                                         {one(monos[0])}),
                              DomainError);
            REQUIRE_THROWS_AS(tot_action(mdl.tot, TotOpKind::Cut, TotOpKind::Cut, {}),
                              DomainError);
            // two level-1 arguments overflow the two-member nerve
            TotMono e1{1, {0, SimplexRef{0, 0}}};
            REQUIRE(tot_action(mdl.tot, TotOpKind::Cut, TotOpKind::Product,
                               {one(e1), one(e1)})
                        .is_zero());
        }
    }
}

TEST_CASE("operation output degrees add up") {
    FiniteSimplicialSet X = boundary_simplex(2);
    OrderedCover U = cover_by_stars(X, {0, 1});
    auto co = mv_double_complex(X, U, Ring::Z);
    Tot tot(co);
    const auto monos = tot_basis_up_to(tot, 2);
    for (const auto& a : monos)
        for (const auto& b : monos) {
            const auto v1 = tot_e1k(tot, a, {b});
            for (const auto& [k, c] : v1.terms())
                REQUIRE(tot.degree(k) == tot.degree(a) + tot.degree(b) - 1);
            for (const auto& c2 : monos) {
                const auto v2 = tot_e1k(tot, a, {b, c2});
                for (const auto& [k, c] : v2.terms())
                    REQUIRE(tot.degree(k) ==
                            tot.degree(a) + tot.degree(b) + tot.degree(c2) - 2);
            }
        }
}

TEST_CASE("covers are validated") {
    FiniteSimplicialSet X = boundary_simplex(2);
    FiniteSimplicialSet Y = standard_simplex(2);
    REQUIRE_THROWS_AS(mv_double_complex(X, OrderedCover{}, Ring::Z), DomainError);
    // one star misses the opposite edge
    REQUIRE_THROWS_AS(mv_double_complex(X, cover_by_stars(X, {0}), Ring::Z), DomainError);
    REQUIRE_THROWS_AS(
        mv_double_complex(X, OrderedCover{{full_subcomplex(Y)}}, Ring::Z), DomainError);
}
