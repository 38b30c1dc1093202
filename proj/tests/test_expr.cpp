#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace hirsch;
using ts::gw;

namespace {

struct Fix {
    GenStore store;
    FreeAlgebra alg;
    Generator g, h, w;

    explicit Fix(Ring ring, EvalMode mode = EvalMode::Level3) : alg(ring, mode) {
        g = add_generator(store, alg, "g", 1, Side::L);
        h = add_generator(store, alg, "h", 1, Side::L);
        w = add_generator(store, alg, "w", 2, Side::L);
    }
};

}  // namespace

TEST_CASE("free multiplication concatenates words") {
    Fix f(Ring::Z);
    Expr gh = f.alg.mul(gw(f.g), gw(f.h));
    REQUIRE(gh.size() == 1);
    Word expect{{Atom(f.g), Atom(f.h)}};
    CHECK(gh.coeff(expect) == 1);
    CHECK(word_degree(expect) == 2);
}

TEST_CASE("the empty word is a two-sided unit") {
    Fix f(Ring::Z);
    Expr left = mul(f.alg, expr_unit(f.alg), expr_gen(f.alg, f.g));
    Expr right = mul(f.alg, expr_gen(f.alg, f.g), expr_unit(f.alg));
    CHECK(left == expr_gen(f.alg, f.g));
    CHECK(right == expr_gen(f.alg, f.g));
}

TEST_CASE("multiplication is bilinear over the coefficients") {
    Fix f(Ring::Z);
    Expr a = expr_gen(f.alg, f.g).scaled(2);
    Expr b = expr_gen(f.alg, f.h).scaled(3);
    Expr ab = mul(f.alg, a, b);
    Word expect{{Atom(f.g), Atom(f.h)}};
    CHECK(ab.coeff(expect) == 6);
}

TEST_CASE("opposite-side atoms never share a word") {
    Fix f(Ring::Z);
    GenStore store2;
    Generator r = add_generator(store2, f.alg, "r", 1, Side::R);
    CHECK_THROWS_AS(concat_words(gw(f.g), gw(r)), DomainError);
}

TEST_CASE("generators with no assigned differential are closed") {
    Fix f(Ring::Z);
    CHECK(f.alg.diff(gw(f.g)).is_zero());
}

TEST_CASE("the differential is a derivation over Z") {
    GenStore store;
    FreeAlgebra alg(Ring::Z);
    Generator du = add_generator(store, alg, "du", 2, Side::L);
    Generator dv = add_generator(store, alg, "dv", 3, Side::L);
    Generator u = add_generator(store, alg, "u", 1, Side::L, expr_gen(alg, du));
    Generator v = add_generator(store, alg, "v", 2, Side::L, expr_gen(alg, dv));

    Expr lhs = alg.diff(concat_words(gw(u), gw(v)));
    // d(uv) = du.v + (-1)^{|u|} u.dv
    Expr rhs = mul(alg, expr_gen(alg, du), expr_gen(alg, v)) +
               mul(alg, expr_gen(alg, u), expr_gen(alg, dv)).scaled(-1);
    CHECK(lhs == rhs);

    Expr lhs2 = alg.diff(concat_words(gw(v), gw(u)));
    Expr rhs2 = mul(alg, expr_gen(alg, dv), expr_gen(alg, u)) +
                mul(alg, expr_gen(alg, v), expr_gen(alg, du));
    CHECK(lhs2 == rhs2);
}

TEST_CASE("assigned differentials are validated at registration") {
    GenStore store;
    FreeAlgebra alg(Ring::Z);
    Generator p = add_generator(store, alg, "p", 3, Side::L);
    CHECK_THROWS_AS(add_generator(store, alg, "q", 1, Side::L, expr_gen(alg, p)), DomainError);
    GenStore storeR;
    Generator r = add_generator(storeR, alg, "r", 2, Side::R);
    CHECK_THROWS_AS(add_generator(storeR, alg, "s", 1, Side::L, expr_gen(alg, r)), DomainError);
    CHECK_THROWS_AS(store.add("p", 1, Side::L), DomainError);
}

TEST_CASE("E-symbol atoms carry the head degree plus desuspended entries") {
    Fix f(Ring::Z);
    // |E(g;[h])| = 1 + (1-1)
    CHECK(atom_degree(Atom(ESymbol{f.g, {gw(f.h)}})) == 1);
    // |E(w;[h|w])| = 2 + (1-1) + (2-1)
    CHECK(atom_degree(Atom(ESymbol{f.w, {gw(f.h), gw(f.w)}})) == 3);
}

TEST_CASE("E-symbols vanish on unit entries and degenerate on empty argument lists") {
    Fix f(Ring::Z);
    CHECK(make_esymbol_terms(Ring::Z, f.g, {Word{}}).is_zero());
    CHECK(make_esymbol_terms(Ring::Z, f.g, {}) == expr_gen(f.alg, f.g));
}

TEST_CASE("differential of E(g;[h]) is the commutator for closed degree-1 inputs") {
    Fix fz(Ring::Z);
    Expr dz = fz.alg.diff(Word{{Atom(ESymbol{fz.g, {gw(fz.h)}})}});
    Expr expect = fz.alg.mul(gw(fz.h), gw(fz.g)) + fz.alg.mul(gw(fz.g), gw(fz.h));
    CHECK(dz == expect);

    Fix f2(Ring::Z2);
    Expr d2 = f2.alg.diff(Word{{Atom(ESymbol{f2.g, {gw(f2.h)}})}});
    Expr expect2 = f2.alg.mul(gw(f2.g), gw(f2.h)) + f2.alg.mul(gw(f2.h), gw(f2.g));
    CHECK(d2 == expect2);
}

TEST_CASE("head reduction of a product head splits across the argument") {
    Fix f(Ring::Z2);
    ts::FBar barh{gw(f.h)};

    // single-generator head: already an E-symbol
    Expr r1 = reduce_e_head(f.alg, expr_gen(f.alg, f.g), barh);
    CHECK(r1 == expr_single(f.alg, Word{{Atom(ESymbol{f.g, {gw(f.h)}})}}));

    // unit head acts as the length-one projection
    Expr r2 = reduce_e_head(f.alg, expr_unit(f.alg), barh);
    CHECK(r2 == expr_gen(f.alg, f.h));

    // two-letter head: Leibniz-style split
    Expr r3 = reduce_e_head(f.alg, expr_single(f.alg, concat_words(gw(f.g), gw(f.h))), barh);
    Expr t1 = mul(f.alg, expr_gen(f.alg, f.g),
                  expr_single(f.alg, Word{{Atom(ESymbol{f.h, {gw(f.h)}})}}));
    Expr t2 = mul(f.alg, expr_single(f.alg, Word{{Atom(ESymbol{f.g, {gw(f.h)}})}}),
                  expr_gen(f.alg, f.h));
    CHECK(r3 == t1 + t2);
}

TEST_CASE("evaluation vanishes above head weight one and on unit entries") {
    Fix f(Ring::Z);
    CHECK(eval_e(f.alg, {gw(f.g), gw(f.h)}, {gw(f.w)}).is_zero());
    CHECK(eval_e(f.alg, {Word{}}, {gw(f.w)}).is_zero());
    CHECK(eval_e(f.alg, {gw(f.g)}, {Word{}, gw(f.w)}).is_zero());
    // E([1], []) = 1: the unit entry rule only applies at positive weight
    CHECK(eval_e(f.alg, {Word{}}, {}) == expr_unit(f.alg));
}

TEST_CASE("nested E-symbol heads are rejected at level 3") {
    Fix f(Ring::Z2);
    Expr nested = expr_single(f.alg, Word{{Atom(ESymbol{f.g, {gw(f.h)}})}});
    CHECK_THROWS_AS(reduce_e_head(f.alg, nested, ts::FBar{gw(f.w)}), DomainError);
}

TEST_CASE("nested E-symbol heads brace-expand in unrestricted mode") {
    Fix f(Ring::Z2, EvalMode::Gerstenhaber);
    Expr nested = expr_single(f.alg, Word{{Atom(ESymbol{f.g, {gw(f.h)}})}});
    Expr r = reduce_e_head(f.alg, nested, ts::FBar{gw(f.w)});
    REQUIRE_FALSE(r.is_zero());
    // blocks before, around, and after the inner argument
    CHECK(r.size() == 3);
    for (const auto& [word, c] : r.terms()) {
        (void)c;
        CHECK(word_degree(word) == 2);
    }
}

TEST_CASE("unrestricted nested expansion requires mod-2 coefficients") {
    Fix f(Ring::Z, EvalMode::Gerstenhaber);
    Expr nested = expr_single(f.alg, Word{{Atom(ESymbol{f.g, {gw(f.h)}})}});
    CHECK_THROWS_AS(reduce_e_head(f.alg, nested, ts::FBar{gw(f.w)}), DomainError);
}

TEST_CASE("the differential squares to zero on random expressions") {
    for (Ring ring : {Ring::Z, Ring::Z2}) {
        GenStore store;
        FreeAlgebra alg(ring);
        Generator v = add_generator(store, alg, "v", 2, Side::L);
        Generator u = add_generator(store, alg, "u", 1, Side::L, expr_gen(alg, v));
        Generator t = add_generator(store, alg, "t", 3, Side::L);
        ts::RandomWords rw(20260819u, {u, v, t}, ring);
        for (int trial = 0; trial < 40; ++trial) {
            Expr e = rw.random_expr(3, 3);
            Expr dde = diff(alg, diff(alg, e));
            INFO("ring " << ring_name(ring) << " trial " << trial << " on "
                         << show_elem(alg, e));
            CHECK(dde.is_zero());
        }
    }
}

TEST_CASE("integer evaluation reduces to the mod-2 evaluation") {
    GenStore store;
    FreeAlgebra az(Ring::Z), a2(Ring::Z2);
    Generator v = add_generator(store, az, "v", 2, Side::L);
    Generator u = add_generator(store, az, "u", 1, Side::L, expr_gen(az, v));
    Generator t = add_generator(store, az, "t", 3, Side::L);
    ts::RandomWords rz(7u, {u, v, t}, Ring::Z);
    for (int trial = 0; trial < 30; ++trial) {
        Expr ez = rz.random_expr(2, 3);
        INFO("trial " << trial << " on " << show_elem(az, ez));
        CHECK(reduce_mod2(diff(az, ez)) == diff(a2, reduce_mod2(ez)));
    }
}
