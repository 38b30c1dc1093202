#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace hirsch;
using ts::FBar;
using ts::gw;

namespace {

struct Fix {
    GenStore store;
    FreeAlgebra alg;
    Generator g, h, v, u;

    explicit Fix(Ring ring) : alg(ring) {
        g = add_generator(store, alg, "g", 1, Side::L);
        h = add_generator(store, alg, "h", 1, Side::L);
        v = add_generator(store, alg, "v", 2, Side::L);
        u = add_generator(store, alg, "u", 1, Side::L, expr_gen(alg, v));
    }
};

}  // namespace

TEST_CASE("bar degree desuspends every entry") {
    Fix f(Ring::Z);
    CHECK(bar_degree(f.alg, FBar{}) == 0);
    CHECK(bar_degree(f.alg, FBar{gw(f.g)}) == 0);
    CHECK(bar_degree(f.alg, FBar{gw(f.v), gw(f.v)}) == 2);
}

TEST_CASE("deconcat2 enumerates all ordered splittings") {
    Fix f(Ring::Z);
    FBar b{gw(f.g), gw(f.h), gw(f.v)};
    auto splits = deconcat2<FreeAlgebra>(b);
    REQUIRE(splits.size() == 4);
    CHECK(splits.front().first.empty());
    CHECK(splits.back().second.empty());
    auto triples = deconcat<FreeAlgebra>(b, 3);
    // weak compositions of 3 into 3 parts
    CHECK(triples.size() == 10);
}

TEST_CASE("merging two degree-1 entries carries the desuspension sign") {
    Fix f(Ring::Z);
    // d([g|h]) = (-1)^{|g|-1} [gh]
    BarElem<FreeAlgebra> d = bar_differential(f.alg, FBar{gw(f.g), gw(f.h)});
    REQUIRE(d.size() == 1);
    CHECK(d.coeff(FBar{concat_words(gw(f.g), gw(f.h))}) == 1);

    BarElem<FreeAlgebra> d2 = bar_differential(f.alg, FBar{gw(f.v), gw(f.h)});
    CHECK(d2.coeff(FBar{concat_words(gw(f.v), gw(f.h))}) == -1);
}

TEST_CASE("entry differentials enter desuspended") {
    Fix f(Ring::Z);
    // d([u]) = -[du] = -[v]
    BarElem<FreeAlgebra> d = bar_differential(f.alg, FBar{gw(f.u)});
    REQUIRE(d.size() == 1);
    CHECK(d.coeff(FBar{gw(f.v)}) == -1);

    // d([v|u]) = (-1)^{|v|-1}(-[v|du]) + (-1)^{|v|-1} [vu] = [v|v] - [vu]
    BarElem<FreeAlgebra> d2 = bar_differential(f.alg, FBar{gw(f.v), gw(f.u)});
    CHECK(d2.coeff(FBar{gw(f.v), gw(f.v)}) == 1);
    CHECK(d2.coeff(FBar{concat_words(gw(f.v), gw(f.u))}) == -1);
}

TEST_CASE("the bar differential squares to zero") {
    for (Ring ring : {Ring::Z, Ring::Z2}) {
        Fix f(ring);
        ts::RandomWords rw(42u, {f.g, f.h, f.v, f.u}, ring);
        for (int trial = 0; trial < 30; ++trial) {
            FBar b = rw.random_bar(4, 2);
            BarElem<FreeAlgebra> dd =
                bar_differential(f.alg, bar_differential(f.alg, b));
            INFO("ring " << ring_name(ring) << " on " << show(f.alg, b));
            CHECK(dd.is_zero());
        }
    }
}

TEST_CASE("alpha projects to bar length one") {
    Fix f(Ring::Z);
    CHECK(alpha(f.alg, FBar{}).is_zero());
    CHECK(alpha(f.alg, FBar{gw(f.g)}) == expr_gen(f.alg, f.g));
    CHECK(alpha(f.alg, FBar{gw(f.g), gw(f.h)}).is_zero());
}

TEST_CASE("alpha is a twisting cochain on the bar construction") {
    // d(alpha(b)) + alpha(d b) + sum alpha(b1) alpha(b2) = 0 with the cup sign
    for (Ring ring : {Ring::Z, Ring::Z2}) {
        Fix f(ring);
        ts::RandomWords rw(11u, {f.g, f.h, f.v, f.u}, ring);
        for (int trial = 0; trial < 30; ++trial) {
            FBar b = rw.random_bar(3, 2);
            Expr r = diff(f.alg, alpha(f.alg, b)) + alpha(f.alg, bar_differential(f.alg, b));
            for (const auto& [b1, b2] : deconcat2<FreeAlgebra>(b)) {
                if (b1.empty() || b2.empty()) continue;
                Coeff s = sign_pow(bar_degree(f.alg, b1) + 1);
                r.axpy(s, mul(f.alg, alpha(f.alg, b1), alpha(f.alg, b2)));
            }
            INFO("ring " << ring_name(ring) << " on " << show(f.alg, b));
            CHECK(r.is_zero());
        }
    }
}

TEST_CASE("two-sided boundary of 1(x)[g](x)1 peels to both ends") {
    Fix f(Ring::Z);
    TwoSidedWord<FreeAlgebra> t{Word{}, FBar{gw(f.g)}, Word{}};
    TwoSidedElem<FreeAlgebra> d = two_sided_differential(f.alg, t);
    REQUIRE(d.size() == 2);
    CHECK(d.coeff({gw(f.g), FBar{}, Word{}}) == 1);
    CHECK(d.coeff({Word{}, FBar{}, gw(f.g)}) == -1);
}

TEST_CASE("the two-sided differential squares to zero") {
    for (Ring ring : {Ring::Z, Ring::Z2}) {
        Fix f(ring);
        ts::RandomWords rw(99u, {f.g, f.h, f.v, f.u}, ring);
        for (int trial = 0; trial < 25; ++trial) {
            TwoSidedWord<FreeAlgebra> t{rw.random_word(0, 2), rw.random_bar(3, 1),
                                        rw.random_word(0, 2)};
            TwoSidedElem<FreeAlgebra> dd =
                two_sided_differential(f.alg, two_sided_differential(f.alg, t));
            INFO("ring " << ring_name(ring));
            CHECK(dd.is_zero());
        }
    }
}

TEST_CASE("the two-sided counit is a chain map to the algebra") {
    for (Ring ring : {Ring::Z, Ring::Z2}) {
        Fix f(ring);
        ts::RandomWords rw(5u, {f.g, f.h, f.v, f.u}, ring);
        for (int trial = 0; trial < 25; ++trial) {
            TwoSidedWord<FreeAlgebra> t{rw.random_word(0, 2), rw.random_bar(2, 1),
                                        rw.random_word(0, 2)};
            TwoSidedElem<FreeAlgebra> single(ring);
            single.add(t, 1);
            Expr lhs = two_sided_counit(f.alg, two_sided_differential(f.alg, t));
            Expr rhs = diff(f.alg, two_sided_counit(f.alg, single));
            INFO("ring " << ring_name(ring));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("expand_entries multiplies out per-slot elements") {
    Fix f(Ring::Z);
    std::vector<Expr> entries{expr_gen(f.alg, f.g) + expr_gen(f.alg, f.h),
                              expr_gen(f.alg, f.v).scaled(2)};
    BarElem<FreeAlgebra> e = expand_entries(f.alg, entries);
    REQUIRE(e.size() == 2);
    CHECK(e.coeff(FBar{gw(f.g), gw(f.v)}) == 2);
    CHECK(e.coeff(FBar{gw(f.h), gw(f.v)}) == 2);
}
