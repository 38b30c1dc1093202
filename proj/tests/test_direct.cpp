#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "hirsch/direct.hpp"
#include "tensor_support.hpp"

using namespace hirsch;
using ts::TA;
using ts::TB;
using ts::TElem;
using ts::TFix;
using ts::TGen;
using ts::TMono;
using ts::esym;
using ts::gw;
using ts::tbar;

namespace {

/* One fixture instance per shape: k tensor letters then l tensor letters,
 * all distinct generators. */
struct Shape {
    TFix f;
    std::vector<TGen> g;
    TB a, b;

    Shape(Ring ring, std::size_t k, std::size_t l,
          std::vector<std::pair<int, int>> degs = {})
        : f(ring) {
        if (degs.empty()) degs.assign(k + l, {1, 1});
        g = f.tgens(degs, "d");
        a = tbar(g, 0, k);
        b = tbar(g, k, l);
    }
};

}  // namespace

TEST_CASE("compositions enumerate ordered splittings") {
    CHECK(compositions(0, 0).size() == 1);
    CHECK(compositions(2, 0).empty());
    CHECK(compositions(0, 3).size() == 1);
    CHECK(compositions(4, 2).size() == 5);
    CHECK(compositions(4, 6).size() == 126);  // C(9, 5)
}

TEST_CASE("cut scheme counts reproduce the small tables") {
    CHECK(cut_schemes(1, 1).size() == 2);
    CHECK(cut_schemes(1, 2).size() == 3);
    CHECK(cut_schemes(2, 1).size() == 1);
    CHECK(cut_schemes(2, 2).size() == 5);
    CHECK(cut_schemes(2, 5).size() == 70);
    CHECK(cut_schemes(2, 0).empty());  // block 3 cannot be filled
    CHECK_THROWS_AS(cut_schemes(0, 2), DomainError);
}

TEST_CASE("direct terms reproduce the two-term single-single value") {
    Shape s(Ring::Z, 1, 1);
    auto terms = direct_terms(s.f.th, s.a, s.b);
    REQUIRE(terms.size() == 2);
    TElem sum(Ring::Z);
    for (const auto& t : terms) sum.add(t.word, t.sign);
    CHECK(sum == e_tensor(s.f.th, s.a, s.b));
}

TEST_CASE("the worked two-by-five cut appears among the seventy terms") {
    Shape s(Ring::Z2, 2, 5);
    auto terms = direct_terms(s.f.th, s.a, s.b);
    CHECK(terms.size() == 70);

    const auto& g = s.g;
    Word left = concat_words(
        concat_words(esym(g[0].l, {gw(g[2].l)}), concat_words(gw(g[3].l), gw(g[4].l))),
        esym(g[1].l, {gw(g[5].l), gw(g[6].l)}));
    Word right = concat_words(
        concat_words(gw(g[2].r),
                     esym(g[0].r, {gw(g[3].r), gw(g[4].r),
                                   concat_words(gw(g[5].r), gw(g[6].r))})),
        gw(g[1].r));
    TMono expected{left, right};

    bool found = false;
    for (const auto& t : terms) found = found || t.word == expected;
    CHECK(found);
}

TEST_CASE("cut enumeration matches the recursion term for term") {
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t l = 0; k + l <= 7; ++l) {
            Shape s(Ring::Z2, k, l);
            auto terms = direct_terms(s.f.th, s.a, s.b);
            std::set<TMono> seen;
            TElem sum(Ring::Z2);
            for (const auto& t : terms) {
                CHECK(seen.insert(t.word).second);  // all words distinct
                sum.add(t.word, t.sign);
            }
            INFO("shape (" << k << ", " << l << ")");
            CHECK(sum == e_tensor(s.f.th, s.a, s.b));
        }
}

TEST_CASE("assigned signs rebuild the integral value") {
    for (auto [k, l] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 2}}) {
        std::vector<std::pair<int, int>> degs;
        const std::vector<std::pair<int, int>> alphabet{{1, 2}, {2, 1}, {1, 1}};
        for (std::size_t i = 0; i < k + l; ++i) degs.push_back(alphabet[i % 3]);
        Shape s(Ring::Z, k, l, degs);
        TElem sum(Ring::Z);
        for (const auto& t : direct_terms(s.f.th, s.a, s.b)) sum.add(t.word, t.sign);
        INFO("shape (" << k << ", " << l << ")");
        CHECK(sum == e_tensor(s.f.th, s.a, s.b));
    }
}

TEST_CASE("degenerate inputs are rejected or empty") {
    Shape s(Ring::Z2, 2, 0);
    CHECK(direct_terms(s.f.th, s.a, s.b).empty());
    CHECK(e_tensor(s.f.th, s.a, s.b).is_zero());
    CHECK_THROWS_AS(direct_terms(s.f.th, TB{}, s.b), DomainError);
}
