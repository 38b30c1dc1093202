#include <catch2/catch_amalgamated.hpp>

#include "hirsch/core.hpp"
#include "hirsch/lincomb.hpp"

using namespace hirsch;

TEST_CASE("koszul sign of a transposition is the degree product parity") {
    CHECK(koszul_sign({1, 1}, {1, 0}) == -1);
    CHECK(koszul_sign({2, 3}, {1, 0}) == 1);
    CHECK(koszul_sign({0, 5}, {1, 0}) == 1);
    CHECK(koszul_sign({3, 3}, {1, 0}) == -1);
}

TEST_CASE("koszul sign of the identity is 1") {
    CHECK(koszul_sign({}, {}) == 1);
    CHECK(koszul_sign({1, 2, 3}, {0, 1, 2}) == 1);
}

TEST_CASE("koszul sign composes over odd cycles") {
    // rotate [a,b,c] -> [c,a,b]: inversions (c,a),(c,b)
    CHECK(koszul_sign({1, 1, 1}, {2, 0, 1}) == 1);
    CHECK(koszul_sign({1, 1, 2}, {2, 0, 1}) == 1);
    CHECK(koszul_sign({1, 2, 1}, {2, 0, 1}) == -1);
}

TEST_CASE("koszul sign rejects mismatched lengths") {
    CHECK_THROWS_AS(koszul_sign({1, 2}, {0}), DomainError);
}

TEST_CASE("checked arithmetic traps overflow") {
    CHECK(checked_add(2, 3) == 5);
    CHECK(checked_mul(-4, 5) == -20);
    Coeff big = std::numeric_limits<Coeff>::max();
    CHECK_THROWS_AS(checked_add(big, 1), ResourceError);
    CHECK_THROWS_AS(checked_mul(big, 2), ResourceError);
}

TEST_CASE("coefficient normalization depends on the ring") {
    CHECK(normalize_coeff(Ring::Z, -7) == -7);
    CHECK(normalize_coeff(Ring::Z2, -7) == 1);
    CHECK(normalize_coeff(Ring::Z2, 4) == 0);
}

TEST_CASE("linear combinations cancel and drop zeros") {
    LinComb<int> a(Ring::Z);
    a.add(1, 2);
    a.add(1, -2);
    a.add(2, 3);
    CHECK(a.terms().size() == 1);
    CHECK(a.coeff(2) == 3);
    CHECK(a.coeff(1) == 0);

    LinComb<int> b(Ring::Z2);
    b.add(7, 1);
    b.add(7, 1);
    CHECK(b.is_zero());
}

TEST_CASE("mod-2 reduction of an integer combination") {
    LinComb<int> a(Ring::Z);
    a.add(1, 2);
    a.add(2, -3);
    LinComb<int> r = reduce_mod2(a);
    CHECK(r.ring() == Ring::Z2);
    CHECK(r.coeff(1) == 0);
    CHECK(r.coeff(2) == 1);
}

TEST_CASE("term budget aborts runaway expansions") {
    BudgetScope scope(3);
    LinComb<int> a(Ring::Z);
    a.add(1, 1);
    a.add(2, 1);
    a.add(3, 1);
    CHECK_THROWS_AS(a.add(4, 1), ResourceError);
}
