#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace testing;

TEST_CASE("prime field arithmetic") {
    const PrimeField F5(5), F7(7);
    CHECK(F5.inv(2) == 3);
    CHECK(F5.add(4, 3) == 2);
    CHECK(F7.pow(2, 0) == 1);
    CHECK(F5.from_int(-1) == 4);
    CHECK(F5.centered(4) == -1);
    for (Residue a = 1; a < 7; ++a) CHECK(F7.mul(a, F7.inv(a)) == 1);
    CHECK_THROWS_AS(F5.inv(0), std::domain_error);
    CHECK_THROWS(PrimeField(9));
}

TEST_CASE("field elements reject small and mixed characteristic") {
    CHECK_THROWS(FieldElem(1, 3));
    const FieldElem a(3, 5), b(4, 7);
    CHECK_THROWS(a + b);
    CHECK((a * a.inverse()).value() == 1);
}

TEST_CASE("truncated multiplication") {
    const auto R1 = Ring::get(1, 5);
    CHECK((mono(R1, {4}) * x(R1, 0)).is_zero());
    const auto one = TruncPoly::constant(R1, 1);
    const auto sq = (one + x(R1, 0)) * (one + x(R1, 0));
    CHECK(sq == one + x(R1, 0).scale(2) + mono(R1, {2}));

    const auto R2 = Ring::get(2, 5);
    CHECK(x(R2, 0) * x(R2, 1) == mono(R2, {1, 1}));
}

TEST_CASE("multiplication agrees with a dense schoolbook product") {
    const std::uint32_t p = 5;
    const auto R = Ring::get(2, p);
    const PrimeField F(p);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int a[5][5] = {}, b[5][5] = {};
        TruncPoly f(R), g(R);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                a[i][j] = static_cast<int>(rng() % p);
                b[i][j] = static_cast<int>(rng() % p);
                f += mono(R, {i, j}, a[i][j]);
                g += mono(R, {i, j}, b[i][j]);
            }
        const TruncPoly h = f * g;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                long long s = 0;
                for (int i1 = 0; i1 <= i; ++i1)
                    for (int j1 = 0; j1 <= j; ++j1) s += a[i1][j1] * b[i - i1][j - j1];
                CHECK(h.coeff(MultiIndex({i, j})) == F.from_int(s));
            }
    }
}

TEST_CASE("partial derivatives") {
    const auto R = Ring::get(2, 5);
    CHECK(partial(mono(R, {2, 1}), 0) == mono(R, {1, 1}, 2));
    CHECK(partial(mono(R, {3, 0}), 1).is_zero());
    const auto R1 = Ring::get(1, 5);
    CHECK(partial(mono(R1, {4}), 0) == mono(R1, {3}, 4));
}

TEST_CASE("monomial degrees") {
    CHECK(degree(MultiIndex({0, 0, 1}), DegreeKind::Contact) == 0);
    CHECK(degree(MultiIndex::top(2, 5), DegreeKind::Standard) == 8);
    CHECK(degree(MultiIndex({1, 2}), DegreeKind::Alternate) == 5);
}

TEST_CASE("monomial enumeration") {
    CHECK(enumerate_monomials(1, 5).size() == 5);
    CHECK(enumerate_monomials(2, 5, [](const MultiIndex& a) { return a.total() < 8; }).size() == 24);
    const auto bottom =
        enumerate_monomials(3, 5, [](const MultiIndex& a) { return degree(a, DegreeKind::Contact) == -2; });
    REQUIRE(bottom.size() == 1);
    CHECK(bottom[0] == MultiIndex::zero(3));
}

TEST_CASE("enumeration is graded-lex ordered and complete") {
    const auto all = enumerate_monomials(3, 5);
    CHECK(all.size() == 125);
    for (std::size_t k = 1; k < all.size(); ++k) CHECK(graded_lex_less(all[k - 1], all[k]));
}
