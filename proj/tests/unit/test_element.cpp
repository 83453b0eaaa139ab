#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace testing;

namespace {

// [u,v] as derivations: the i-th coefficient is u(v_i) - v(u_i).
CartanElement operator_bracket(const CartanElement& u, const CartanElement& v) {
    std::vector<TruncPoly> c;
    for (int i = 0; i < u.nvars(); ++i) c.push_back(u.apply(v.coeff(i)) - v.apply(u.coeff(i)));
    return CartanElement(u.ring_ptr(), std::move(c));
}

CartanElement random_element(const RingPtr& R, std::mt19937_64& rng, int terms) {
    CartanElement u(R);
    const auto p = R->characteristic();
    for (int t = 0; t < terms; ++t) {
        std::vector<int> a(R->nvars());
        for (auto& e : a) e = static_cast<int>(rng() % p);
        u = u + vf(R, a, static_cast<int>(rng() % R->nvars()), 1 + static_cast<Residue>(rng() % (p - 1)));
    }
    return u;
}

// u^p applied to each x_i, by composing the operator p times.
CartanElement operator_power(const CartanElement& u) {
    std::vector<TruncPoly> c;
    for (int i = 0; i < u.nvars(); ++i) {
        TruncPoly f = x(u.ring_ptr(), i);
        for (std::uint32_t k = 0; k < u.ring().characteristic(); ++k) f = u.apply(f);
        c.push_back(f);
    }
    return CartanElement(u.ring_ptr(), std::move(c));
}

}  // namespace

TEST_CASE("Witt bracket on monomial vector fields") {
    const auto R = Ring::get(2, 5);
    const auto lhs = witt_bracket(vf(R, {1, 0}, 1), vf(R, {0, 1}, 0));
    CHECK(lhs == vf(R, {1, 0}, 0) - vf(R, {0, 1}, 1));
    CHECK(witt_bracket(vf(R, {0, 0}, 0), vf(R, {1, 0}, 0)) == vf(R, {0, 0}, 0));
    const auto u = vf(R, {2, 3}, 1) + vf(R, {1, 0}, 0, 3);
    CHECK(witt_bracket(u, u).is_zero());
}

TEST_CASE("Witt bracket equals the commutator of derivations") {
    std::mt19937_64 rng(11);
    for (auto [n, p] : {std::pair{1, 5u}, {2, 5u}, {3, 5u}, {2, 7u}}) {
        const auto R = Ring::get(n, p);
        for (int trial = 0; trial < 40; ++trial) {
            const auto u = random_element(R, rng, 4), v = random_element(R, rng, 4);
            CHECK(witt_bracket(u, v) == operator_bracket(u, v));
            CHECK(witt_bracket(u, v) == -witt_bracket(v, u));
        }
    }
}

TEST_CASE("divergence") {
    const auto R = Ring::get(2, 5);
    CHECK(divergence(vf(R, {1, 0}, 0) + vf(R, {0, 1}, 1)) == TruncPoly::constant(R, 2));
    CHECK(divergence(vf(R, {0, 1}, 0)).is_zero());
    CHECK(divergence(vf(R, {2, 0}, 0)) == mono(R, {1, 0}, 2));
}

TEST_CASE("special map D_ij") {
    const auto R = Ring::get(2, 5);
    CHECK(d_ij(mono(R, {1, 1}), 0, 1) == vf(R, {1, 0}, 0) - vf(R, {0, 1}, 1));
    CHECK(d_ij(TruncPoly::constant(R, 1), 0, 1).is_zero());
    CHECK(divergence(d_ij(mono(R, {2, 3}), 0, 1)).is_zero());
    const auto R3 = Ring::get(3, 5);
    for (const auto& a : enumerate_monomials(3, 5))
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) CHECK(divergence(d_ij(TruncPoly::monomial(R3, a), i, j)).is_zero());
}

TEST_CASE("Hamiltonian map D_H") {
    const auto R = Ring::get(2, 5);
    CHECK(d_h(mono(R, {1, 1})) == vf(R, {0, 1}, 1) - vf(R, {1, 0}, 0));
    CHECK(d_h(TruncPoly::constant(R, 3)).is_zero());

    // s(i) d_j(f_i) = s(j') d_i'(f_j') for every i, j
    const auto R4 = Ring::get(4, 5);
    const PrimeField F(5);
    for (const auto& f : {mono(R4, {2, 0, 0, 0}), mono(R4, {1, 2, 0, 3}), mono(R4, {4, 4, 4, 3})}) {
        const auto u = d_h(f);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const auto lhs = partial(u.coeff(i), j).scale(F.from_int(sigma(i, 2)));
                const auto rhs = partial(u.coeff(partner(j, 2)), partner(i, 2)).scale(F.from_int(sigma(partner(j, 2), 2)));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("contact map D_K") {
    const auto R = Ring::get(3, 5);
    CHECK(d_k(TruncPoly::constant(R, 1)) == vf(R, {0, 0, 0}, 2, 2));
    const auto u = d_k(x(R, 2));
    CHECK(u.coeff(2) == x(R, 2).scale(2));
    CHECK(u.coeff(0) == x(R, 0));
    CHECK(u.coeff(1) == x(R, 1));

    EchelonSpan span(R->field());
    for (const auto& a : enumerate_monomials(3, 5)) span.insert(d_k(TruncPoly::monomial(R, a)).ambient());
    CHECK(span.rank() == 125);
}

TEST_CASE("contact bracket closed forms") {
    const auto R = Ring::get(3, 5);
    const PrimeField F(5);
    const auto one = TruncPoly::constant(R, 1);
    for (const auto& a : enumerate_monomials(3, 5)) {
        const auto f = TruncPoly::monomial(R, a);
        // the unit bracket carries the factor Delta(1) = 2
        TruncPoly unit(R);
        if (a[2] > 0) unit = TruncPoly::monomial(R, a - MultiIndex::unit(3, 2), F.from_int(2 * a[2]));
        CHECK(contact_bracket(one, f) == unit);
        CHECK(contact_bracket(x(R, 0) * x(R, 1), f) == f.scale(F.from_int(a[1] - a[0])));
    }
    CHECK(contact_bracket(x(R, 2), x(R, 0)) == -x(R, 0));
}

TEST_CASE("D_K is a homomorphism for the contact bracket") {
    const auto R = Ring::get(3, 5);
    std::mt19937_64 rng(3);
    const auto all = enumerate_monomials(3, 5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto f = TruncPoly::monomial(R, all[rng() % all.size()]);
        const auto g = TruncPoly::monomial(R, all[rng() % all.size()]);
        CHECK(witt_bracket(d_k(f), d_k(g)) == d_k(contact_bracket(f, g)));
    }
}

TEST_CASE("p-th powers of derivations") {
    const auto R1 = Ring::get(1, 5);
    CHECK(p_power(vf(R1, {0}, 0)).is_zero());
    CHECK(p_power(vf(R1, {1}, 0)) == vf(R1, {1}, 0));
    CHECK(p_power(vf(R1, {2}, 0)).is_zero());
    std::mt19937_64 rng(5);
    for (auto [n, p] : {std::pair{1, 7u}, {2, 5u}}) {
        const auto R = Ring::get(n, p);
        for (int trial = 0; trial < 20; ++trial) {
            const auto u = random_element(R, rng, 3);
            CHECK(p_power(u) == operator_power(u));
        }
    }
}

TEST_CASE("element degrees") {
    const auto R = Ring::get(2, 5);
    CHECK(vf(R, {2, 1}, 0).degree(DegreeKind::Standard) == 2);
    CHECK(vf(R, {2, 1}, 1).degree(DegreeKind::Alternate) == 2 + 2 - 2);
    CHECK((vf(R, {1, 0}, 0) + vf(R, {2, 0}, 0)).degree(DegreeKind::Standard) == 1);
    CHECK_FALSE((vf(R, {1, 0}, 0) + vf(R, {2, 0}, 0)).homogeneous(DegreeKind::Standard, 1));
}
