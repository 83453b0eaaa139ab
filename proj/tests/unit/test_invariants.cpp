#include <doctest.h>

#include <random>

#include "cartan/invariants.hpp"
#include "fixtures.hpp"

using namespace testing;

namespace {

// Every multiset of at most d basis indices, filtered by weight, by brute force.
std::vector<PolyOnDual::Monomial> brute_weight_zero(const CartanAlgebra& L, int d) {
    std::vector<PolyOnDual::Monomial> all{{}};
    std::vector<PolyOnDual::Monomial> frontier{{}};
    for (int deg = 1; deg <= d; ++deg) {
        std::vector<PolyOnDual::Monomial> next;
        for (const auto& m : frontier)
            for (std::uint32_t k = m.empty() ? 0 : m.back(); k < L.dim(); ++k) {
                auto e = m;
                e.push_back(k);
                next.push_back(e);
            }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::vector<PolyOnDual::Monomial> out;
    for (auto& m : all)
        if (weight(L, m) == 0) out.push_back(m);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("action on polynomial functions") {
    const auto& L = algebra(Family::W, 1, 5);
    const auto& F = L.field();
    const auto id = certify(L, identity_matrix(L.dim())).value();
    PolyOnDual f = add(PolyOnDual::monomial(L.dim(), {0, 2}, 3), PolyOnDual::variable(L.dim(), 1), F);
    CHECK(act(L, id, f) == f);

    const auto e = exp_ad(L, unit_vector(3)).value();
    const auto c = PolyOnDual::constant(L.dim(), 4);
    CHECK(act(L, e, c) == c);

    for (std::uint32_t k = 0; k < L.dim(); ++k) {
        const int j = L.degree(k);
        const Residue t = 2;
        const Residue tj = j >= 0 ? F.pow(t, j) : F.pow(F.inv(t), -j);
        CHECK(act(L, torus_auto(L, t), PolyOnDual::variable(L.dim(), k)) == PolyOnDual::monomial(L.dim(), {k}, tj));
    }
}

TEST_CASE("action is (g.f)(chi) = f(g^{-1}.chi)") {
    const auto& L = algebra(Family::S, 2, 5);
    const auto& F = L.field();
    const auto gens = unipotent_g0_generators(L);
    std::mt19937_64 rng(21);
    for (int s = 0; s < 20; ++s) {
        PolyOnDual f(L.dim());
        for (int t = 0; t < 4; ++t) {
            PolyOnDual::Monomial m;
            for (int k = 0; k < 1 + s % 3; ++k) m.push_back(static_cast<std::uint32_t>(rng() % L.dim()));
            f = add(f, PolyOnDual::monomial(L.dim(), m, 1 + static_cast<Residue>(rng() % 4)), F);
        }
        const auto& g = gens[s % gens.size()];
        const Functional chi = random_functional(L, rng);
        CHECK(act(L, g, f).evaluate(chi, F) == f.evaluate(coadjoint_apply(L, inverse(g), chi), F));
    }
}

TEST_CASE("weight-zero monomials") {
    const auto& L = algebra(Family::W, 1, 5);
    const auto d0 = weight_zero_subspace(L, 0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].empty());

    const auto d2 = weight_zero_subspace(L, 2);
    auto has = [&](PolyOnDual::Monomial m) { return std::find(d2.begin(), d2.end(), m) != d2.end(); };
    // basis order is d, x d, x^2 d, x^3 d, x^4 d with degrees -1..3
    CHECK(has({0, 2}));
    CHECK(has({1, 1}));
    CHECK(has({1}));
    CHECK(has({}));
    for (const auto& m : d2) {
        bool all_positive = !m.empty();
        for (auto k : m) all_positive = all_positive && L.degree(k) > 0;
        CHECK_FALSE(all_positive);
    }
    for (const auto* A : {&algebra(Family::W, 1, 5), &algebra(Family::W, 1, 7), &algebra(Family::S, 2, 5)})
        for (int d = 0; d <= 3; ++d) CHECK(weight_zero_subspace(*A, d) == brute_weight_zero(*A, d));
    CHECK_THROWS_AS(weight_zero_subspace(algebra(Family::H, 4, 5), 4, 1000), std::length_error);
}

TEST_CASE("fixed space without generators is the whole weight-zero space") {
    const auto& L = algebra(Family::W, 1, 5);
    CHECK(fixed_space(L, 3, {}).size() == weight_zero_subspace(L, 3).size());
}

TEST_CASE("fixed space under the torus-normalized generator recipe") {
    struct Case {
        Family f;
        int n;
        std::uint32_t p;
        int d;
    };
    for (auto c : {Case{Family::W, 1, 5, 4}, Case{Family::W, 1, 7, 4}, Case{Family::S, 2, 5, 2}, Case{Family::K, 3, 5, 2}}) {
        const auto& L = algebra(c.f, c.n, c.p);
        CAPTURE(L.name());
        const auto gens = invariant_generators(L);
        for (const auto& g : gens.autos) CHECK(g.certified);
        const auto fixed = fixed_space(L, c.d, gens.autos);
        REQUIRE(fixed.size() == 1);
        CHECK(fixed[0].degree() == 0);
    }
}

TEST_CASE("a smaller group has more invariants") {
    // the unipotent G_0 part alone fixes c(x1 d1 + x2 d2)-type functions
    const auto& L = algebra(Family::W, 2, 5);
    const auto fixed = fixed_space(L, 2, unipotent_g0_generators(L));
    CHECK(fixed.size() > 1);
    const auto gens = invariant_generators(L);
    CHECK(fixed_space(L, 2, gens.autos).size() == 1);
}

TEST_CASE("uncertified generators are refused") {
    const auto& L = algebra(Family::W, 1, 5);
    LinearAuto bogus{identity_matrix(L.dim()), identity_matrix(L.dim()), false, 0, false, false};
    CHECK_THROWS_AS(fixed_space(L, 2, {bogus}), std::invalid_argument);
}
