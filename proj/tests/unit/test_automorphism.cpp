#include <doctest.h>

#include "cartan/automorphism.hpp"
#include "fixtures.hpp"

using namespace testing;

namespace {

SparseVec coords(const CartanAlgebra& L, const CartanElement& u) { return L.require_coordinates(u); }

// f(phi_1, ..., phi_n) by expanding every monomial.
TruncPoly substitute(const TruncPoly& f, const std::vector<TruncPoly>& phi) {
    const auto& R = f.ring_ptr();
    TruncPoly out(R);
    for (const auto& [rank, c] : f.terms()) {
        const MultiIndex& a = R->monomial(rank);
        TruncPoly t = TruncPoly::constant(R, c);
        for (int i = 0; i < a.size(); ++i)
            for (int e = 0; e < a[i]; ++e) t = t * phi[i];
        out += t;
    }
    return out;
}

}  // namespace

TEST_CASE("identity and scalar maps") {
    const auto& L = algebra(Family::W, 1, 5);
    const auto id = certify(L, identity_matrix(L.dim()));
    REQUIRE(id.ok());
    CHECK(id.automorphism->filtration_depth == identity_depth(L));
    CHECK(id.automorphism->graded);

    SparseMatrix twice(L.dim());
    for (std::size_t k = 0; k < L.dim(); ++k) twice[k] = {{static_cast<std::uint32_t>(k), 2}};
    const auto bad = certify(L, twice);
    CHECK(bad.status == Certification::Status::BracketViolated);
    CHECK(bad.witness.has_value());
    CHECK_THROWS_AS(bad.value(), std::runtime_error);
}

TEST_CASE("torus elements") {
    const auto& L = algebra(Family::W, 1, 5);
    const auto& F = L.field();
    CHECK(is_identity(torus_auto(L, 1).forward));
    // t^i on L_i, and d has degree -1
    const auto t2 = torus_auto(L, 2);
    const std::size_t d = index_of(L, vf(L.ring(), {0}, 0));
    CHECK(t2.inverse[d] == SparseVec{{static_cast<std::uint32_t>(d), 2}});
    CHECK(t2.forward[d] == SparseVec{{static_cast<std::uint32_t>(d), 3}});
    CHECK(certify(L, t2.forward).ok());
    CHECK(t2.graded);
    for (Residue s = 1; s < 5; ++s)
        for (Residue t = 1; t < 5; ++t)
            CHECK(compose(L, torus_auto(L, s), torus_auto(L, t)).forward == torus_auto(L, F.mul(s, t)).forward);
    CHECK_THROWS_AS(torus_auto(L, 0), std::invalid_argument);
}

TEST_CASE("id + ad y for a square-zero y") {
    const auto& L = algebra(Family::W, 1, 7);
    const auto y = coords(L, vf(L.ring(), {5}, 0));
    const auto ad = ad_matrix(L, y);
    CHECK(compose(ad, ad, L.field()) == SparseMatrix(L.dim()));
    SparseMatrix g(L.dim());
    for (std::size_t k = 0; k < L.dim(); ++k) g[k] = axpy(unit_vector(static_cast<std::uint32_t>(k)), 1, ad[k], L.field());
    CHECK(certify(L, g).ok());
}

TEST_CASE("truncated exponential of x^3 d in W(1), p = 5") {
    const auto& L = algebra(Family::W, 1, 5);
    const auto R = L.ring();
    const auto E = vf(R, {3}, 0), d = vf(R, {0}, 0);
    const auto cert = exp_ad(L, coords(L, E));
    REQUIRE(cert.ok());
    CHECK(cert.automorphism->filtration_depth >= 2);
    const auto once = witt_bracket(E, d);
    const auto want = d + once + witt_bracket(E, once).scale(L.field().inv(2));
    CHECK(apply(L, *cert.automorphism, coords(L, d)) == coords(L, want));

    const auto toral = exp_ad(L, coords(L, vf(R, {1}, 0)));
    CHECK(toral.status == Certification::Status::NotNilpotent);
}

TEST_CASE("substitution automorphisms") {
    const auto& W2 = algebra(Family::W, 2, 5);
    const auto R2 = W2.ring();
    const auto id = substitution_auto_W(W2, {x(R2, 0), x(R2, 1)});
    REQUIRE(id.ok());
    CHECK(is_identity(id.automorphism->forward));

    const auto swap = substitution_auto_W(W2, {x(R2, 1), x(R2, 0)});
    REQUIRE(swap.ok());
    const auto d1 = coords(W2, CartanElement::partial_op(R2, 0)), d2 = coords(W2, CartanElement::partial_op(R2, 1));
    CHECK(apply(W2, *swap.automorphism, d1) == d2);
    CHECK(apply(W2, *swap.automorphism, d2) == d1);

    CHECK_THROWS_AS(substitution_auto_W(W2, {x(R2, 0), x(R2, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(substitution_auto_W(W2, {x(R2, 0) + TruncPoly::constant(R2, 1), x(R2, 1)}), std::invalid_argument);
}

TEST_CASE("x -> x + x^2 conjugates W(1) with a nontrivial G_1 part") {
    const auto& L = algebra(Family::W, 1, 5);
    const auto R = L.ring();
    const std::vector<TruncPoly> phi{x(R, 0) + mono(R, {2})};
    const auto cert = substitution_auto_W(L, phi);
    REQUIRE(cert.ok());
    const auto& g = *cert.automorphism;
    CHECK_FALSE(g.graded);
    CHECK(g.filtration_depth == 1);
    // theta D theta^{-1} applied to theta(f) is theta(D f), with theta(f) = f(phi)
    for (std::size_t k = 0; k < L.dim(); ++k) {
        const auto gD = L.element(g.forward[k]);
        for (int e = 0; e < 5; ++e) {
            const auto f = mono(R, {e});
            CHECK(gD.apply(substitute(f, phi)) == substitute(L.basis(k).apply(f), phi));
        }
    }
}

TEST_CASE("exp(ad x1 d2) in W(2), p = 5 is not an automorphism") {
    const auto& L = algebra(Family::W, 2, 5);
    const auto R = L.ring();
    const auto cert = exp_ad(L, coords(L, vf(R, {1, 0}, 1)));
    REQUIRE(cert.status == Certification::Status::BracketViolated);
    REQUIRE(cert.witness.has_value());
    const auto [i, j] = *cert.witness;
    // the failing pair: d1 against x2^4 d1, where binom(5,4) = 0 drops a term
    CHECK(L.basis(i) == CartanElement::partial_op(R, 0));
    CHECK(L.basis(j) == vf(R, {0, 4}, 0));
    // conjugation by the substitution exp(x1 d2) is an automorphism
    const auto sub = substitution_auto_W(L, exponential_substitution(vf(R, {1, 0}, 1)));
    CHECK(sub.ok());
}

TEST_CASE("exp(ad D_H(x1^2)) in H(4), p = 5") {
    const auto& L = algebra(Family::H, 4, 5);
    const auto cert = exp_ad(L, coords(L, d_h(mono(L.ring(), {2, 0, 0, 0}))));
    CHECK(cert.ok());
}

TEST_CASE("unipotent G_0 generators certify") {
    CHECK(unipotent_g0_elements(algebra(Family::W, 1, 5)).empty());
    for (const auto* L : {&algebra(Family::W, 2, 5), &algebra(Family::S, 2, 5), &algebra(Family::S, 3, 5),
                          &algebra(Family::H, 4, 5), &algebra(Family::K, 3, 5)}) {
        const auto gens = unipotent_g0_generators(*L);
        CHECK_FALSE(gens.empty());
        for (const auto& g : gens) {
            CHECK(g.certified);
            CHECK(g.preserves_filtration);
            CHECK(certify(*L, g.forward).ok());
        }
    }
}

TEST_CASE("a corrupted automorphism is rejected with a witness pair") {
    const auto& L = algebra(Family::S, 2, 5);
    SparseMatrix m = torus_auto(L, 2).forward;
    const std::size_t k = L.graded_component(1).front();
    m[k] = scaled(m[k], 3, L.field());
    const auto cert = certify(L, m);
    CHECK(cert.status == Certification::Status::BracketViolated);
    REQUIRE(cert.witness.has_value());
    const auto [i, j] = *cert.witness;
    const auto lhs = apply(m, L.bracket(unit_vector(static_cast<std::uint32_t>(i)), unit_vector(static_cast<std::uint32_t>(j))), L.field());
    const auto rhs = L.bracket(m[i], m[j]);
    CHECK(lhs != rhs);
}

TEST_CASE("composition and inverse") {
    const auto& L = algebra(Family::K, 3, 5);
    const auto gens = unipotent_g0_generators(L);
    REQUIRE(gens.size() >= 2);
    const auto gh = compose(L, gens[0], gens[1]);
    CHECK(gh.certified);
    CHECK(is_identity(compose(gh.forward, inverse(gh).forward, L.field())));
}
