#include <doctest.h>

#include "cartan/checks.hpp"
#include "fixtures.hpp"

using namespace testing;

namespace {

// Rank of all images of the spanning maps over the allowed monomials.
std::size_t rank_of_images(Family f, int n, std::uint32_t p) {
    const auto R = Ring::get(n, p);
    EchelonSpan span(R->field());
    for (const auto& lab : spanning_labels(f, n, p)) span.insert(lab.map(TruncPoly::monomial(R, lab.alpha)).ambient());
    return span.rank();
}

}  // namespace

TEST_CASE("dimensions against the closed forms and the rank of the spanning images") {
    struct Row {
        Family f;
        int n;
        std::uint32_t p;
        std::size_t dim;
    };
    for (auto r : {Row{Family::W, 1, 5, 5}, Row{Family::W, 1, 7, 7}, Row{Family::W, 2, 5, 50}, Row{Family::S, 2, 5, 23},
                   Row{Family::S, 3, 5, 248}, Row{Family::H, 4, 5, 623}, Row{Family::K, 3, 5, 125},
                   Row{Family::K, 3, 7, 343}}) {
        CAPTURE(to_string(r.f));
        CAPTURE(r.n);
        CAPTURE(r.p);
        CHECK(algebra(r.f, r.n, r.p).dim() == r.dim);
        CHECK(expected_dimension(r.f, r.n, r.p) == r.dim);
        CHECK(rank_of_images(r.f, r.n, r.p) == r.dim);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate_parameters(Family::W, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(validate_parameters(Family::H, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(validate_parameters(Family::K, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(validate_parameters(Family::S, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(validate_parameters(Family::W, 5, 7), std::invalid_argument);
    CHECK_NOTHROW(validate_parameters(Family::H, 4, 5));
    CHECK_THROWS_AS(validate_parameters(Family::H, 2, 5), std::invalid_argument);
    CHECK(parse_family("k") == Family::K);
    CHECK_THROWS_AS(parse_family("X"), std::invalid_argument);
}

TEST_CASE("p-map on basis vectors") {
    const auto& L = algebra(Family::W, 1, 5);
    const auto R = L.ring();
    const std::size_t d = index_of(L, vf(R, {0}, 0));
    const std::size_t e = index_of(L, vf(R, {1}, 0));
    const std::size_t sq = index_of(L, vf(R, {2}, 0));
    CHECK(L.pmap(d).empty());
    CHECK(L.pmap(e) == unit_vector(static_cast<std::uint32_t>(e)));
    CHECK(L.pmap(sq).empty());
}

TEST_CASE("standard grading of W(1)") {
    const auto& L = algebra(Family::W, 1, 5);
    std::vector<int> degs;
    for (std::size_t k = 0; k < L.dim(); ++k) degs.push_back(L.degree(k));
    CHECK(degs == std::vector<int>{-1, 0, 1, 2, 3});
    CHECK(L.max_degree() == 3);
}

TEST_CASE("negative parts") {
    const auto& K = algebra(Family::K, 3, 5);
    const auto bottom = K.graded_component(-2);
    REQUIRE(bottom.size() == 1);
    CHECK(K.basis(bottom[0]) == d_k(TruncPoly::constant(K.ring(), 1)));
    CHECK(K.graded_component(-1).size() == 2);

    for (const auto* L : {&algebra(Family::W, 2, 5), &algebra(Family::S, 3, 5), &algebra(Family::H, 4, 5)}) {
        const auto neg = L->negative_part();
        CHECK(neg.size() == static_cast<std::size_t>(L->nvars()));
        EchelonSpan span(L->field());
        for (auto k : neg) span.insert(L->basis(k).ambient());
        for (int i = 0; i < L->nvars(); ++i) CHECK(span.contains(CartanElement::partial_op(L->ring(), i).ambient()));
    }
}

TEST_CASE("derived algebra of S(2)") {
    const auto R = Ring::get(2, 5);
    std::vector<CartanElement> all;
    for (const auto& a : enumerate_monomials(2, 5)) all.push_back(d_ij(TruncPoly::monomial(R, a), 0, 1));
    CHECK(span_rank(all) == 24);
    const auto once = derived_subalgebra(all);
    CHECK(once.size() == 23);
    EchelonSpan span(R->field());
    for (const auto& u : once) span.insert(u.ambient());
    CHECK_FALSE(span.contains(d_ij(mono(R, {4, 4}), 0, 1).ambient()));
    CHECK(derived_subalgebra(once).size() == 23);
}

TEST_CASE("K(3) is perfect when p does not divide n + 3") {
    const auto& L = algebra(Family::K, 3, 5);
    std::vector<CartanElement> basis;
    for (std::size_t k = 0; k < L.dim(); ++k) basis.push_back(L.basis(k));
    CHECK(derived_subalgebra(basis).size() == 125);
}

TEST_CASE("table entries match the polynomial bracket") {
    for (const auto* L : {&algebra(Family::W, 2, 5), &algebra(Family::S, 2, 5), &algebra(Family::K, 3, 5)}) {
        for (std::size_t i = 0; i < L->dim(); i += 3)
            for (std::size_t j = 0; j < L->dim(); j += 5) {
                const auto want = L->require_coordinates(witt_bracket(L->basis(i), L->basis(j)));
                const auto got = L->bracket(i, j);
                CHECK(SparseVec(got.begin(), got.end()) == want);
            }
    }
}

TEST_CASE("intertwining of d_s with the associated maps") {
    const auto R = Ring::get(4, 5);
    for (const auto& a : enumerate_monomials(4, 5)) {
        const auto f = TruncPoly::monomial(R, a);
        CHECK(witt_bracket(CartanElement::partial_op(R, 0), d_h(f)) == d_h(partial(f, 0)));
    }
    const auto R2 = Ring::get(2, 5);
    const auto lhs = witt_bracket(CartanElement::partial_op(R2, 0), vf(R2, {2, 0}, 1));
    CHECK(lhs == vf(R2, {1, 0}, 1, 2));
    CHECK(lhs == d_i(partial(mono(R2, {2, 0}), 0), 1));
    CHECK(witt_bracket(CartanElement::partial_op(R2, 1), d_i(TruncPoly::constant(R2, 1), 0)).is_zero());
}

TEST_CASE("structure checks pass on the small algebras") {
    for (const auto* L : {&algebra(Family::W, 1, 5), &algebra(Family::W, 2, 5), &algebra(Family::S, 2, 5)}) {
        for (const auto& r : structure_suite(*L)) {
            CAPTURE(r.name);
            CAPTURE(r.detail);
            CHECK(r.passed);
        }
        CHECK(intertwine_check(*L).passed);
        CHECK(check_restricted(*L).passed);
    }
    CHECK_THROWS_AS(intertwine_check(algebra(Family::K, 3, 5)), std::invalid_argument);
}

TEST_CASE("contact identities: the unit bracket needs the factor 2") {
    const auto results = verify_contact_identities(algebra(Family::K, 3, 5));
    for (const auto& r : results) {
        CAPTURE(r.name);
        if (r.name == "contact_unit_printed") {
            CHECK_FALSE(r.passed);
            CHECK(r.failures == 100);
        } else {
            CHECK(r.passed);
        }
    }
    CHECK_THROWS(verify_contact_identities(algebra(Family::W, 1, 5)));
}
