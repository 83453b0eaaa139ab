#pragma once

#include <map>
#include <tuple>

#include "cartan/algebra.hpp"

namespace testing {

using namespace cartan;

/// Algebras are expensive to build; every test file shares one instance per parameter set.
inline const CartanAlgebra& algebra(Family f, int n, std::uint32_t p) {
    static std::map<std::tuple<Family, int, std::uint32_t>, CartanAlgebra> cache;
    auto key = std::make_tuple(f, n, p);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_algebra(f, n, p)).first;
    return it->second;
}

inline TruncPoly x(const RingPtr& R, int i) { return TruncPoly::variable(R, i); }

inline TruncPoly mono(const RingPtr& R, std::vector<int> a, Residue c = 1) {
    return TruncPoly::monomial(R, MultiIndex(std::move(a)), c);
}

inline CartanElement vf(const RingPtr& R, std::vector<int> a, int j, Residue c = 1) {
    return CartanElement::monomial(R, MultiIndex(std::move(a)), j, c);
}

/// Basis index of an element that must be a basis vector up to scale.
inline std::size_t index_of(const CartanAlgebra& L, const CartanElement& u) {
    const auto c = L.require_coordinates(u);
    if (c.size() != 1) throw std::logic_error("not a multiple of a basis vector");
    return c[0].first;
}

}  // namespace testing
