#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cartan/coadjoint.hpp"

namespace cartan {

/// Polynomial in the coordinate functions c_k(chi) = chi(b_k) on L*. A
/// monomial is the sorted list of its variable indices (with repetition).
class PolyOnDual {
public:
    using Monomial = std::vector<std::uint32_t>;
    using Terms = std::map<Monomial, Residue>;

    PolyOnDual() = default;
    explicit PolyOnDual(std::size_t nvars) : nvars_(nvars) {}
    static PolyOnDual constant(std::size_t nvars, Residue c);
    static PolyOnDual variable(std::size_t nvars, std::uint32_t k);
    static PolyOnDual monomial(std::size_t nvars, Monomial m, Residue c = 1);

    std::size_t nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Residue coeff(const Monomial& m) const;
    void add_term(const Monomial& m, Residue c, const PrimeField& F);
    /// Total degree; kMinusInfinity for zero.
    int degree() const;
    Residue evaluate(const Functional& chi, const PrimeField& F) const;

    bool operator==(const PolyOnDual&) const = default;

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

PolyOnDual add(const PolyOnDual& a, const PolyOnDual& b, const PrimeField& F);
PolyOnDual multiply(const PolyOnDual& a, const PolyOnDual& b, const PrimeField& F);
PolyOnDual scale(const PolyOnDual& a, Residue c, const PrimeField& F);
std::string to_string(const CartanAlgebra& L, const PolyOnDual& f);

/// Weight of a monomial: sum of the degrees of its basis vectors.
int weight(const CartanAlgebra& L, const PolyOnDual::Monomial& m);

/// (g.f)(chi) = f(g^{-1}.chi): c_k is replaced by the linear form sum_j g_jk c_j.
PolyOnDual act(const CartanAlgebra& L, const LinearAuto& g, const PolyOnDual& f);

/// All monomials of total degree <= d and weight 0, in increasing order.
/// Throws std::length_error when more than `cap` monomials would be produced.
std::vector<PolyOnDual::Monomial> weight_zero_subspace(const CartanAlgebra& L, int d, std::size_t cap = 50000);

/// Basis of {f of degree <= d and weight 0 : g.f = f for every generator}.
/// Throws std::invalid_argument when a generator is uncertified.
std::vector<PolyOnDual> fixed_space(const CartanAlgebra& L, int d, const std::vector<LinearAuto>& generators);

struct GeneratorSet {
    std::vector<LinearAuto> autos;
    std::size_t g0 = 0, degree1 = 0, degree2 = 0, flattener = 0;
    /// Candidates whose exponential did not certify (skipped).
    std::size_t rejected = 0;
};

/// The documented recipe: unipotent G_0 generators, certified exp(ad E) for E
/// in the bases of L_1 and L_2, and id + ad Y_i for the flattener elements
/// Y_i = D(x^{tau-e_i}) when their span certificate holds.
GeneratorSet invariant_generators(const CartanAlgebra& L);

}  // namespace cartan
