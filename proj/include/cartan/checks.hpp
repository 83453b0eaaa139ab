#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartan/algebra.hpp"

namespace cartan {

/// Outcome of one verification sweep. Mismatches are data, not exceptions.
struct CheckResult {
    std::string name;
    /// The identity or property being checked, in words.
    std::string anchor;
    bool passed = true;
    std::size_t checked = 0;
    std::size_t failures = 0;
    /// First counterexample, or a short summary on success.
    std::string detail;
    double seconds = 0;

    void fail(std::string what) {
        if (failures++ == 0) detail = std::move(what);
        passed = false;
    }
};

/// Dimension against the closed-form table.
CheckResult check_dimension(const CartanAlgebra& L);
/// Table antisymmetry, and every table entry recomputed from the polynomial bracket.
CheckResult check_antisymmetry(const CartanAlgebra& L);
/// Jacobi identity on basis triples: all i<j<k when dim <= exhaustive_limit,
/// otherwise `samples` seeded random triples.
CheckResult check_jacobi(const CartanAlgebra& L, std::size_t samples = 100000, std::uint64_t seed = 1,
                         std::size_t exhaustive_limit = 130);
/// [L_i, L_j] ⊆ L_{i+j} for the standard and the alternate grading.
CheckResult check_gradings(const CartanAlgebra& L);
/// div = 0 on S, the Hamiltonian condition on H, D_K-image on K.
CheckResult check_membership(const CartanAlgebra& L);
/// Every associated map sends x^b to a vector homogeneous of alternate degree alt(b) + shift.
CheckResult check_map_degrees(const CartanAlgebra& L);
/// ad(u^[p]) = (ad u)^p for every basis vector when dim <= exhaustive_limit, else for `samples` random ones.
CheckResult check_restricted(const CartanAlgebra& L, std::size_t samples = 200, std::uint64_t seed = 1,
                             std::size_t exhaustive_limit = 130);
/// Negative part spanned by d_1..d_n (W, S, H) or D_K(1), D_K(x_i) (K).
CheckResult check_negative_part(const CartanAlgebra& L);

/// The closed forms for <1,x^a>, <x_i,x^a>, <x_n,x^a>, <x_ix_j,x^a> and
/// <x_ix_i',x^a> compared with the defining contact bracket on every monomial.
/// The unit-bracket identity is reported twice: as printed in the source
/// (a_n x^{a-e_n}) and with the factor Delta(1) = 2. Requires family K.
std::vector<CheckResult> verify_contact_identities(const CartanAlgebra& L);
/// [D_K(f), D_K(g)] = D_K(<f,g>) for all monomial pairs f, g. Requires family K.
CheckResult check_contact_commutation(const CartanAlgebra& L);
/// [d_s, D(f)] = D(d_s f) for every monomial f and associated map D. s is
/// 0-based; s < 0 checks every s. Throws std::invalid_argument on K.
CheckResult intertwine_check(const CartanAlgebra& L, int s = -1);

/// The structure suite: dimension, antisymmetry, Jacobi, gradings, membership,
/// map degrees and the negative part.
std::vector<CheckResult> structure_suite(const CartanAlgebra& L, std::uint64_t seed = 1);

}  // namespace cartan
