#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cartan/algebra.hpp"

namespace cartan {

/// Linear map on L stored column by column: column k is the image of basis vector k.
using SparseMatrix = std::vector<SparseVec>;

SparseMatrix identity_matrix(std::size_t dim);
/// a∘b
SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& F);
SparseVec apply(const SparseMatrix& m, const SparseVec& v, const PrimeField& F);
bool is_identity(const SparseMatrix& m);
/// Matrix of ad y.
SparseMatrix ad_matrix(const CartanAlgebra& L, const SparseVec& y);

/// An invertible linear self-map of L together with what is known about it.
struct LinearAuto {
    SparseMatrix forward;
    SparseMatrix inverse;
    /// Bracket preservation verified on every basis pair.
    bool certified = false;
    /// Largest r with g(x) - x in L_{>= r+i} for x in L_i; identity_depth(L) for the identity.
    int filtration_depth = 0;
    /// g(L_i) = L_i for all i.
    bool graded = false;
    /// g(L_{>=i}) = L_{>=i} for all i.
    bool preserves_filtration = false;
};

/// Depth reported for the identity map (it lies in every G_r).
int identity_depth(const CartanAlgebra& L);

struct Certification {
    enum class Status { Certified, NotSquare, NotInvertible, NotNilpotent, LeavesAlgebra, BracketViolated };

    Status status = Status::NotSquare;
    std::optional<LinearAuto> automorphism;
    /// Basis pair (i, j) with g[b_i, b_j] != [g b_i, g b_j].
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::string message;

    bool ok() const noexcept { return status == Status::Certified; }
    /// The automorphism; throws std::runtime_error with the message on failure.
    const LinearAuto& value() const;
};

std::string to_string(Certification::Status s);

/// Certifies m as an automorphism: invertible (checked against the hint when
/// given) and bracket preserving on all basis pairs. Also computes the
/// filtration data.
Certification certify(const CartanAlgebra& L, SparseMatrix m, std::optional<SparseMatrix> inverse_hint = {});

/// Recomputes filtration depth, gradedness and filtration preservation.
void analyze_filtration(const CartanAlgebra& L, LinearAuto& g);

/// t^i on L_i; t must be nonzero.
LinearAuto torus_auto(const CartanAlgebra& L, Residue t);

/// Truncated exponential sum_{k<p} (ad y)^k / k!, returned only when (ad y)^p = 0
/// and the result certifies.
Certification exp_ad(const CartanAlgebra& L, const SparseVec& y);

/// g∘h; certified when both are.
LinearAuto compose(const CartanAlgebra& L, const LinearAuto& g, const LinearAuto& h);
LinearAuto inverse(const LinearAuto& g);
SparseVec apply(const CartanAlgebra& L, const LinearAuto& g, const SparseVec& v);

/// Conjugation D -> theta D theta^{-1} by the algebra automorphism theta:
/// x_i -> phi_i of A(n). Each phi_i needs a zero constant term and the linear
/// parts must form an invertible matrix (std::invalid_argument otherwise).
/// Reports LeavesAlgebra when the conjugate of a basis vector is not in L.
Certification substitution_auto(const CartanAlgebra& L, const std::vector<TruncPoly>& phi);
/// substitution_auto restricted to W(n), where every admissible phi gives an automorphism.
Certification substitution_auto_W(const CartanAlgebra& L, const std::vector<TruncPoly>& phi);
/// phi_k = sum_{t<p} y^t(x_k) / t!, the substitution exp(y) for an element y of
/// W(n) acting nilpotently on A(n) (std::invalid_argument otherwise).
std::vector<TruncPoly> exponential_substitution(const CartanElement& y);
/// Substitution tuple of the composite algebra map (x_i -> phi_i) after
/// (x_i -> psi_i): component i is psi_i(phi_1, ..., phi_n). Conjugation by it
/// equals substitution_auto_W(phi) ∘ substitution_auto_W(psi).
std::vector<TruncPoly> compose_substitutions(const std::vector<TruncPoly>& phi, const std::vector<TruncPoly>& psi);

/// Degree-zero elements with nilpotent adjoint action used as G_0 generators:
/// x_i d_j (i != j) for W and S, D_H(x_i x_j) and D_K(x_i x_j) with j != i'.
std::vector<SparseVec> unipotent_g0_elements(const CartanAlgebra& L);
/// One automorphism per unipotent_g0_elements entry: exp(ad y) when it
/// certifies, otherwise conjugation by the substitution exp(y).
std::vector<LinearAuto> unipotent_g0_generators(const CartanAlgebra& L);

}  // namespace cartan
