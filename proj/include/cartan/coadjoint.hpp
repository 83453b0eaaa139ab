#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cartan/automorphism.hpp"

namespace cartan {

/// Element of L*, stored as its values on the fixed basis of L.
class Functional {
public:
    Functional() = default;
    explicit Functional(std::vector<Residue> values) : values_(std::move(values)) {}
    static Functional zero(const CartanAlgebra& L) { return Functional(std::vector<Residue>(L.dim(), 0)); }
    /// c times the dual coordinate functional of basis vector k.
    static Functional delta(const CartanAlgebra& L, std::size_t k, Residue c = 1);

    std::size_t size() const noexcept { return values_.size(); }
    Residue operator[](std::size_t k) const { return values_.at(k); }
    Residue& operator[](std::size_t k) { return values_.at(k); }
    const std::vector<Residue>& values() const noexcept { return values_; }
    Residue operator()(const SparseVec& u, const PrimeField& F) const { return dot(u, values_, F); }
    bool is_zero() const;

    bool operator==(const Functional&) const = default;

private:
    std::vector<Residue> values_;
};

Functional add(const Functional& a, const Functional& b, const PrimeField& F);
Functional scale(const Functional& a, Residue c, const PrimeField& F);
/// Component of degree d (values on L_d kept, all others zeroed).
Functional component(const CartanAlgebra& L, const Functional& chi, int d);
/// Sum of the components of degree lo..hi.
Functional components(const CartanAlgebra& L, const Functional& chi, int lo, int hi);
/// chi_-, the sum of the negative components.
Functional negative_part(const CartanAlgebra& L, const Functional& chi);
/// Largest d with chi_d != 0, kMinusInfinity for zero.
int top_degree(const CartanAlgebra& L, const Functional& chi);
std::string to_string(const CartanAlgebra& L, const Functional& chi);

/// Uniform random functional supported in degrees <= max_degree (all degrees when omitted).
Functional random_functional(const CartanAlgebra& L, std::mt19937_64& rng, std::optional<int> max_degree = {});
/// Random chi in L*_{<=1} with chi_1 != 0 and chi_- != 0.
Functional random_rectifiable(const CartanAlgebra& L, std::mt19937_64& rng);

/// g.chi = chi∘g^{-1}. Throws std::invalid_argument for an uncertified map.
Functional coadjoint_apply(const CartanAlgebra& L, const LinearAuto& g, const Functional& chi);

/// Spanning vectors of the negative part in the order used by the rectifier
/// and flattener: d_1..d_n (W, S, H); D_K(x_1'), ..., D_K(x_2m'), D_K(1) (K).
std::vector<SparseVec> negative_frame(const CartanAlgebra& L);

struct RectifierStep {
    /// "d_l", "D_K(x_l)" or "D_K(1)": the negative basis vector being cleared.
    std::string target;
    /// Alternate degree t of the chosen x = D(x^beta) in L_1.
    int t = 0;
    std::string map_tag;
    MultiIndex beta;
    /// 0-based index l; -1 for the D_K(1) step.
    int l = -1;
    bool beta_replaced = false;
    SparseVec E;
    Residue c = 0;
    bool fallback = false;
    LinearAuto g;
};

struct RectifierResult {
    LinearAuto g;
    Functional result;
    std::vector<RectifierStep> steps;
    /// Number of steps that needed the fallback search.
    std::size_t fallbacks = 0;
};

/// Builds g in G_2 with g.chi = chi_0 + chi_1 for chi in L*_{<=1} with
/// chi_1 != 0, following the constructive proof step by step. Steps use
/// g = exp(ad cE)^{-1}, so that g.chi(z) = chi(z) + c chi([E,z]). When the
/// prescribed exponential does not certify, a search over E in a basis of L_2
/// (L_3 for the D_K(1) step) and c in GF(p) takes over and is reported.
/// Throws std::invalid_argument when chi is outside L*_{<=1} or chi_1 = 0,
/// std::runtime_error when no certified step exists.
RectifierResult rectify(const CartanAlgebra& L, const Functional& chi);

struct OrbitPoint {
    Functional value;
    /// Certified automorphism with g.chi = value.
    LinearAuto g;
};

/// chi_0 + t chi_1 together with an explicit automorphism reaching it from
/// chi: torus(t^{-1}) after the rectifier. t must be nonzero.
OrbitPoint orbit_scale(const CartanAlgebra& L, const Functional& chi, Residue t);

struct FlattenResult {
    enum class Status { AlreadyFlat, Flattened, FallbackFlattened, NotWitnessed };

    Status status = Status::NotWitnessed;
    /// For Flattened: g = id + ad y; (g^{-1}.chi)_- = 0. For FallbackFlattened:
    /// a certified g with the same property.
    LinearAuto g;
    /// g^{-1}.chi
    Functional result;
    SparseVec y;
    std::vector<Residue> a;
    std::string message;

    bool ok() const noexcept { return status != Status::NotWitnessed; }
};

std::string to_string(FlattenResult::Status s);

/// Density witness construction. Precomputes Y_i = D(x^{tau-e_i}) and
/// verifies once that every y in their span satisfies (ad y)^2 = 0 and
/// [(ad y)u, (ad y)v] = 0, so that id + ad y is an automorphism.
class Flattener {
public:
    explicit Flattener(const CartanAlgebra& L);

    /// False when the span conditions fail (W(1), p = 5).
    bool supported() const noexcept { return supported_; }
    const std::string& support_note() const noexcept { return note_; }
    const std::vector<SparseVec>& y_basis() const noexcept { return ys_; }

    /// b_si = chi([z_s, Y_i]).
    Matrix b_matrix(const Functional& chi) const;
    /// Solves B a = chi(z), forms y = sum a_i Y_i and g = id + ad y. With
    /// full_certify the map also goes through certify(); otherwise it relies
    /// on the span certificate and checks (ad y)^2 = 0 directly. Falls back
    /// to a search over certified exponentials when unsupported.
    FlattenResult flatten(const Functional& chi, bool full_certify = true) const;
    /// A functional with chi(z_s) = 1 for all s and B = I (W, S, H) or B
    /// unit upper triangular (K). Throws StructuralError if the defining
    /// vectors are dependent.
    Functional witness_functional() const;

private:
    FlattenResult fallback(const Functional& chi) const;

    const CartanAlgebra* L_;
    std::vector<SparseVec> ys_, zs_;
    std::vector<SparseMatrix> ad_ys_;
    bool supported_ = true;
    std::string note_;
};

FlattenResult flatten_negative(const CartanAlgebra& L, const Functional& chi);

struct InjectivityWitness {
    CartanElement x;
    SparseVec coords;
    std::size_t rank = 0;
    std::size_t dim_l0 = 0;
    bool injective() const noexcept { return rank == dim_l0; }
};

enum class WitnessForm {
    /// sum_{i<n} x_i^2 d_i - sum_{i<n} 2 x_n x_i d_n (W, S); sum s(i) x_i^2 d_i' (H); D_K(sum x_s^3) (K).
    Printed,
    /// Same as Printed except on W, where sum_i x_i^2 d_i is used: the printed
    /// W element commutes with x_n d_n.
    Corrected,
};

/// The family-specific x in L_1 meant to make (ad x)|L_0 injective, with the
/// exact rank. n = 1 uses x^2 d (the W/S formula is zero there).
InjectivityWitness injectivity_witness(const CartanAlgebra& L, WitnessForm form = WitnessForm::Printed);

/// chi in L*_1 with chi([x, y_s]) = chi'(y_s) for every basis vector y_s of
/// L_0. Throws StructuralError when the system is singular.
Functional lift_to_degree1(const CartanAlgebra& L, const Functional& chi0, const SparseVec& x);

}  // namespace cartan
