#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartan/element.hpp"
#include "cartan/linalg.hpp"
#include "cartan/poly.hpp"

namespace cartan {

/// Raised when a construction produces something that contradicts the
/// algebra's defining properties (a bracket leaving the span, a p-th power
/// outside the algebra, a dependent basis). Always indicates a bug.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Family { W, S, H, K };

std::string to_string(Family f);
/// Accepts "W", "S", "H", "K" (case-insensitive); throws std::invalid_argument otherwise.
Family parse_family(const std::string& s);

enum class Grading {
    Standard,   // |a|-1 on W, |a|-2 on S and H, the contact degree on K
    Alternate,  // sum (i+1) a_i - (j+1), restricted from W(n)
};

/// One of the graded linear maps A(n) -> W(n) whose images span the algebra.
struct AssociatedMap {
    enum class Kind { Witt, Special, Hamiltonian, Contact };

    Kind kind = Kind::Witt;
    int i = -1;  // Witt: target d_i; Special: first index
    int j = -1;  // Special: second index

    CartanElement operator()(const TruncPoly& f) const;
    /// Shift of the alternate degree: deg(D(x^b)) = alt(b) + alternate_shift(n).
    int alternate_shift(int n) const;
    /// "D_1", "D_12", "D_H", "D_K" (indices 1-based).
    std::string tag() const;
    static AssociatedMap parse(const std::string& tag);

    bool operator==(const AssociatedMap&) const = default;
};

/// The maps D_i (W), D_ij with i<j (S), D_H (H) or D_K (K).
std::vector<AssociatedMap> associated_maps(Family family, int n);

struct BasisLabel {
    AssociatedMap map;
    MultiIndex alpha;
};

/// Structure constants for every ordered pair of basis indices, stored
/// compactly (row i, column j).
class StructureTable {
public:
    StructureTable() = default;
    explicit StructureTable(std::size_t dim, const std::vector<SparseVec>& entries);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const SparseEntry> at(std::size_t i, std::size_t j) const {
        const std::size_t k = i * dim_ + j;
        return {entries_.data() + offsets_[k], entries_.data() + offsets_[k + 1]};
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::uint32_t> offsets_;
    std::vector<SparseEntry> entries_;
};

/// A restricted simple Lie algebra of Cartan type with a fixed ordered basis,
/// its full structure-constant table, both gradings and the p-map on basis
/// vectors. Immutable once built.
class CartanAlgebra {
public:
    Family family() const noexcept { return family_; }
    int nvars() const noexcept { return ring_->nvars(); }
    std::uint32_t characteristic() const noexcept { return ring_->characteristic(); }
    const PrimeField& field() const noexcept { return ring_->field(); }
    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    std::string name() const;

    const CartanElement& basis(std::size_t k) const { return basis_.at(k); }
    const BasisLabel& label(std::size_t k) const { return labels_.at(k); }
    int degree(std::size_t k, Grading g = Grading::Standard) const {
        return g == Grading::Standard ? std_degree_.at(k) : alt_degree_.at(k);
    }
    int min_degree() const noexcept { return min_degree_; }
    int max_degree() const noexcept { return max_degree_; }

    const StructureTable& table() const noexcept { return table_; }
    std::span<const SparseEntry> bracket(std::size_t i, std::size_t j) const { return table_.at(i, j); }
    /// Bracket of two coordinate vectors through the structure constants.
    SparseVec bracket(const SparseVec& a, const SparseVec& b) const;
    /// p-th power of the k-th basis vector, in coordinates.
    const SparseVec& pmap(std::size_t k) const { return pmap_.at(k); }
    /// p-th power of an arbitrary element, computed from the derivation and
    /// expressed in coordinates; throws StructuralError if it leaves the algebra.
    SparseVec pmap_of(const SparseVec& u) const;

    std::optional<SparseVec> coordinates(const CartanElement& u) const;
    /// Throws StructuralError when u is not in the algebra.
    SparseVec require_coordinates(const CartanElement& u) const;
    CartanElement element(const SparseVec& coords) const;

    /// Indices of basis vectors of degree d.
    std::vector<std::size_t> graded_component(int d, Grading g = Grading::Standard) const;
    /// Basis vectors of negative standard degree.
    std::vector<std::size_t> negative_part() const;
    /// Lowest standard degree among the terms of a coordinate vector, or kMinusInfinity for zero.
    int lowest_degree(const SparseVec& v) const;

    friend CartanAlgebra build_algebra(Family family, int n, std::uint32_t p);

private:
    CartanAlgebra() = default;

    Family family_ = Family::W;
    RingPtr ring_;
    std::vector<CartanElement> basis_;
    std::vector<BasisLabel> labels_;
    std::vector<int> std_degree_, alt_degree_;
    int min_degree_ = 0, max_degree_ = 0;
    StructureTable table_;
    std::vector<SparseVec> pmap_;
    std::shared_ptr<EchelonSpan> span_;
};

/// Checks the (family, n, p) combination; throws std::invalid_argument when unsupported.
void validate_parameters(Family family, int n, std::uint32_t p);

/// Builds W(n), S(n), H(n) or K(n) (the simple derived algebras) over GF(p),
/// verifying linear independence, bracket closure and p-closure along the way.
CartanAlgebra build_algebra(Family family, int n, std::uint32_t p);

/// The spanning labels used to construct the family, in basis-selection order.
std::vector<BasisLabel> spanning_labels(Family family, int n, std::uint32_t p);

/// Basis of the span of all pairwise brackets of the given elements.
std::vector<CartanElement> derived_subalgebra(const std::vector<CartanElement>& span);
/// Dimension of the linear span of the given elements.
std::size_t span_rank(const std::vector<CartanElement>& elements);

/// Dimension formula for the acceptance table: W n p^n; S(2) p^2-2; S(n>=3)
/// (n-1)(p^n-1); H p^n-2; K p^n, minus one when p divides n+3.
std::size_t expected_dimension(Family family, int n, std::uint32_t p);

}  // namespace cartan
