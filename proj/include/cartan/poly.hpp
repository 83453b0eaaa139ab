#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartan/field.hpp"

namespace cartan {

/// Degree reported for the zero polynomial.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

/// Exponent tuple (a_1, ..., a_n) of a monomial x^a in A(n). Variables are
/// indexed from 0 throughout the library.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {}

    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
    static MultiIndex unit(int n, int j);
    /// The all-(p-1) index, i.e. the top monomial.
    static MultiIndex top(int n, std::uint32_t p) { return MultiIndex(std::vector<int>(n, static_cast<int>(p) - 1)); }

    int size() const noexcept { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[i]; }
    int& operator[](int i) { return e_[i]; }
    const std::vector<int>& exponents() const noexcept { return e_; }
    int total() const noexcept;
    bool valid(std::uint32_t p) const noexcept;

    MultiIndex operator+(const MultiIndex& o) const;
    MultiIndex operator-(const MultiIndex& o) const;

    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> e_;
};

std::string to_string(const MultiIndex& a);

enum class DegreeKind {
    Standard,   // |a|
    Contact,    // |a| + a_n - 2, odd n only
    Alternate,  // sum (i+1) a_i
};

/// Throws std::invalid_argument for the contact degree on an even number of variables.
int degree(const MultiIndex& a, DegreeKind kind);

/// Graded-lex comparison: total degree first, then x_1 > x_2 > ... lexicographically.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// Every valid index in A(n) over GF(p) accepted by the filter, in graded-lex order.
std::vector<MultiIndex> enumerate_monomials(int n, std::uint32_t p,
                                            const std::function<bool(const MultiIndex&)>& filter = {});

/// Shared, immutable monomial tables for A(n) over GF(p). Monomials are
/// addressed by their graded-lex rank.
class Ring {
public:
    static std::shared_ptr<const Ring> get(int n, std::uint32_t p);

    Ring(int n, std::uint32_t p);

    int nvars() const noexcept { return n_; }
    std::uint32_t characteristic() const noexcept { return field_.modulus(); }
    const PrimeField& field() const noexcept { return field_; }
    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(monomials_.size()); }

    const MultiIndex& monomial(std::uint32_t rank) const { return monomials_[rank]; }
    /// Throws std::invalid_argument if the index is not a valid monomial.
    std::uint32_t rank(const MultiIndex& a) const;
    /// Rank of x^{a+b}, or nullopt when the product truncates to zero.
    std::optional<std::uint32_t> product(std::uint32_t a, std::uint32_t b) const;
    /// Rank of x^{a + delta e_var}, or nullopt when out of range.
    std::optional<std::uint32_t> shift(std::uint32_t rank, int var, int delta) const;

private:
    std::uint64_t code(const MultiIndex& a) const;

    int n_;
    PrimeField field_;
    std::vector<MultiIndex> monomials_;
    std::vector<std::uint32_t> rank_of_code_;
    std::vector<std::uint64_t> code_of_rank_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Element of the truncated polynomial ring A(n) = GF(p)[x]/(x_i^p).
/// Terms are stored sparsely, keyed by graded-lex rank; zero coefficients are
/// never stored.
class TruncPoly {
public:
    using Terms = std::map<std::uint32_t, Residue>;

    explicit TruncPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static TruncPoly constant(RingPtr ring, Residue c);
    static TruncPoly monomial(RingPtr ring, const MultiIndex& a, Residue c = 1);
    static TruncPoly variable(RingPtr ring, int i);

    const Ring& ring() const noexcept { return *ring_; }
    const RingPtr& ring_ptr() const noexcept { return ring_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Residue coeff(const MultiIndex& a) const;
    Residue coeff_at(std::uint32_t rank) const;

    /// Adds c * x^{monomial(rank)}.
    void add_term(std::uint32_t rank, Residue c);

    TruncPoly scale(Residue c) const;
    TruncPoly operator+(const TruncPoly& o) const;
    TruncPoly operator-(const TruncPoly& o) const;
    TruncPoly operator-() const;
    TruncPoly operator*(const TruncPoly& o) const;
    TruncPoly& operator+=(const TruncPoly& o);
    TruncPoly& operator-=(const TruncPoly& o);

    /// Maximal degree of a term, kMinusInfinity for zero.
    int degree(DegreeKind kind = DegreeKind::Standard) const;
    /// True when every term has the given degree (zero counts as homogeneous).
    bool homogeneous(DegreeKind kind, int d) const;

    bool operator==(const TruncPoly& o) const;

private:
    void require_same_ring(const TruncPoly& o) const;

    RingPtr ring_;
    Terms terms_;
};

TruncPoly poly_mul(const TruncPoly& f, const TruncPoly& g);
/// Partial derivative with respect to x_i; throws std::out_of_range for a bad index.
TruncPoly partial(const TruncPoly& f, int i);

std::string to_string(const TruncPoly& f);

}  // namespace cartan
