#pragma once

#include <string>
#include <vector>

#include "cartan/linalg.hpp"
#include "cartan/poly.hpp"

namespace cartan {

/// A derivation sum_i f_i d_i of A(n), i.e. an element of the Witt-Jacobson
/// algebra W(n). The coefficient tuple always has length n.
class CartanElement {
public:
    explicit CartanElement(RingPtr ring);
    CartanElement(RingPtr ring, std::vector<TruncPoly> coeffs);

    /// c x^a d_j
    static CartanElement monomial(RingPtr ring, const MultiIndex& a, int j, Residue c = 1);
    /// d_j
    static CartanElement partial_op(RingPtr ring, int j);
    static CartanElement from_ambient(RingPtr ring, const SparseVec& v);

    int nvars() const noexcept { return ring_->nvars(); }
    const Ring& ring() const noexcept { return *ring_; }
    const RingPtr& ring_ptr() const noexcept { return ring_; }
    const TruncPoly& coeff(int i) const { return coeffs_.at(i); }
    TruncPoly& coeff(int i) { return coeffs_.at(i); }
    bool is_zero() const;

    /// Coordinates in the monomial basis x^a d_i of W(n); key = rank(a) * n + i.
    SparseVec ambient() const;

    /// Applies the derivation to f.
    TruncPoly apply(const TruncPoly& f) const;

    CartanElement scale(Residue c) const;
    CartanElement operator+(const CartanElement& o) const;
    CartanElement operator-(const CartanElement& o) const;
    CartanElement operator-() const;
    bool operator==(const CartanElement& o) const;

    /// Degree in W(n): |a| - 1 (standard) or sum (i+1) a_i - (j+1) (alternate)
    /// for x^a d_j; maximum over terms, kMinusInfinity for zero.
    int degree(DegreeKind kind) const;
    bool homogeneous(DegreeKind kind, int d) const;

private:
    RingPtr ring_;
    std::vector<TruncPoly> coeffs_;
};

int term_degree(const MultiIndex& a, int j, DegreeKind kind);

/// Lie bracket evaluated termwise from the monomial commutator
/// [x^a d_i, x^b d_j] = b_i x^{a+b-e_i} d_j - a_j x^{a+b-e_j} d_i.
CartanElement witt_bracket(const CartanElement& u, const CartanElement& v);
/// Operator commutator u v - v u, evaluated on the generators x_j.
CartanElement commutator(const CartanElement& u, const CartanElement& v);
/// sum_i d_i(f_i)
TruncPoly divergence(const CartanElement& u);
/// The derivation whose value on x_i is u applied p times to x_i.
CartanElement p_power(const CartanElement& u);

/// +1 on the first half of the symplectic variables, -1 on the second half.
int sigma(int i, int m);
/// Symplectic partner index i' = 2m - 1 - i (0-based).
int partner(int i, int m);

/// f d_i
CartanElement d_i(const TruncPoly& f, int i);
/// d_j(f) d_i - d_i(f) d_j, i != j.
CartanElement d_ij(const TruncPoly& f, int i, int j);
/// Hamiltonian map sum_i sigma(i) d_i(f) d_{i'} on A(2m).
CartanElement d_h(const TruncPoly& f);
/// 2f - sum_{j<2m} x_j d_j(f) on A(2m+1).
TruncPoly delta(const TruncPoly& f);
/// Contact map on A(2m+1).
CartanElement d_k(const TruncPoly& f);
/// <f,g> = delta(f) d_n(g) - delta(g) d_n(f) + sum_j sigma(j) d_j(f) d_{j'}(g), n the last variable.
TruncPoly contact_bracket(const TruncPoly& f, const TruncPoly& g);

std::string to_string(const CartanElement& u);

}  // namespace cartan
