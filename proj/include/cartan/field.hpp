#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace cartan {

/// Residue class modulo the field characteristic, always kept in [0, p).
using Residue = std::uint32_t;

bool is_prime(std::uint64_t value);

/// Arithmetic context for GF(p), p a prime larger than 3.
///
/// Values are plain residues so that hot loops (bracket tables, elimination)
/// stay allocation free. Inverses are tabulated once at construction.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const noexcept { return p_; }

    Residue add(Residue a, Residue b) const noexcept {
        Residue s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    /// Throws std::domain_error on zero.
    Residue inv(Residue a) const;
    Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
    Residue pow(Residue a, std::uint64_t e) const noexcept;
    Residue from_int(std::int64_t v) const noexcept;
    /// Representative in (-p/2, p/2], handy for printing.
    std::int64_t centered(Residue a) const noexcept;

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
    std::vector<Residue> inverse_;
};

/// A self-describing element of GF(p). Mixed-modulus arithmetic is a usage
/// error (std::invalid_argument).
class FieldElem {
public:
    FieldElem(std::int64_t value, std::uint32_t modulus);

    Residue value() const noexcept { return value_; }
    std::uint32_t modulus() const noexcept { return modulus_; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;
    FieldElem pow(std::uint64_t e) const;

    bool operator==(const FieldElem& o) const = default;

private:
    void require_same(const FieldElem& o) const;

    Residue value_;
    std::uint32_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& a);

}  // namespace cartan
