#include "cartan/field.hpp"

#include <string>

namespace cartan {

bool is_prime(std::uint64_t value) {
    if (value < 2) return false;
    for (std::uint64_t d = 2; d * d <= value; ++d)
        if (value % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p <= 3)
        throw std::invalid_argument("characteristic must be a prime > 3, got " + std::to_string(p));
    if (p > (1u << 16))
        throw std::invalid_argument("characteristic too large for tabulated inverses");
    inverse_.assign(p, 0);
    inverse_[1] = 1;
    // i^{-1} = -(p / i) * (p mod i)^{-1}
    for (std::uint32_t i = 2; i < p; ++i)
        inverse_[i] = neg(mul(p / i, inverse_[p % i]));
}

Residue PrimeField::inv(Residue a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(p_) + ")");
    return inverse_[a % p_];
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
    std::uint64_t result = 1 % p_;
    std::uint64_t base = a % p_;
    while (e) {
        if (e & 1) result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

Residue PrimeField::from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Residue>(r);
}

std::int64_t PrimeField::centered(Residue a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
}

FieldElem::FieldElem(std::int64_t value, std::uint32_t modulus) : value_(0), modulus_(modulus) {
    if (!is_prime(modulus) || modulus <= 3) throw std::invalid_argument("modulus must be a prime > 3");
    std::int64_t r = value % static_cast<std::int64_t>(modulus);
    if (r < 0) r += modulus;
    value_ = static_cast<Residue>(r);
}

void FieldElem::require_same(const FieldElem& o) const {
    if (o.modulus_ != modulus_) throw std::invalid_argument("field elements with different moduli");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    require_same(o);
    return {static_cast<std::int64_t>(value_) + o.value_, modulus_};
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    require_same(o);
    return {static_cast<std::int64_t>(value_) - o.value_, modulus_};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    require_same(o);
    return {static_cast<std::int64_t>(static_cast<std::uint64_t>(value_) * o.value_ % modulus_), modulus_};
}

FieldElem FieldElem::operator-() const { return {-static_cast<std::int64_t>(value_), modulus_}; }

FieldElem FieldElem::inverse() const {
    if (value_ == 0) throw std::domain_error("inverse of zero");
    // Fermat: a^{p-2}
    return pow(modulus_ - 2);
}

FieldElem FieldElem::pow(std::uint64_t e) const {
    std::uint64_t result = 1 % modulus_;
    std::uint64_t base = value_;
    while (e) {
        if (e & 1) result = result * base % modulus_;
        base = base * base % modulus_;
        e >>= 1;
    }
    return {static_cast<std::int64_t>(result), modulus_};
}

std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.value(); }

}  // namespace cartan
