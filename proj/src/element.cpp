#include "cartan/element.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cartan {

CartanElement::CartanElement(RingPtr ring) : ring_(std::move(ring)) {
    coeffs_.assign(ring_->nvars(), TruncPoly(ring_));
}

CartanElement::CartanElement(RingPtr ring, std::vector<TruncPoly> coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != ring_->nvars())
        throw std::invalid_argument("coefficient tuple length must equal the number of variables");
}

CartanElement CartanElement::monomial(RingPtr ring, const MultiIndex& a, int j, Residue c) {
    CartanElement u(ring);
    u.coeffs_.at(j) = TruncPoly::monomial(ring, a, c);
    return u;
}

CartanElement CartanElement::partial_op(RingPtr ring, int j) {
    const int n = ring->nvars();
    return monomial(std::move(ring), MultiIndex::zero(n), j);
}

CartanElement CartanElement::from_ambient(RingPtr ring, const SparseVec& v) {
    CartanElement u(ring);
    const auto n = static_cast<std::uint32_t>(ring->nvars());
    for (auto [key, c] : v) u.coeffs_[key % n].add_term(key / n, c);
    return u;
}

bool CartanElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const TruncPoly& f) { return f.is_zero(); });
}

SparseVec CartanElement::ambient() const {
    SparseVec v;
    const auto n = static_cast<std::uint32_t>(nvars());
    for (std::uint32_t i = 0; i < n; ++i)
        for (auto [rank, c] : coeffs_[i].terms()) v.emplace_back(rank * n + i, c);
    std::sort(v.begin(), v.end());
    return v;
}

TruncPoly CartanElement::apply(const TruncPoly& f) const {
    TruncPoly r(ring_);
    for (int i = 0; i < nvars(); ++i)
        if (!coeffs_[i].is_zero()) r += coeffs_[i] * partial(f, i);
    return r;
}

CartanElement CartanElement::scale(Residue c) const {
    CartanElement r(ring_);
    for (int i = 0; i < nvars(); ++i) r.coeffs_[i] = coeffs_[i].scale(c);
    return r;
}

CartanElement CartanElement::operator+(const CartanElement& o) const {
    CartanElement r = *this;
    for (int i = 0; i < nvars(); ++i) r.coeffs_[i] += o.coeffs_.at(i);
    return r;
}

CartanElement CartanElement::operator-(const CartanElement& o) const {
    CartanElement r = *this;
    for (int i = 0; i < nvars(); ++i) r.coeffs_[i] -= o.coeffs_.at(i);
    return r;
}

CartanElement CartanElement::operator-() const { return scale(ring_->characteristic() - 1); }

bool CartanElement::operator==(const CartanElement& o) const { return coeffs_ == o.coeffs_; }

int term_degree(const MultiIndex& a, int j, DegreeKind kind) {
    switch (kind) {
        case DegreeKind::Standard:
            return a.total() - 1;
        case DegreeKind::Alternate:
            return degree(a, DegreeKind::Alternate) - (j + 1);
        case DegreeKind::Contact:
            break;
    }
    throw std::invalid_argument("contact degree is defined on the contact algebra, not on W(n) terms");
}

int CartanElement::degree(DegreeKind kind) const {
    int d = kMinusInfinity;
    for (int j = 0; j < nvars(); ++j)
        for (const auto& [rank, c] : coeffs_[j].terms()) d = std::max(d, term_degree(ring_->monomial(rank), j, kind));
    return d;
}

bool CartanElement::homogeneous(DegreeKind kind, int d) const {
    for (int j = 0; j < nvars(); ++j)
        for (const auto& [rank, c] : coeffs_[j].terms())
            if (term_degree(ring_->monomial(rank), j, kind) != d) return false;
    return true;
}

CartanElement witt_bracket(const CartanElement& u, const CartanElement& v) {
    const Ring& R = u.ring();
    if (R.nvars() != v.nvars() || R.characteristic() != v.ring().characteristic())
        throw std::invalid_argument("bracket of elements over different rings");
    const auto& F = R.field();
    const int n = R.nvars();
    CartanElement r(u.ring_ptr());
    for (int i = 0; i < n; ++i)
        for (auto [ra, ca] : u.coeff(i).terms()) {
            const MultiIndex& a = R.monomial(ra);
            for (int j = 0; j < n; ++j)
                for (auto [rb, cb] : v.coeff(j).terms()) {
                    const MultiIndex& b = R.monomial(rb);
                    const Residue cab = F.mul(ca, cb);
                    // + b_i x^{a+b-e_i} d_j
                    if (b[i] > 0)
                        if (auto s = R.product(ra, *R.shift(rb, i, -1)))
                            r.coeff(j).add_term(*s, F.mul(cab, static_cast<Residue>(b[i])));
                    // - a_j x^{a+b-e_j} d_i
                    if (a[j] > 0)
                        if (auto s = R.product(*R.shift(ra, j, -1), rb))
                            r.coeff(i).add_term(*s, F.neg(F.mul(cab, static_cast<Residue>(a[j]))));
                }
        }
    return r;
}

CartanElement commutator(const CartanElement& u, const CartanElement& v) {
    CartanElement r(u.ring_ptr());
    for (int j = 0; j < u.nvars(); ++j) {
        const TruncPoly xj = TruncPoly::variable(u.ring_ptr(), j);
        r.coeff(j) = u.apply(v.apply(xj)) - v.apply(u.apply(xj));
    }
    return r;
}

TruncPoly divergence(const CartanElement& u) {
    TruncPoly r(u.ring_ptr());
    for (int i = 0; i < u.nvars(); ++i) r += partial(u.coeff(i), i);
    return r;
}

CartanElement p_power(const CartanElement& u) {
    const std::uint32_t p = u.ring().characteristic();
    CartanElement r(u.ring_ptr());
    for (int j = 0; j < u.nvars(); ++j) {
        TruncPoly f = TruncPoly::variable(u.ring_ptr(), j);
        for (std::uint32_t k = 0; k < p; ++k) f = u.apply(f);
        r.coeff(j) = std::move(f);
    }
    return r;
}

int sigma(int i, int m) { return i < m ? 1 : -1; }

int partner(int i, int m) { return 2 * m - 1 - i; }

namespace {

Residue signed_residue(int s, const PrimeField& F) { return F.from_int(s); }

}  // namespace

CartanElement d_i(const TruncPoly& f, int i) {
    CartanElement r(f.ring_ptr());
    r.coeff(i) = f;
    return r;
}

CartanElement d_ij(const TruncPoly& f, int i, int j) {
    const int n = f.ring().nvars();
    if (i == j) throw std::invalid_argument("D_ij needs distinct indices");
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("D_ij index out of range");
    CartanElement r(f.ring_ptr());
    r.coeff(i) = partial(f, j);
    r.coeff(j) = -partial(f, i);
    return r;
}

CartanElement d_h(const TruncPoly& f) {
    const int n = f.ring().nvars();
    if (n % 2 != 0) throw std::invalid_argument("Hamiltonian map needs an even number of variables");
    const int m = n / 2;
    const auto& F = f.ring().field();
    CartanElement r(f.ring_ptr());
    for (int i = 0; i < n; ++i) r.coeff(partner(i, m)) = partial(f, i).scale(signed_residue(sigma(i, m), F));
    return r;
}

TruncPoly delta(const TruncPoly& f) {
    const int n = f.ring().nvars();
    if (n % 2 != 1) throw std::invalid_argument("contact maps need an odd number of variables");
    TruncPoly r = f.scale(2);
    for (int j = 0; j + 1 < n; ++j) r -= TruncPoly::variable(f.ring_ptr(), j) * partial(f, j);
    return r;
}

CartanElement d_k(const TruncPoly& f) {
    const int n = f.ring().nvars();
    if (n % 2 != 1) throw std::invalid_argument("contact maps need an odd number of variables");
    const int m = (n - 1) / 2;
    const int last = n - 1;
    const auto& F = f.ring().field();
    CartanElement r(f.ring_ptr());
    const TruncPoly dlast = partial(f, last);
    for (int i = 0; i < 2 * m; ++i) {
        const int ip = partner(i, m);
        r.coeff(i) = TruncPoly::variable(f.ring_ptr(), i) * dlast + partial(f, ip).scale(signed_residue(sigma(ip, m), F));
    }
    r.coeff(last) = delta(f);
    return r;
}

TruncPoly contact_bracket(const TruncPoly& f, const TruncPoly& g) {
    const int n = f.ring().nvars();
    if (n % 2 != 1) throw std::invalid_argument("contact bracket needs an odd number of variables");
    const int m = (n - 1) / 2;
    const int last = n - 1;
    const auto& F = f.ring().field();
    TruncPoly r = delta(f) * partial(g, last) - delta(g) * partial(f, last);
    for (int j = 0; j < 2 * m; ++j)
        r += (partial(f, j) * partial(g, partner(j, m))).scale(signed_residue(sigma(j, m), F));
    return r;
}

std::string to_string(const CartanElement& u) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < u.nvars(); ++i) {
        if (u.coeff(i).is_zero()) continue;
        os << (first ? "" : " + ") << "(" << to_string(u.coeff(i)) << ")d" << (i + 1);
        first = false;
    }
    return first ? "0" : os.str();
}

}  // namespace cartan
