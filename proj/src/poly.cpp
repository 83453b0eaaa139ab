#include "cartan/poly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace cartan {

MultiIndex MultiIndex::unit(int n, int j) {
    if (j < 0 || j >= n) throw std::out_of_range("unit index out of range");
    MultiIndex a = zero(n);
    a.e_[j] = 1;
    return a;
}

int MultiIndex::total() const noexcept {
    int s = 0;
    for (int v : e_) s += v;
    return s;
}

bool MultiIndex::valid(std::uint32_t p) const noexcept {
    return std::all_of(e_.begin(), e_.end(), [p](int v) { return v >= 0 && v < static_cast<int>(p); });
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    if (o.size() != size()) throw std::invalid_argument("multi-index length mismatch");
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    if (o.size() != size()) throw std::invalid_argument("multi-index length mismatch");
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r.e_[i] -= o.e_[i];
    return r;
}

std::string to_string(const MultiIndex& a) {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ')';
    return os.str();
}

int degree(const MultiIndex& a, DegreeKind kind) {
    switch (kind) {
        case DegreeKind::Standard:
            return a.total();
        case DegreeKind::Contact:
            if (a.size() % 2 == 0) throw std::invalid_argument("contact degree needs an odd number of variables");
            return a.total() + a[a.size() - 1] - 2;
        case DegreeKind::Alternate: {
            int s = 0;
            for (int i = 0; i < a.size(); ++i) s += (i + 1) * a[i];
            return s;
        }
    }
    return 0;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    int da = a.total(), db = b.total();
    if (da != db) return da < db;
    // x_1 > x_2: larger leading exponent comes first
    return b.exponents() < a.exponents();
}

std::vector<MultiIndex> enumerate_monomials(int n, std::uint32_t p,
                                            const std::function<bool(const MultiIndex&)>& filter) {
    if (n < 1) throw std::invalid_argument("need at least one variable");
    std::vector<MultiIndex> out;
    MultiIndex a = MultiIndex::zero(n);
    const int top = static_cast<int>(p) - 1;
    while (true) {
        if (!filter || filter(a)) out.push_back(a);
        int i = 0;
        while (i < n && a[i] == top) a[i++] = 0;
        if (i == n) break;
        ++a[i];
    }
    std::sort(out.begin(), out.end(), graded_lex_less);
    return out;
}

std::shared_ptr<const Ring> Ring::get(int n, std::uint32_t p) {
    static std::mutex mutex;
    static std::map<std::pair<int, std::uint32_t>, std::shared_ptr<const Ring>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, p}];
    if (!slot) slot = std::make_shared<const Ring>(n, p);
    return slot;
}

Ring::Ring(int n, std::uint32_t p) : n_(n), field_(p) {
    if (n < 1) throw std::invalid_argument("need at least one variable");
    double count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    if (count > 4e6) throw std::invalid_argument("truncated polynomial ring too large");
    monomials_ = enumerate_monomials(n, p);
    rank_of_code_.assign(monomials_.size(), 0);
    code_of_rank_.resize(monomials_.size());
    for (std::uint32_t r = 0; r < monomials_.size(); ++r) {
        code_of_rank_[r] = code(monomials_[r]);
        rank_of_code_[code_of_rank_[r]] = r;
    }
}

std::uint64_t Ring::code(const MultiIndex& a) const {
    std::uint64_t c = 0;
    for (int i = n_ - 1; i >= 0; --i) c = c * field_.modulus() + static_cast<std::uint64_t>(a[i]);
    return c;
}

std::uint32_t Ring::rank(const MultiIndex& a) const {
    if (a.size() != n_ || !a.valid(field_.modulus()))
        throw std::invalid_argument("invalid multi-index " + to_string(a));
    return rank_of_code_[code(a)];
}

std::optional<std::uint32_t> Ring::product(std::uint32_t a, std::uint32_t b) const {
    const MultiIndex& x = monomials_[a];
    const MultiIndex& y = monomials_[b];
    const int p = static_cast<int>(field_.modulus());
    for (int i = 0; i < n_; ++i)
        if (x[i] + y[i] >= p) return std::nullopt;
    return rank_of_code_[code_of_rank_[a] + code_of_rank_[b]];
}

std::optional<std::uint32_t> Ring::shift(std::uint32_t rank, int var, int delta) const {
    MultiIndex a = monomials_[rank];
    a[var] += delta;
    if (!a.valid(field_.modulus())) return std::nullopt;
    return rank_of_code_[code(a)];
}

TruncPoly TruncPoly::constant(RingPtr ring, Residue c) {
    TruncPoly f(std::move(ring));
    f.add_term(0, c);
    return f;
}

TruncPoly TruncPoly::monomial(RingPtr ring, const MultiIndex& a, Residue c) {
    TruncPoly f(ring);
    f.add_term(ring->rank(a), c);
    return f;
}

TruncPoly TruncPoly::variable(RingPtr ring, int i) {
    const int n = ring->nvars();
    return monomial(std::move(ring), MultiIndex::unit(n, i));
}

Residue TruncPoly::coeff(const MultiIndex& a) const { return coeff_at(ring_->rank(a)); }

Residue TruncPoly::coeff_at(std::uint32_t rank) const {
    auto it = terms_.find(rank);
    return it == terms_.end() ? 0 : it->second;
}

void TruncPoly::add_term(std::uint32_t rank, Residue c) {
    c %= ring_->characteristic();
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(rank, c);
    if (!inserted) {
        it->second = ring_->field().add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

void TruncPoly::require_same_ring(const TruncPoly& o) const {
    if (ring_ != o.ring_ && (ring_->nvars() != o.ring_->nvars() || ring_->characteristic() != o.ring_->characteristic()))
        throw std::invalid_argument("polynomials over different rings");
}

TruncPoly TruncPoly::scale(Residue c) const {
    TruncPoly r(ring_);
    c %= ring_->characteristic();
    if (c == 0) return r;
    const auto& F = ring_->field();
    for (auto [k, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), k, F.mul(v, c));
    return r;
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& o) {
    require_same_ring(o);
    for (auto [k, v] : o.terms_) add_term(k, v);
    return *this;
}

TruncPoly& TruncPoly::operator-=(const TruncPoly& o) {
    require_same_ring(o);
    const auto& F = ring_->field();
    for (auto [k, v] : o.terms_) add_term(k, F.neg(v));
    return *this;
}

TruncPoly TruncPoly::operator+(const TruncPoly& o) const {
    TruncPoly r = *this;
    r += o;
    return r;
}

TruncPoly TruncPoly::operator-(const TruncPoly& o) const {
    TruncPoly r = *this;
    r -= o;
    return r;
}

TruncPoly TruncPoly::operator-() const { return scale(ring_->characteristic() - 1); }

TruncPoly TruncPoly::operator*(const TruncPoly& o) const {
    require_same_ring(o);
    TruncPoly r(ring_);
    const auto& F = ring_->field();
    for (auto [a, ca] : terms_)
        for (auto [b, cb] : o.terms_)
            if (auto ab = ring_->product(a, b)) r.add_term(*ab, F.mul(ca, cb));
    return r;
}

int TruncPoly::degree(DegreeKind kind) const {
    int d = kMinusInfinity;
    for (const auto& [k, v] : terms_) d = std::max(d, cartan::degree(ring_->monomial(k), kind));
    return d;
}

bool TruncPoly::homogeneous(DegreeKind kind, int d) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return cartan::degree(ring_->monomial(t.first), kind) == d; });
}

bool TruncPoly::operator==(const TruncPoly& o) const {
    return ring_->nvars() == o.ring_->nvars() && ring_->characteristic() == o.ring_->characteristic() &&
           terms_ == o.terms_;
}

TruncPoly poly_mul(const TruncPoly& f, const TruncPoly& g) { return f * g; }

TruncPoly partial(const TruncPoly& f, int i) {
    const Ring& R = f.ring();
    if (i < 0 || i >= R.nvars()) throw std::out_of_range("partial derivative index out of range");
    TruncPoly r(f.ring_ptr());
    const auto& F = R.field();
    for (auto [k, c] : f.terms()) {
        const int e = R.monomial(k)[i];
        if (e == 0) continue;
        r.add_term(*R.shift(k, i, -1), F.mul(c, static_cast<Residue>(e)));
    }
    return r;
}

std::string to_string(const TruncPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& F = f.ring().field();
    for (auto [k, c] : f.terms()) {
        const MultiIndex& a = f.ring().monomial(k);
        std::int64_t cc = F.centered(c);
        os << (cc < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        std::int64_t mag = cc < 0 ? -cc : cc;
        bool any = false;
        std::ostringstream mono;
        for (int i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            mono << (any ? "*" : "") << "x" << (i + 1);
            if (a[i] > 1) mono << "^" << a[i];
            any = true;
        }
        if (!any) os << mag;
        else {
            if (mag != 1) os << mag << "*";
            os << mono.str();
        }
        first = false;
    }
    return os.str();
}

}  // namespace cartan
