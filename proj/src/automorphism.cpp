#include "cartan/automorphism.hpp"

#include <algorithm>
#include <stdexcept>

namespace cartan {

SparseMatrix identity_matrix(std::size_t dim) {
    SparseMatrix m(dim);
    for (std::size_t k = 0; k < dim; ++k) m[k] = unit_vector(static_cast<std::uint32_t>(k));
    return m;
}

SparseVec apply(const SparseMatrix& m, const SparseVec& v, const PrimeField& F) {
    Accumulator acc(m.size(), F);
    for (auto [k, c] : v) acc.add(m.at(k), c);
    return acc.take();
}

SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& F) {
    if (a.size() != b.size()) throw std::invalid_argument("composition of maps of different size");
    SparseMatrix out(b.size());
    Accumulator acc(a.size(), F);
    for (std::size_t j = 0; j < b.size(); ++j) {
        for (auto [k, c] : b[j]) acc.add(a[k], c);
        out[j] = acc.take();
    }
    return out;
}

bool is_identity(const SparseMatrix& m) {
    for (std::size_t k = 0; k < m.size(); ++k)
        if (m[k].size() != 1 || m[k][0].first != k || m[k][0].second != 1) return false;
    return true;
}

SparseMatrix ad_matrix(const CartanAlgebra& L, const SparseVec& y) {
    SparseMatrix m(L.dim());
    for (std::size_t k = 0; k < L.dim(); ++k) m[k] = L.bracket(y, unit_vector(static_cast<std::uint32_t>(k)));
    return m;
}

int identity_depth(const CartanAlgebra& L) { return static_cast<int>(L.dim()); }

const LinearAuto& Certification::value() const {
    if (!automorphism) throw std::runtime_error("not an automorphism: " + message);
    return *automorphism;
}

std::string to_string(Certification::Status s) {
    switch (s) {
        case Certification::Status::Certified: return "certified";
        case Certification::Status::NotSquare: return "not square";
        case Certification::Status::NotInvertible: return "not invertible";
        case Certification::Status::NotNilpotent: return "ad y not nilpotent of order p";
        case Certification::Status::LeavesAlgebra: return "image leaves the algebra";
        case Certification::Status::BracketViolated: return "bracket violated";
    }
    return "?";
}

void analyze_filtration(const CartanAlgebra& L, LinearAuto& g) {
    const auto& F = L.field();
    int depth = identity_depth(L);
    bool graded = true;
    for (std::size_t k = 0; k < L.dim(); ++k) {
        const int d = L.degree(k);
        SparseVec diff = axpy(g.forward[k], F.neg(1), unit_vector(static_cast<std::uint32_t>(k)), F);
        if (!diff.empty()) depth = std::min(depth, L.lowest_degree(diff) - d);
        for (auto [j, c] : g.forward[k])
            if (L.degree(j) != d) graded = false;
    }
    g.filtration_depth = depth;
    g.graded = graded;
    g.preserves_filtration = depth >= 0;
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> first_bracket_violation(const CartanAlgebra& L,
                                                                          const SparseMatrix& m) {
    const auto& F = L.field();
    const std::size_t dim = L.dim();
    Accumulator lhs(dim, F), rhs(dim, F);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            for (auto [k, t] : L.bracket(i, j)) lhs.add(m[k], t);
            for (auto [a, ga] : m[i])
                for (auto [b, gb] : m[j]) {
                    const Residue c = F.mul(ga, gb);
                    for (auto [k, t] : L.bracket(a, b)) rhs.add(k, F.mul(c, t));
                }
            if (lhs.take() != rhs.take()) return std::make_pair(i, j);
        }
    return std::nullopt;
}

SparseMatrix to_sparse(const Matrix& m) {
    SparseMatrix out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m.at(i, j)) out[j].emplace_back(static_cast<std::uint32_t>(i), m.at(i, j));
    return out;
}

Matrix to_dense(const SparseMatrix& m) {
    Matrix out(m.size(), m.size());
    for (std::size_t j = 0; j < m.size(); ++j)
        for (auto [i, c] : m[j]) out.at(i, j) = c;
    return out;
}

}  // namespace

Certification certify(const CartanAlgebra& L, SparseMatrix m, std::optional<SparseMatrix> inverse_hint) {
    Certification result;
    const auto& F = L.field();
    if (m.size() != L.dim()) {
        result.status = Certification::Status::NotSquare;
        result.message = "matrix size does not match the algebra dimension";
        return result;
    }
    for (const auto& col : m)
        for (auto [i, c] : col)
            if (i >= L.dim() || c == 0 || c >= F.modulus()) {
                result.status = Certification::Status::NotSquare;
                result.message = "malformed column";
                return result;
            }

    SparseMatrix inv;
    if (inverse_hint && inverse_hint->size() == m.size() && is_identity(compose(m, *inverse_hint, F)) &&
        is_identity(compose(*inverse_hint, m, F))) {
        inv = std::move(*inverse_hint);
    } else {
        auto dense = inverse(to_dense(m), F);
        if (!dense) {
            result.status = Certification::Status::NotInvertible;
            result.message = "matrix is singular";
            return result;
        }
        inv = to_sparse(*dense);
    }

    if (auto w = first_bracket_violation(L, m)) {
        result.status = Certification::Status::BracketViolated;
        result.witness = w;
        result.message = "bracket of basis vectors " + std::to_string(w->first) + ", " + std::to_string(w->second) +
                         " not preserved";
        return result;
    }

    LinearAuto g{std::move(m), std::move(inv), true, 0, false, false};
    analyze_filtration(L, g);
    result.status = Certification::Status::Certified;
    result.automorphism = std::move(g);
    return result;
}

LinearAuto torus_auto(const CartanAlgebra& L, Residue t) {
    const auto& F = L.field();
    t %= F.modulus();
    if (t == 0) throw std::invalid_argument("torus parameter must be nonzero");
    const Residue tinv = F.inv(t);
    LinearAuto g;
    g.forward.resize(L.dim());
    g.inverse.resize(L.dim());
    for (std::size_t k = 0; k < L.dim(); ++k) {
        const int d = L.degree(k);
        const Residue s = d >= 0 ? F.pow(t, d) : F.pow(tinv, -d);
        g.forward[k] = {{static_cast<std::uint32_t>(k), s}};
        g.inverse[k] = {{static_cast<std::uint32_t>(k), F.inv(s)}};
    }
    auto cert = certify(L, g.forward, g.inverse);
    return cert.value();
}

Certification exp_ad(const CartanAlgebra& L, const SparseVec& y) {
    const auto& F = L.field();
    const std::uint32_t p = F.modulus();
    const SparseMatrix ad = ad_matrix(L, y);

    std::vector<SparseMatrix> powers{identity_matrix(L.dim())};
    for (std::uint32_t k = 1; k <= p; ++k) {
        SparseMatrix next = compose(ad, powers.back(), F);
        bool zero = std::all_of(next.begin(), next.end(), [](const SparseVec& c) { return c.empty(); });
        if (zero) break;
        if (k == p) {
            Certification r;
            r.status = Certification::Status::NotNilpotent;
            r.message = "(ad y)^p != 0";
            return r;
        }
        powers.push_back(std::move(next));
    }

    SparseMatrix forward(L.dim()), backward(L.dim());
    Residue factorial = 1;
    for (std::size_t k = 0; k < powers.size(); ++k) {
        if (k > 0) factorial = F.mul(factorial, static_cast<Residue>(k));
        const Residue w = F.inv(factorial);
        const Residue wb = (k % 2) ? F.neg(w) : w;
        for (std::size_t j = 0; j < L.dim(); ++j) {
            forward[j] = axpy(forward[j], w, powers[k][j], F);
            backward[j] = axpy(backward[j], wb, powers[k][j], F);
        }
    }
    return certify(L, std::move(forward), std::move(backward));
}

LinearAuto compose(const CartanAlgebra& L, const LinearAuto& g, const LinearAuto& h) {
    const auto& F = L.field();
    LinearAuto r;
    r.forward = compose(g.forward, h.forward, F);
    r.inverse = compose(h.inverse, g.inverse, F);
    r.certified = g.certified && h.certified;
    analyze_filtration(L, r);
    return r;
}

LinearAuto inverse(const LinearAuto& g) {
    LinearAuto r = g;
    std::swap(r.forward, r.inverse);
    // depth and gradedness are shared by g and its inverse (G_r is a subgroup)
    return r;
}

SparseVec apply(const CartanAlgebra& L, const LinearAuto& g, const SparseVec& v) { return apply(g.forward, v, L.field()); }

namespace {

/// theta(f) = f(phi), as a dense matrix on the monomials of A(n).
Matrix substitution_matrix(const Ring& R, const std::vector<TruncPoly>& phi) {
    Matrix m(R.size(), R.size());
    for (std::uint32_t r = 0; r < R.size(); ++r) {
        const MultiIndex& a = R.monomial(r);
        TruncPoly img = TruncPoly::constant(phi.front().ring_ptr(), 1);
        for (int i = 0; i < R.nvars(); ++i)
            for (int e = 0; e < a[i]; ++e) img = img * phi[i];
        for (auto [k, c] : img.terms()) m.at(k, r) = c;
    }
    return m;
}

TruncPoly apply_matrix(const Matrix& m, const TruncPoly& f) {
    TruncPoly out(f.ring_ptr());
    const auto& F = f.ring().field();
    for (auto [r, c] : f.terms())
        for (std::uint32_t k = 0; k < m.rows(); ++k)
            if (m.at(k, r)) out.add_term(k, F.mul(c, m.at(k, r)));
    return out;
}

void validate_substitution(const Ring& R, const std::vector<TruncPoly>& phi) {
    const int n = R.nvars();
    if (static_cast<int>(phi.size()) != n) throw std::invalid_argument("substitution needs one polynomial per variable");
    Matrix jac(n, n);
    for (int i = 0; i < n; ++i) {
        if (phi[i].ring().nvars() != n || phi[i].ring().characteristic() != R.characteristic())
            throw std::invalid_argument("substitution polynomial over a different ring");
        if (phi[i].coeff_at(0) != 0) throw std::invalid_argument("substitution with nonzero constant term");
        for (int j = 0; j < n; ++j) jac.at(i, j) = phi[i].coeff(MultiIndex::unit(n, j));
    }
    if (rank(jac, R.field()) < static_cast<std::size_t>(n))
        throw std::invalid_argument("substitution with singular Jacobian");
}

}  // namespace

Certification substitution_auto(const CartanAlgebra& L, const std::vector<TruncPoly>& phi) {
    const Ring& R = *L.ring();
    validate_substitution(R, phi);
    const int n = R.nvars();
    const Matrix theta = substitution_matrix(R, phi);
    const auto theta_inv = inverse(theta, R.field());
    if (!theta_inv) throw std::invalid_argument("substitution is not invertible");

    std::vector<TruncPoly> psi, xs;
    for (int i = 0; i < n; ++i) {
        xs.push_back(TruncPoly::variable(L.ring(), i));
        psi.push_back(apply_matrix(*theta_inv, xs.back()));
    }
    SparseMatrix forward(L.dim()), backward(L.dim());
    for (std::size_t k = 0; k < L.dim(); ++k) {
        const CartanElement& D = L.basis(k);
        CartanElement img(L.ring()), pre(L.ring());
        for (int i = 0; i < n; ++i) {
            img.coeff(i) = apply_matrix(theta, D.apply(psi[i]));
            pre.coeff(i) = apply_matrix(*theta_inv, D.apply(phi[i]));
        }
        auto f = L.coordinates(img);
        auto b = L.coordinates(pre);
        if (!f || !b) {
            Certification r;
            r.status = Certification::Status::LeavesAlgebra;
            r.message = "conjugate of basis vector " + std::to_string(k) + " is not in " + L.name();
            return r;
        }
        forward[k] = std::move(*f);
        backward[k] = std::move(*b);
    }
    return certify(L, std::move(forward), std::move(backward));
}

Certification substitution_auto_W(const CartanAlgebra& L, const std::vector<TruncPoly>& phi) {
    if (L.family() != Family::W) throw std::invalid_argument("substitution automorphisms are built for W(n) only");
    return substitution_auto(L, phi);
}

std::vector<TruncPoly> exponential_substitution(const CartanElement& y) {
    const Ring& R = y.ring();
    const auto& F = R.field();
    const std::uint32_t p = R.characteristic();
    std::vector<TruncPoly> phi;
    for (int k = 0; k < y.nvars(); ++k) {
        TruncPoly term = TruncPoly::variable(y.ring_ptr(), k);
        TruncPoly sum = term;
        Residue factorial = 1;
        for (std::uint32_t t = 1; t < p; ++t) {
            term = y.apply(term);
            if (term.is_zero()) break;
            factorial = F.mul(factorial, t);
            sum += term.scale(F.inv(factorial));
        }
        if (!term.is_zero() && !y.apply(term).is_zero()) throw std::invalid_argument("y does not act nilpotently of order p on A(n)");
        phi.push_back(std::move(sum));
    }
    return phi;
}

std::vector<TruncPoly> compose_substitutions(const std::vector<TruncPoly>& phi, const std::vector<TruncPoly>& psi) {
    if (phi.empty() || phi.size() != psi.size()) throw std::invalid_argument("substitution length mismatch");
    const Matrix theta = substitution_matrix(phi.front().ring(), phi);
    std::vector<TruncPoly> out;
    for (const auto& f : psi) out.push_back(apply_matrix(theta, f));
    return out;
}

std::vector<SparseVec> unipotent_g0_elements(const CartanAlgebra& L) {
    const int n = L.nvars();
    const auto& R = L.ring();
    std::vector<SparseVec> out;
    auto x = [&](int i) { return TruncPoly::variable(R, i); };
    switch (L.family()) {
        case Family::W:
        case Family::S:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) out.push_back(L.require_coordinates(CartanElement::monomial(R, MultiIndex::unit(n, i), j)));
            break;
        case Family::H: {
            const int m = n / 2;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    if (j != partner(i, m)) out.push_back(L.require_coordinates(d_h(x(i) * x(j))));
            break;
        }
        case Family::K: {
            const int m = (n - 1) / 2;
            for (int i = 0; i < 2 * m; ++i)
                for (int j = i; j < 2 * m; ++j)
                    if (j != partner(i, m)) out.push_back(L.require_coordinates(d_k(x(i) * x(j))));
            break;
        }
    }
    return out;
}

std::vector<LinearAuto> unipotent_g0_generators(const CartanAlgebra& L) {
    std::vector<LinearAuto> out;
    for (const auto& y : unipotent_g0_elements(L)) {
        auto cert = exp_ad(L, y);
        if (!cert.ok()) cert = substitution_auto(L, exponential_substitution(L.element(y)));
        out.push_back(cert.value());
    }
    return out;
}

}  // namespace cartan
