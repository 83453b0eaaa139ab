#include "cartan/checks.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace cartan {

namespace {

class Timer {
public:
    explicit Timer(CheckResult& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
    ~Timer() { r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    CheckResult& r_;
    std::chrono::steady_clock::time_point start_;
};

CheckResult make(std::string name, std::string anchor) {
    CheckResult r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    return r;
}

void summarize(CheckResult& r) {
    if (r.passed) r.detail = std::to_string(r.checked) + " checked, 0 failures";
}

std::string pair_text(const CartanAlgebra& L, std::size_t i, std::size_t j) {
    return "[" + to_string(L.basis(i)) + ", " + to_string(L.basis(j)) + "]";
}

/// x^a when a is a valid index, zero otherwise (exponent p or negative).
TruncPoly mono_or_zero(const RingPtr& R, const std::vector<int>& a, Residue c) {
    MultiIndex m = MultiIndex::zero(R->nvars());
    for (int i = 0; i < R->nvars(); ++i) {
        if (a[i] < 0 || a[i] >= static_cast<int>(R->characteristic())) return TruncPoly(R);
        m[i] = a[i];
    }
    return TruncPoly::monomial(R, m, c);
}

std::vector<int> shifted(const MultiIndex& a, std::initializer_list<std::pair<int, int>> moves) {
    std::vector<int> v(a.size());
    for (int i = 0; i < a.size(); ++i) v[i] = a[i];
    for (auto [i, d] : moves) v[i] += d;
    return v;
}

std::vector<SparseVec> ad_power_columns(const CartanAlgebra& L, const SparseVec& u, std::uint32_t power) {
    std::vector<SparseVec> cols(L.dim());
    for (std::size_t k = 0; k < L.dim(); ++k) {
        SparseVec v = unit_vector(static_cast<std::uint32_t>(k));
        for (std::uint32_t e = 0; e < power && !v.empty(); ++e) v = L.bracket(u, v);
        cols[k] = std::move(v);
    }
    return cols;
}

}  // namespace

CheckResult check_dimension(const CartanAlgebra& L) {
    CheckResult r = make("dimension", "dimension table");
    Timer t(r);
    const std::size_t want = expected_dimension(L.family(), L.nvars(), L.characteristic());
    r.checked = 1;
    if (L.dim() != want) r.fail("dim " + std::to_string(L.dim()) + ", expected " + std::to_string(want));
    else r.detail = "dim " + std::to_string(L.dim());
    return r;
}

CheckResult check_antisymmetry(const CartanAlgebra& L) {
    CheckResult r = make("antisymmetry", "bracket antisymmetry and Witt bracket formula");
    Timer t(r);
    const auto& F = L.field();
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i; j < L.dim(); ++j) {
            ++r.checked;
            SparseVec ij(L.bracket(i, j).begin(), L.bracket(i, j).end());
            SparseVec ji(L.bracket(j, i).begin(), L.bracket(j, i).end());
            if (ij != negated(ji, F)) {
                r.fail("table " + pair_text(L, i, j) + " != -table " + pair_text(L, j, i));
                continue;
            }
            auto direct = L.coordinates(witt_bracket(L.basis(j), L.basis(i)));
            if (!direct || *direct != ji) r.fail("polynomial bracket disagrees with table at " + pair_text(L, j, i));
        }
    summarize(r);
    return r;
}

CheckResult check_jacobi(const CartanAlgebra& L, std::size_t samples, std::uint64_t seed, std::size_t exhaustive_limit) {
    CheckResult r = make("jacobi", "Jacobi identity");
    Timer t(r);
    const auto& F = L.field();
    const std::size_t dim = L.dim();
    auto test = [&](std::size_t i, std::size_t j, std::size_t k) {
        ++r.checked;
        const SparseVec u = unit_vector(i), v = unit_vector(j), w = unit_vector(k);
        SparseVec s = L.bracket(L.bracket(u, v), w);
        s = axpy(s, 1, L.bracket(L.bracket(v, w), u), F);
        s = axpy(s, 1, L.bracket(L.bracket(w, u), v), F);
        if (!s.empty())
            r.fail("triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
    };
    if (dim <= exhaustive_limit) {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                for (std::size_t k = j + 1; k < dim; ++k) test(i, j, k);
        summarize(r);
        r.detail += " (exhaustive)";
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t s = 0; s < samples; ++s) test(rng() % dim, rng() % dim, rng() % dim);
        summarize(r);
        r.detail += " (random, seed " + std::to_string(seed) + ")";
    }
    return r;
}

CheckResult check_gradings(const CartanAlgebra& L) {
    CheckResult r = make("gradings", "standard and alternate gradings respected by the bracket");
    Timer t(r);
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j)
            for (Grading g : {Grading::Standard, Grading::Alternate}) {
                ++r.checked;
                const int d = L.degree(i, g) + L.degree(j, g);
                for (auto [k, c] : L.bracket(i, j))
                    if (L.degree(k, g) != d) {
                        r.fail(pair_text(L, i, j) + " has a term outside degree " + std::to_string(d) +
                               (g == Grading::Standard ? " (standard)" : " (alternate)"));
                        break;
                    }
            }
    summarize(r);
    return r;
}

CheckResult check_membership(const CartanAlgebra& L) {
    CheckResult r = make("membership", "family membership of basis vectors");
    Timer t(r);
    const int n = L.nvars();
    for (std::size_t k = 0; k < L.dim(); ++k) {
        ++r.checked;
        const CartanElement& u = L.basis(k);
        switch (L.family()) {
            case Family::W: break;
            case Family::S:
                if (!divergence(u).is_zero()) r.fail("nonzero divergence of " + to_string(u));
                break;
            case Family::H: {
                const int m = n / 2;
                const auto& F = L.field();
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        TruncPoly lhs = partial(u.coeff(i), j).scale(F.from_int(sigma(i, m)));
                        TruncPoly rhs = partial(u.coeff(partner(j, m)), partner(i, m)).scale(F.from_int(sigma(partner(j, m), m)));
                        if (!(lhs == rhs)) {
                            r.fail("Hamiltonian condition fails for " + to_string(u) + " at (" + std::to_string(i + 1) +
                                   ", " + std::to_string(j + 1) + ")");
                            i = n;
                            break;
                        }
                    }
                break;
            }
            case Family::K:
                if (!(u == d_k(TruncPoly::monomial(L.ring(), L.label(k).alpha))))
                    r.fail(to_string(u) + " is not D_K of its label");
                break;
        }
    }
    summarize(r);
    return r;
}

CheckResult check_map_degrees(const CartanAlgebra& L) {
    CheckResult r = make("map_degrees", "alternate degree of associated maps");
    Timer t(r);
    const int n = L.nvars();
    for (const auto& D : associated_maps(L.family(), n))
        for (const auto& b : enumerate_monomials(n, L.characteristic())) {
            ++r.checked;
            CartanElement u = D(TruncPoly::monomial(L.ring(), b));
            const int want = degree(b, DegreeKind::Alternate) + D.alternate_shift(n);
            if (!u.homogeneous(DegreeKind::Alternate, want))
                r.fail(D.tag() + to_string(b) + " not homogeneous of alternate degree " + std::to_string(want));
        }
    summarize(r);
    return r;
}

CheckResult check_restricted(const CartanAlgebra& L, std::size_t samples, std::uint64_t seed, std::size_t exhaustive_limit) {
    CheckResult r = make("restricted", "ad of the p-map equals the p-th power of ad");
    Timer t(r);
    std::vector<std::size_t> which;
    if (L.dim() <= exhaustive_limit) {
        for (std::size_t k = 0; k < L.dim(); ++k) which.push_back(k);
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t s = 0; s < samples; ++s) which.push_back(rng() % L.dim());
    }
    for (std::size_t k : which) {
        ++r.checked;
        const auto lhs = ad_power_columns(L, L.pmap(k), 1);
        const auto rhs = ad_power_columns(L, unit_vector(k), L.characteristic());
        if (lhs != rhs) r.fail("basis vector " + to_string(L.basis(k)));
    }
    summarize(r);
    if (L.dim() > exhaustive_limit) r.detail += " (random basis vectors, seed " + std::to_string(seed) + ")";
    return r;
}

CheckResult check_negative_part(const CartanAlgebra& L) {
    CheckResult r = make("negative_part", "negative part of the grading");
    Timer t(r);
    const int n = L.nvars();
    std::vector<CartanElement> want;
    if (L.family() == Family::K) {
        want.push_back(d_k(TruncPoly::constant(L.ring(), 1)));
        for (int i = 0; i + 1 < n; ++i) want.push_back(d_k(TruncPoly::variable(L.ring(), i)));
    } else {
        for (int i = 0; i < n; ++i) want.push_back(CartanElement::partial_op(L.ring(), i));
    }
    std::vector<CartanElement> have;
    for (auto k : L.negative_part()) have.push_back(L.basis(k));
    r.checked = want.size();
    std::vector<CartanElement> both = have;
    both.insert(both.end(), want.begin(), want.end());
    if (have.size() != want.size() || span_rank(have) != want.size() || span_rank(both) != want.size())
        r.fail("negative part has dimension " + std::to_string(have.size()) + ", expected " + std::to_string(want.size()));
    if (L.family() == Family::K && L.graded_component(-2).size() != 1) r.fail("L_{-2} is not one-dimensional");
    summarize(r);
    return r;
}

std::vector<CheckResult> verify_contact_identities(const CartanAlgebra& L) {
    if (L.family() != Family::K) throw std::invalid_argument("contact identities need a contact algebra");
    const auto& R = L.ring();
    const auto& F = L.field();
    const int n = L.nvars(), m = (n - 1) / 2, last = n - 1;
    auto x = [&](int i) { return TruncPoly::variable(R, i); };
    const auto monos = enumerate_monomials(n, L.characteristic());

    std::vector<CheckResult> out;
    auto run = [&](std::string name, std::string anchor, auto&& body) {
        CheckResult r = make(std::move(name), std::move(anchor));
        {
            Timer t(r);
            for (const auto& a : monos) body(r, a);
        }
        summarize(r);
        out.push_back(std::move(r));
    };
    auto compare = [&](CheckResult& r, const TruncPoly& direct, const TruncPoly& closed, const std::string& what) {
        ++r.checked;
        if (!(direct == closed)) r.fail(what + ": bracket gives " + to_string(direct) + ", closed form " + to_string(closed));
    };
    const TruncPoly one = TruncPoly::constant(R, 1);

    run("contact_unit_printed", "unit bracket <1,x^a> = a_n x^(a-e_n) as printed", [&](CheckResult& r, const MultiIndex& a) {
        compare(r, contact_bracket(one, TruncPoly::monomial(R, a)), mono_or_zero(R, shifted(a, {{last, -1}}), a[last] % F.modulus()),
                "<1," + to_string(TruncPoly::monomial(R, a)) + ">");
    });
    run("contact_unit", "unit bracket <1,x^a> = 2 a_n x^(a-e_n)", [&](CheckResult& r, const MultiIndex& a) {
        compare(r, contact_bracket(one, TruncPoly::monomial(R, a)),
                mono_or_zero(R, shifted(a, {{last, -1}}), F.mul(2, a[last] % F.modulus())),
                "<1," + to_string(TruncPoly::monomial(R, a)) + ">");
    });
    run("contact_linear", "<x_i,x^a> = s(i) a_i' x^(a-e_i') + a_n x^(a+e_i-e_n)", [&](CheckResult& r, const MultiIndex& a) {
        for (int i = 0; i < 2 * m; ++i) {
            const int ip = partner(i, m);
            TruncPoly closed = mono_or_zero(R, shifted(a, {{ip, -1}}), F.mul(F.from_int(sigma(i, m)), a[ip])) +
                               mono_or_zero(R, shifted(a, {{i, 1}, {last, -1}}), a[last]);
            compare(r, contact_bracket(x(i), TruncPoly::monomial(R, a)), closed,
                    "<x" + std::to_string(i + 1) + "," + to_string(TruncPoly::monomial(R, a)) + ">");
        }
    });
    run("contact_degree", "<x_n,x^a> = ||a|| x^a", [&](CheckResult& r, const MultiIndex& a) {
        compare(r, contact_bracket(x(last), TruncPoly::monomial(R, a)),
                TruncPoly::monomial(R, a, F.from_int(degree(a, DegreeKind::Contact))),
                "<x" + std::to_string(n) + "," + to_string(TruncPoly::monomial(R, a)) + ">");
    });
    run("contact_quadratic", "<x_ix_j,x^a> = s(i) a_i' x^(a+e_j-e_i') + s(j) a_j' x^(a+e_i-e_j')",
        [&](CheckResult& r, const MultiIndex& a) {
            for (int i = 0; i < 2 * m; ++i)
                for (int j = 0; j < 2 * m; ++j) {
                    const int ip = partner(i, m), jp = partner(j, m);
                    TruncPoly closed = mono_or_zero(R, shifted(a, {{j, 1}, {ip, -1}}), F.mul(F.from_int(sigma(i, m)), a[ip])) +
                                       mono_or_zero(R, shifted(a, {{i, 1}, {jp, -1}}), F.mul(F.from_int(sigma(j, m)), a[jp]));
                    compare(r, contact_bracket(x(i) * x(j), TruncPoly::monomial(R, a)), closed,
                            "<x" + std::to_string(i + 1) + "x" + std::to_string(j + 1) + "," +
                                to_string(TruncPoly::monomial(R, a)) + ">");
                }
        });
    run("contact_toral", "<x_ix_i',x^a> = (a_i' - a_i) x^a", [&](CheckResult& r, const MultiIndex& a) {
        for (int i = 0; i < m; ++i) {
            const int ip = partner(i, m);
            compare(r, contact_bracket(x(i) * x(ip), TruncPoly::monomial(R, a)),
                    TruncPoly::monomial(R, a, F.from_int(static_cast<int>(a[ip]) - static_cast<int>(a[i]))),
                    "<x" + std::to_string(i + 1) + "x" + std::to_string(ip + 1) + "," + to_string(TruncPoly::monomial(R, a)) + ">");
        }
    });
    return out;
}

CheckResult check_contact_commutation(const CartanAlgebra& L) {
    if (L.family() != Family::K) throw std::invalid_argument("contact commutation needs a contact algebra");
    CheckResult r = make("contact_commutation", "[D_K(f), D_K(g)] = D_K(<f,g>)");
    Timer t(r);
    const auto monos = enumerate_monomials(L.nvars(), L.characteristic());
    std::vector<TruncPoly> fs;
    std::vector<CartanElement> images;
    for (const auto& a : monos) {
        fs.push_back(TruncPoly::monomial(L.ring(), a));
        images.push_back(d_k(fs.back()));
    }
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < fs.size(); ++j) {
            ++r.checked;
            if (!(witt_bracket(images[i], images[j]) == d_k(contact_bracket(fs[i], fs[j]))))
                r.fail("f = " + to_string(fs[i]) + ", g = " + to_string(fs[j]));
        }
    summarize(r);
    return r;
}

CheckResult intertwine_check(const CartanAlgebra& L, int s) {
    if (L.family() == Family::K) throw std::invalid_argument("the intertwining identity is not asserted for contact algebras");
    const int n = L.nvars();
    if (s >= n) throw std::out_of_range("derivative index out of range");
    CheckResult r = make("intertwining", "(ad d_s) D = D d_s for associated maps D");
    Timer t(r);
    const auto monos = enumerate_monomials(n, L.characteristic());
    for (int si = (s < 0 ? 0 : s); si < (s < 0 ? n : s + 1); ++si) {
        const CartanElement ds = CartanElement::partial_op(L.ring(), si);
        for (const auto& D : associated_maps(L.family(), n))
            for (const auto& a : monos) {
                ++r.checked;
                const TruncPoly f = TruncPoly::monomial(L.ring(), a);
                if (!(witt_bracket(ds, D(f)) == D(partial(f, si))))
                    r.fail("s = " + std::to_string(si + 1) + ", " + D.tag() + to_string(a));
            }
    }
    summarize(r);
    return r;
}

std::vector<CheckResult> structure_suite(const CartanAlgebra& L, std::uint64_t seed) {
    return {check_dimension(L),  check_antisymmetry(L), check_jacobi(L, 100000, seed), check_gradings(L),
            check_membership(L), check_map_degrees(L),  check_negative_part(L)};
}

}  // namespace cartan
