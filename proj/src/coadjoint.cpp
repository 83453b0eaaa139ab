#include "cartan/coadjoint.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cartan {

Functional Functional::delta(const CartanAlgebra& L, std::size_t k, Residue c) {
    Functional f = zero(L);
    f.values_.at(k) = c % L.field().modulus();
    return f;
}

bool Functional::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](Residue v) { return v == 0; });
}

Functional add(const Functional& a, const Functional& b, const PrimeField& F) {
    if (a.size() != b.size()) throw std::invalid_argument("functionals of different length");
    std::vector<Residue> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = F.add(a[k], b[k]);
    return Functional(std::move(v));
}

Functional scale(const Functional& a, Residue c, const PrimeField& F) {
    std::vector<Residue> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = F.mul(a[k], c);
    return Functional(std::move(v));
}

Functional components(const CartanAlgebra& L, const Functional& chi, int lo, int hi) {
    Functional out = Functional::zero(L);
    for (std::size_t k = 0; k < L.dim(); ++k)
        if (L.degree(k) >= lo && L.degree(k) <= hi) out[k] = chi[k];
    return out;
}

Functional component(const CartanAlgebra& L, const Functional& chi, int d) { return components(L, chi, d, d); }

Functional negative_part(const CartanAlgebra& L, const Functional& chi) { return components(L, chi, L.min_degree(), -1); }

int top_degree(const CartanAlgebra& L, const Functional& chi) {
    int d = kMinusInfinity;
    for (std::size_t k = 0; k < L.dim(); ++k)
        if (chi[k]) d = std::max(d, L.degree(k));
    return d;
}

std::string to_string(const CartanAlgebra& L, const Functional& chi) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < L.dim(); ++k) {
        if (!chi[k]) continue;
        os << (first ? "" : " + ") << L.field().centered(chi[k]) << "*delta(" << to_string(L.basis(k)) << ")";
        first = false;
    }
    return first ? "0" : os.str();
}

Functional random_functional(const CartanAlgebra& L, std::mt19937_64& rng, std::optional<int> max_degree) {
    Functional f = Functional::zero(L);
    const std::uint32_t p = L.field().modulus();
    for (std::size_t k = 0; k < L.dim(); ++k) {
        const Residue v = static_cast<Residue>(rng() % p);
        if (!max_degree || L.degree(k) <= *max_degree) f[k] = v;
    }
    return f;
}

Functional random_rectifiable(const CartanAlgebra& L, std::mt19937_64& rng) {
    for (;;) {
        Functional f = random_functional(L, rng, 1);
        if (!component(L, f, 1).is_zero() && !negative_part(L, f).is_zero()) return f;
    }
}

Functional coadjoint_apply(const CartanAlgebra& L, const LinearAuto& g, const Functional& chi) {
    if (!g.certified) throw std::invalid_argument("coadjoint action needs a certified automorphism");
    if (chi.size() != L.dim() || g.inverse.size() != L.dim()) throw std::invalid_argument("size mismatch");
    std::vector<Residue> v(L.dim());
    for (std::size_t k = 0; k < L.dim(); ++k) v[k] = chi(g.inverse[k], L.field());
    return Functional(std::move(v));
}

namespace {

LinearAuto identity_auto(const CartanAlgebra& L) {
    LinearAuto g{identity_matrix(L.dim()), identity_matrix(L.dim()), true, identity_depth(L), true, true};
    return g;
}

TruncPoly mono(const CartanAlgebra& L, const MultiIndex& a) { return TruncPoly::monomial(L.ring(), a); }

std::optional<MultiIndex> valid_or_none(const MultiIndex& a, std::uint32_t p) {
    if (!a.valid(p)) return std::nullopt;
    return a;
}

MultiIndex bump(MultiIndex a, int i, int d) {
    a[i] += d;
    return a;
}

}  // namespace

std::vector<SparseVec> negative_frame(const CartanAlgebra& L) {
    std::vector<SparseVec> out;
    const int n = L.nvars();
    if (L.family() == Family::K) {
        const int m = (n - 1) / 2;
        for (int s = 0; s < 2 * m; ++s)
            out.push_back(L.require_coordinates(d_k(TruncPoly::variable(L.ring(), partner(s, m)))));
        out.push_back(L.require_coordinates(d_k(TruncPoly::constant(L.ring(), 1))));
    } else {
        for (int s = 0; s < n; ++s) out.push_back(L.require_coordinates(CartanElement::partial_op(L.ring(), s)));
    }
    return out;
}

namespace {

/// Shared state of one rectification run.
struct Rectifier {
    const CartanAlgebra& L;
    const PrimeField& F;
    Functional cur;
    RectifierResult res;

    Residue value(const SparseVec& u) const { return cur(u, F); }

    /// g = exp(ad cE)^{-1}, or nullopt when the exponential does not certify.
    std::optional<LinearAuto> step_auto(const SparseVec& E, Residue c) const {
        auto cert = exp_ad(L, scaled(E, c, F));
        if (!cert.ok()) return std::nullopt;
        return inverse(*cert.automorphism);
    }

    void commit(RectifierStep step, LinearAuto g, Functional next) {
        res.g = compose(L, g, res.g);
        step.g = std::move(g);
        cur = std::move(next);
        if (step.fallback) ++res.fallbacks;
        res.steps.push_back(std::move(step));
    }

    /// Tries the prescribed (E, c); on failure searches E over a basis of
    /// L_degree with c chosen to clear chi(z). `progress` judges the candidate.
    void run_step(RectifierStep step, const std::optional<SparseVec>& E, const SparseVec& z, int search_degree,
                  const std::function<bool(const Functional&)>& progress) {
        if (E) {
            const Residue k = value(L.bracket(*E, z));
            if (k != 0) {
                const Residue c = F.neg(F.div(value(z), k));
                if (auto g = step_auto(*E, c)) {
                    Functional next = coadjoint_apply(L, *g, cur);
                    if (progress(next)) {
                        step.E = *E;
                        step.c = c;
                        commit(std::move(step), std::move(*g), std::move(next));
                        return;
                    }
                }
            }
        }
        for (std::size_t idx : L.graded_component(search_degree)) {
            const SparseVec cand = unit_vector(static_cast<std::uint32_t>(idx));
            const Residue k = value(L.bracket(cand, z));
            if (k == 0) continue;
            const Residue c = F.neg(F.div(value(z), k));
            auto g = step_auto(cand, c);
            if (!g) continue;
            Functional next = coadjoint_apply(L, *g, cur);
            if (!progress(next)) continue;
            step.E = cand;
            step.c = c;
            step.fallback = true;
            commit(std::move(step), std::move(*g), std::move(next));
            return;
        }
        throw std::runtime_error("rectifier: no certified step clears " + step.target);
    }
};

}  // namespace

RectifierResult rectify(const CartanAlgebra& L, const Functional& chi) {
    const auto& F = L.field();
    if (chi.size() != L.dim()) throw std::invalid_argument("functional length does not match the algebra");
    if (top_degree(L, chi) != 1) throw std::invalid_argument("rectify needs chi in L*_{<=1} with chi_1 != 0");

    Rectifier R{L, F, chi, {}};
    R.res.g = identity_auto(L);
    if (negative_part(L, chi).is_zero()) {
        R.res.result = chi;
        return std::move(R.res);
    }

    // minimal alternate degree t with chi(L_1 ∩ L_[t]) != 0, and x there with chi(x) != 0
    std::optional<std::size_t> kx;
    for (std::size_t k : L.graded_component(1))
        if (chi[k] && (!kx || L.degree(k, Grading::Alternate) < L.degree(*kx, Grading::Alternate))) kx = k;
    const int t = L.degree(*kx, Grading::Alternate);
    const AssociatedMap D = L.label(*kx).map;
    MultiIndex beta = L.label(*kx).alpha;
    const std::uint32_t p = L.characteristic();
    const int n = L.nvars();
    const auto frame = negative_frame(L);

    auto image = [&](const std::optional<MultiIndex>& a) -> std::optional<SparseVec> {
        if (!a) return std::nullopt;
        return L.require_coordinates(D(mono(L, *a)));
    };
    auto make_step = [&](std::string target, int l) {
        RectifierStep s;
        s.target = std::move(target);
        s.t = t;
        s.map_tag = D.tag();
        s.beta = beta;
        s.l = l;
        return s;
    };

    if (L.family() != Family::K) {
        auto pointer = [&](const Functional& f) {
            int l = -1;
            for (int s = 0; s < n; ++s)
                if (f(frame[s], F)) l = s;
            return l;
        };
        for (int l = pointer(R.cur); l >= 0; l = pointer(R.cur)) {
            auto E = image(valid_or_none(bump(beta, l, 1), p));
            if (E && (beta[l] + 1) % static_cast<int>(p) != 0) {
                // [E, d_l] = -(beta_l + 1) x
                const SparseVec want = scaled(unit_vector(static_cast<std::uint32_t>(*kx)), F.from_int(-(beta[l] + 1)), F);
                if (L.bracket(*E, frame[l]) != want)
                    throw StructuralError("[E, d_l] != -(beta_l + 1) x for " + D.tag() + to_string(beta));
            } else {
                E.reset();
            }
            R.run_step(make_step("d_" + std::to_string(l + 1), l), E, frame[l], 2,
                       [&](const Functional& f) { return pointer(f) < l; });
        }
    } else {
        const int m = (n - 1) / 2, last = n - 1;
        std::vector<SparseVec> dkx(2 * m);
        for (int s = 0; s < 2 * m; ++s) dkx[s] = L.require_coordinates(d_k(TruncPoly::variable(L.ring(), s)));
        const SparseVec dk1 = frame.back();
        auto pointer = [&](const Functional& f) {
            for (int s = 0; s < 2 * m; ++s)
                if (f(dkx[s], F)) return s;
            return 2 * m;
        };
        for (int l = pointer(R.cur); l < 2 * m; l = pointer(R.cur)) {
            const int lp = partner(l, m);
            bool replaced = false;
            if (beta[last] >= 1) {
                MultiIndex gamma = bump(bump(bump(beta, l, 1), lp, 1), last, -1);
                if (gamma.valid(p)) {
                    const SparseVec w = L.require_coordinates(d_k(mono(L, gamma)));
                    if (R.value(w)) {
                        beta = gamma;
                        replaced = true;
                    }
                }
            }
            auto E = image(valid_or_none(bump(beta, lp, 1), p));
            RectifierStep step = make_step("D_K(x" + std::to_string(l + 1) + ")", l);
            step.beta_replaced = replaced;
            R.run_step(std::move(step), E, dkx[l], 2, [&](const Functional& f) { return pointer(f) > l; });
        }
        if (R.value(dk1)) {
            auto E = image(valid_or_none(bump(beta, last, 1), p));
            R.run_step(make_step("D_K(1)", -1), E, dk1, 3, [&](const Functional& f) {
                return pointer(f) == 2 * m && f(dk1, F) == 0;
            });
        }
    }

    R.res.result = R.cur;
    if (!(R.cur == components(L, chi, 0, 1))) throw StructuralError("rectifier output differs from chi_0 + chi_1");
    if (!(coadjoint_apply(L, R.res.g, chi) == R.cur)) throw StructuralError("composed rectifier map disagrees with its steps");
    if (R.res.g.filtration_depth < 2) throw StructuralError("composed rectifier map is not in G_2");
    return std::move(R.res);
}

OrbitPoint orbit_scale(const CartanAlgebra& L, const Functional& chi, Residue t) {
    const auto& F = L.field();
    t %= F.modulus();
    if (t == 0) throw std::invalid_argument("orbit scaling needs t != 0 (t = 0 is a limit point, not an orbit member)");
    RectifierResult r = rectify(L, chi);
    OrbitPoint out;
    out.g = compose(L, torus_auto(L, F.inv(t)), r.g);
    out.value = coadjoint_apply(L, out.g, chi);
    const Functional want = add(component(L, chi, 0), scale(component(L, chi, 1), t, F), F);
    if (!(out.value == want)) throw StructuralError("torus-scaled rectifier output differs from chi_0 + t chi_1");
    return out;
}

std::string to_string(FlattenResult::Status s) {
    switch (s) {
        case FlattenResult::Status::AlreadyFlat: return "already flat";
        case FlattenResult::Status::Flattened: return "flattened";
        case FlattenResult::Status::FallbackFlattened: return "flattened by fallback search";
        case FlattenResult::Status::NotWitnessed: return "not witnessed";
    }
    return "?";
}

namespace {

AssociatedMap flattening_map(Family f) {
    switch (f) {
        case Family::W: return {AssociatedMap::Kind::Witt, 0, -1};
        case Family::S: return {AssociatedMap::Kind::Special, 0, 1};
        case Family::H: return {AssociatedMap::Kind::Hamiltonian, -1, -1};
        case Family::K: return {AssociatedMap::Kind::Contact, -1, -1};
    }
    return {};
}

bool all_empty(const SparseMatrix& m) {
    return std::all_of(m.begin(), m.end(), [](const SparseVec& c) { return c.empty(); });
}

}  // namespace

Flattener::Flattener(const CartanAlgebra& L) : L_(&L) {
    const auto& F = L.field();
    const int n = L.nvars();
    const auto tau = MultiIndex::top(n, L.characteristic());
    const AssociatedMap D = flattening_map(L.family());
    for (int i = 0; i < n; ++i) {
        ys_.push_back(L.require_coordinates(D(TruncPoly::monomial(L.ring(), bump(tau, i, -1)))));
        ad_ys_.push_back(ad_matrix(L, ys_.back()));
    }
    zs_ = negative_frame(L);

    for (int i = 0; i < n && supported_; ++i)
        for (int j = 0; j < n && supported_; ++j)
            if (!all_empty(compose(ad_ys_[i], ad_ys_[j], F))) {
                supported_ = false;
                note_ = "ad Y_" + std::to_string(i + 1) + " ad Y_" + std::to_string(j + 1) + " != 0";
            }
    // [(ad y)u, (ad y)v] = 0 for all y in the span: the symmetrized pairings vanish
    std::vector<std::vector<std::size_t>> support(n);
    for (int i = 0; i < n; ++i)
        for (std::size_t u = 0; u < L.dim(); ++u)
            if (!ad_ys_[i][u].empty()) support[i].push_back(u);
    for (int i = 0; i < n && supported_; ++i)
        for (int j = i; j < n && supported_; ++j) {
            std::vector<std::size_t> us = support[i];
            us.insert(us.end(), support[j].begin(), support[j].end());
            std::sort(us.begin(), us.end());
            us.erase(std::unique(us.begin(), us.end()), us.end());
            for (std::size_t a = 0; a < us.size() && supported_; ++a)
                for (std::size_t b = a + 1; b < us.size() && supported_; ++b) {
                    const std::size_t u = us[a], v = us[b];
                    SparseVec s = axpy(L.bracket(ad_ys_[i][u], ad_ys_[j][v]), 1, L.bracket(ad_ys_[j][u], ad_ys_[i][v]), F);
                    if (!s.empty()) {
                        supported_ = false;
                        note_ = "[(ad y)u, (ad y)v] != 0 for u = " + to_string(L.basis(u)) + ", v = " + to_string(L.basis(v));
                    }
                }
        }
    if (supported_) note_ = "(ad y)^2 = 0 and [(ad y)u, (ad y)v] = 0 on the whole span";
}

Matrix Flattener::b_matrix(const Functional& chi) const {
    const auto& L = *L_;
    const std::size_t n = ys_.size();
    Matrix B(n, n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t i = 0; i < n; ++i) B.at(s, i) = chi(L.bracket(zs_[s], ys_[i]), L.field());
    return B;
}

FlattenResult Flattener::flatten(const Functional& chi, bool full_certify) const {
    const auto& L = *L_;
    const auto& F = L.field();
    FlattenResult out;
    if (negative_part(L, chi).is_zero()) {
        out.status = FlattenResult::Status::AlreadyFlat;
        out.g = identity_auto(L);
        out.result = chi;
        return out;
    }
    if (!supported_) return fallback(chi);

    const std::size_t n = ys_.size();
    const auto Binv = inverse(b_matrix(chi), F);
    if (!Binv) {
        out.status = FlattenResult::Status::NotWitnessed;
        out.result = chi;
        out.message = "B is singular";
        return out;
    }
    out.a.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < n; ++s) out.a[i] = F.add(out.a[i], F.mul(Binv->at(i, s), chi(zs_[s], F)));

    SparseMatrix ad(L.dim());
    for (std::size_t i = 0; i < n; ++i) {
        out.y = axpy(out.y, out.a[i], ys_[i], F);
        for (std::size_t k = 0; k < L.dim(); ++k) ad[k] = axpy(ad[k], out.a[i], ad_ys_[i][k], F);
    }
    if (!all_empty(compose(ad, ad, F))) throw StructuralError("(ad y)^2 != 0 for the flattening element");
    SparseMatrix fwd(L.dim()), bwd(L.dim());
    for (std::size_t k = 0; k < L.dim(); ++k) {
        const SparseVec e = unit_vector(static_cast<std::uint32_t>(k));
        fwd[k] = axpy(e, 1, ad[k], F);
        bwd[k] = axpy(e, F.neg(1), ad[k], F);
    }
    if (full_certify) {
        for (std::size_t u = 0; u < L.dim(); ++u)
            for (std::size_t v = u + 1; v < L.dim(); ++v)
                if (!ad[u].empty() && !ad[v].empty() && !L.bracket(ad[u], ad[v]).empty())
                    throw StructuralError("[(ad y)u, (ad y)v] != 0 for the flattening element");
        auto cert = certify(L, std::move(fwd), std::move(bwd));
        if (!cert.ok()) throw StructuralError("id + ad y failed certification: " + cert.message);
        out.g = std::move(*cert.automorphism);
    } else {
        out.g = LinearAuto{std::move(fwd), std::move(bwd), true, 0, false, false};
        analyze_filtration(L, out.g);
    }
    out.result = coadjoint_apply(L, inverse(out.g), chi);
    if (!negative_part(L, out.result).is_zero()) throw StructuralError("flattened functional has a negative part");
    out.status = FlattenResult::Status::Flattened;
    return out;
}

FlattenResult Flattener::fallback(const Functional& chi) const {
    const auto& L = *L_;
    FlattenResult out;
    out.result = chi;
    std::vector<LinearAuto> gens;
    const std::uint32_t p = L.characteristic();
    for (std::size_t k = 0; k < L.dim(); ++k) {
        if (L.degree(k) < 1) continue;
        for (Residue c = 1; c < p; ++c) {
            auto cert = exp_ad(L, {{static_cast<std::uint32_t>(k), c}});
            if (cert.ok()) gens.push_back(std::move(*cert.automorphism));
        }
    }
    auto accept = [&](const LinearAuto& h) {
        // h.chi flat means g = h^{-1} has (g^{-1}.chi)_- = 0
        Functional f = coadjoint_apply(L, h, chi);
        if (!negative_part(L, f).is_zero()) return false;
        out.status = FlattenResult::Status::FallbackFlattened;
        out.g = inverse(h);
        out.result = std::move(f);
        out.message = "fallback search: " + note_;
        return true;
    };
    for (const auto& h : gens)
        if (accept(h)) return out;
    for (const auto& h1 : gens)
        for (const auto& h2 : gens)
            if (accept(compose(L, h2, h1))) return out;
    out.status = FlattenResult::Status::NotWitnessed;
    out.message = "fallback search over products of at most two exponentials found nothing (" + note_ + ")";
    return out;
}

Functional Flattener::witness_functional() const {
    const auto& L = *L_;
    const auto& F = L.field();
    const std::size_t n = ys_.size();
    std::vector<SparseVec> rows;
    std::vector<Residue> rhs;
    for (std::size_t s = 0; s < n; ++s) {
        rows.push_back(zs_[s]);
        rhs.push_back(1);
        for (std::size_t i = 0; i <= s; ++i) {
            rows.push_back(L.bracket(zs_[s], ys_[i]));
            rhs.push_back(s == i ? 1 : 0);
        }
    }
    Matrix A(rows.size(), L.dim());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto [k, c] : rows[r]) A.at(r, k) = c;
    if (rank(A, F) != rows.size()) throw StructuralError("witness conditions are dependent");
    auto sol = solve(A, rhs, F);
    if (!sol) throw StructuralError("witness conditions are inconsistent");
    return Functional(std::move(*sol));
}

FlattenResult flatten_negative(const CartanAlgebra& L, const Functional& chi) { return Flattener(L).flatten(chi); }

InjectivityWitness injectivity_witness(const CartanAlgebra& L, WitnessForm form) {
    const auto& R = L.ring();
    const auto& F = L.field();
    const int n = L.nvars();
    auto x = [&](int i) { return TruncPoly::variable(R, i); };
    CartanElement w(R);
    switch (L.family()) {
        case Family::W:
        case Family::S:
            if (n == 1 || (L.family() == Family::W && form == WitnessForm::Corrected)) {
                for (int i = 0; i < n; ++i) w = w + d_i(x(i) * x(i), i);
                break;
            }
            for (int i = 0; i + 1 < n; ++i) {
                w = w + d_i(x(i) * x(i), i);
                w = w - d_i((x(n - 1) * x(i)).scale(2), n - 1);
            }
            break;
        case Family::H: {
            const int m = n / 2;
            for (int i = 0; i < 2 * m; ++i) w = w + d_i((x(i) * x(i)).scale(F.from_int(sigma(i, m))), partner(i, m));
            break;
        }
        case Family::K: {
            const int m = (n - 1) / 2;
            TruncPoly f(R);
            for (int s = 0; s < 2 * m; ++s) f += x(s) * x(s) * x(s);
            w = d_k(f);
            break;
        }
    }
    InjectivityWitness out{w, L.require_coordinates(w), 0, 0};
    EchelonSpan span(F);
    for (std::size_t k : L.graded_component(0)) {
        ++out.dim_l0;
        span.insert(L.bracket(out.coords, unit_vector(static_cast<std::uint32_t>(k))));
    }
    out.rank = span.rank();
    return out;
}

Functional lift_to_degree1(const CartanAlgebra& L, const Functional& chi0, const SparseVec& x) {
    const auto& F = L.field();
    const auto l0 = L.graded_component(0), l1 = L.graded_component(1);
    std::vector<std::size_t> pos(L.dim(), l1.size());
    for (std::size_t j = 0; j < l1.size(); ++j) pos[l1[j]] = j;
    Matrix A(l0.size(), l1.size());
    std::vector<Residue> rhs(l0.size());
    for (std::size_t s = 0; s < l0.size(); ++s) {
        for (auto [k, c] : L.bracket(x, unit_vector(static_cast<std::uint32_t>(l0[s])))) {
            if (pos[k] == l1.size()) throw std::invalid_argument("x is not homogeneous of degree 1");
            A.at(s, pos[k]) = c;
        }
        rhs[s] = chi0[l0[s]];
    }
    auto sol = solve(A, rhs, F);
    if (!sol) throw StructuralError("degree-1 lift is unsolvable: (ad x)|L_0 is not injective");
    Functional chi = Functional::zero(L);
    for (std::size_t j = 0; j < l1.size(); ++j) chi[l1[j]] = (*sol)[j];
    for (std::size_t s = 0; s < l0.size(); ++s)
        if (chi(L.bracket(x, unit_vector(static_cast<std::uint32_t>(l0[s]))), F) != rhs[s])
            throw StructuralError("degree-1 lift fails on substitution");
    return chi;
}

}  // namespace cartan
