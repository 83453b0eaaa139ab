#include "cartan/invariants.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cartan {

PolyOnDual PolyOnDual::constant(std::size_t nvars, Residue c) { return monomial(nvars, {}, c); }

PolyOnDual PolyOnDual::variable(std::size_t nvars, std::uint32_t k) { return monomial(nvars, {k}, 1); }

PolyOnDual PolyOnDual::monomial(std::size_t nvars, Monomial m, Residue c) {
    for (auto k : m)
        if (k >= nvars) throw std::out_of_range("coordinate index out of range");
    std::sort(m.begin(), m.end());
    PolyOnDual f(nvars);
    if (c) f.terms_.emplace(std::move(m), c);
    return f;
}

Residue PolyOnDual::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void PolyOnDual::add_term(const Monomial& m, Residue c, const PrimeField& F) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second = F.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

int PolyOnDual::degree() const {
    int d = kMinusInfinity;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
    return d;
}

Residue PolyOnDual::evaluate(const Functional& chi, const PrimeField& F) const {
    Residue s = 0;
    for (const auto& [m, c] : terms_) {
        Residue t = c;
        for (auto k : m) t = F.mul(t, chi[k]);
        s = F.add(s, t);
    }
    return s;
}

PolyOnDual add(const PolyOnDual& a, const PolyOnDual& b, const PrimeField& F) {
    PolyOnDual r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c, F);
    return r;
}

PolyOnDual multiply(const PolyOnDual& a, const PolyOnDual& b, const PrimeField& F) {
    PolyOnDual r(a.nvars());
    PolyOnDual::Monomial prod;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            prod.clear();
            std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(prod));
            r.add_term(prod, F.mul(ca, cb), F);
        }
    return r;
}

PolyOnDual scale(const PolyOnDual& a, Residue c, const PrimeField& F) {
    PolyOnDual r(a.nvars());
    for (const auto& [m, v] : a.terms()) r.add_term(m, F.mul(v, c), F);
    return r;
}

std::string to_string(const CartanAlgebra& L, const PolyOnDual& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        os << (first ? "" : " + ") << L.field().centered(c);
        for (auto k : m) os << "*c(" << to_string(L.basis(k)) << ")";
        first = false;
    }
    return os.str();
}

int weight(const CartanAlgebra& L, const PolyOnDual::Monomial& m) {
    int w = 0;
    for (auto k : m) w += L.degree(k);
    return w;
}

PolyOnDual act(const CartanAlgebra& L, const LinearAuto& g, const PolyOnDual& f) {
    const auto& F = L.field();
    if (g.forward.size() != L.dim() || f.nvars() != L.dim()) throw std::invalid_argument("size mismatch");
    std::unordered_map<std::uint32_t, PolyOnDual> forms;
    auto form = [&](std::uint32_t k) -> const PolyOnDual& {
        auto it = forms.find(k);
        if (it != forms.end()) return it->second;
        PolyOnDual r(L.dim());
        for (auto [j, c] : g.forward[k]) r.add_term({j}, c, F);
        return forms.emplace(k, std::move(r)).first->second;
    };
    PolyOnDual out(L.dim());
    for (const auto& [m, c] : f.terms()) {
        PolyOnDual term = PolyOnDual::constant(L.dim(), c);
        for (auto k : m) term = multiply(term, form(k), F);
        out = add(out, term, F);
    }
    return out;
}

std::vector<PolyOnDual::Monomial> weight_zero_subspace(const CartanAlgebra& L, int d, std::size_t cap) {
    if (d < 0) throw std::invalid_argument("degree cap must be nonnegative");
    std::vector<PolyOnDual::Monomial> out;
    const int wmin = L.min_degree(), wmax = L.max_degree();
    PolyOnDual::Monomial cur;
    auto rec = [&](auto&& self, std::uint32_t start, int w) -> void {
        if (w == 0) {
            if (out.size() >= cap) throw std::length_error("weight-zero monomial count exceeds the cap");
            out.push_back(cur);
        }
        const int left = d - static_cast<int>(cur.size());
        if (left == 0) return;
        for (std::uint32_t k = start; k < L.dim(); ++k) {
            const int nw = w + L.degree(k);
            const int r = left - 1;
            // reachable: some further j <= r variables bring the weight back to 0
            if (nw > 0 && nw > r * -wmin) continue;
            if (nw < 0 && -nw > r * wmax) continue;
            cur.push_back(k);
            self(self, k, nw);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PolyOnDual> fixed_space(const CartanAlgebra& L, int d, const std::vector<LinearAuto>& generators) {
    const auto& F = L.field();
    const auto basis = weight_zero_subspace(L, d);
    const std::size_t cols = basis.size();
    RowSpace rows(cols, F);
    for (const auto& g : generators) {
        if (!g.certified) throw std::invalid_argument("fixed_space needs certified generators");
        // row per output monomial of (g - id) applied to the weight-zero basis
        std::map<PolyOnDual::Monomial, std::vector<Residue>> image_rows;
        for (std::size_t j = 0; j < cols; ++j) {
            PolyOnDual m = PolyOnDual::monomial(L.dim(), basis[j]);
            PolyOnDual diff = add(act(L, g, m), scale(m, F.neg(1), F), F);
            for (const auto& [mono, c] : diff.terms()) {
                auto& row = image_rows[mono];
                if (row.empty()) row.assign(cols, 0);
                row[j] = c;
            }
        }
        for (auto& [mono, row] : image_rows) rows.insert(std::move(row));
    }
    std::vector<PolyOnDual> out;
    for (const auto& v : rows.kernel()) {
        PolyOnDual f(L.dim());
        for (std::size_t j = 0; j < cols; ++j) f.add_term(basis[j], v[j], F);
        out.push_back(std::move(f));
    }
    return out;
}

GeneratorSet invariant_generators(const CartanAlgebra& L) {
    GeneratorSet set;
    for (auto& g : unipotent_g0_generators(L)) {
        set.autos.push_back(std::move(g));
        ++set.g0;
    }
    for (int d : {1, 2})
        for (std::size_t k : L.graded_component(d)) {
            auto cert = exp_ad(L, unit_vector(static_cast<std::uint32_t>(k)));
            if (!cert.ok()) {
                ++set.rejected;
                continue;
            }
            set.autos.push_back(std::move(*cert.automorphism));
            (d == 1 ? set.degree1 : set.degree2)++;
        }
    Flattener fl(L);
    if (fl.supported()) {
        const auto& F = L.field();
        for (const auto& y : fl.y_basis()) {
            const SparseMatrix ad = ad_matrix(L, y);
            SparseMatrix fwd(L.dim()), bwd(L.dim());
            for (std::size_t k = 0; k < L.dim(); ++k) {
                const SparseVec e = unit_vector(static_cast<std::uint32_t>(k));
                fwd[k] = axpy(e, 1, ad[k], F);
                bwd[k] = axpy(e, F.neg(1), ad[k], F);
            }
            auto cert = certify(L, std::move(fwd), std::move(bwd));
            if (!cert.ok()) {
                ++set.rejected;
                continue;
            }
            set.autos.push_back(std::move(*cert.automorphism));
            ++set.flattener;
        }
    }
    return set;
}

}  // namespace cartan
