#include "cartan/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace cartan {

SparseVec axpy(const SparseVec& y, Residue a, const SparseVec& x, const PrimeField& F) {
    if (a == 0 || x.empty()) return y;
    SparseVec out;
    out.reserve(y.size() + x.size());
    auto iy = y.begin(), ix = x.begin();
    while (iy != y.end() || ix != x.end()) {
        if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
            out.push_back(*iy++);
        } else if (iy == y.end() || ix->first < iy->first) {
            out.emplace_back(ix->first, F.mul(a, ix->second));
            ++ix;
        } else {
            Residue v = F.add(iy->second, F.mul(a, ix->second));
            if (v) out.emplace_back(iy->first, v);
            ++iy;
            ++ix;
        }
    }
    return out;
}

SparseVec scaled(const SparseVec& x, Residue a, const PrimeField& F) {
    SparseVec out;
    if (a == 0) return out;
    out.reserve(x.size());
    for (auto [k, v] : x) out.emplace_back(k, F.mul(v, a));
    return out;
}

SparseVec negated(const SparseVec& x, const PrimeField& F) { return scaled(x, F.modulus() - 1, F); }

Residue lookup(const SparseVec& x, std::uint32_t index) {
    auto it = std::lower_bound(x.begin(), x.end(), index, [](const SparseEntry& e, std::uint32_t i) { return e.first < i; });
    return (it != x.end() && it->first == index) ? it->second : 0;
}

SparseVec sparse_from_dense(const std::vector<Residue>& dense) {
    SparseVec out;
    for (std::uint32_t i = 0; i < dense.size(); ++i)
        if (dense[i]) out.emplace_back(i, dense[i]);
    return out;
}

std::vector<Residue> dense_from_sparse(const SparseVec& x, std::size_t size) {
    std::vector<Residue> out(size, 0);
    for (auto [k, v] : x) out.at(k) = v;
    return out;
}

SparseVec unit_vector(std::uint32_t index) { return {{index, 1}}; }

Residue dot(const SparseVec& x, const std::vector<Residue>& dense, const PrimeField& F) {
    Residue s = 0;
    for (auto [k, v] : x) s = F.add(s, F.mul(v, dense[k]));
    return s;
}

void Accumulator::add(const SparseVec& x, Residue scale) {
    if (scale == 0) return;
    for (auto [k, v] : x) add(k, field_->mul(v, scale));
}

SparseVec Accumulator::take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    out.reserve(touched_.size());
    for (auto k : touched_) {
        if (values_[k]) out.emplace_back(k, values_[k]);
        values_[k] = 0;
        mark_[k] = 0;
    }
    touched_.clear();
    return out;
}

SparseVec EchelonSpan::reduce(SparseVec w, SparseVec* combo) const {
    SparseVec remainder;
    while (!w.empty()) {
        auto lead = w.front();
        auto it = rows_.find(lead.first);
        if (it == rows_.end()) {
            // keep the unmatched leading entry aside and continue with the rest
            remainder.push_back(lead);
            w.erase(w.begin());
            continue;
        }
        const Residue c = lead.second;
        w = axpy(w, field_.neg(c), it->second.vec, field_);
        if (combo) *combo = axpy(*combo, c, it->second.combo, field_);
    }
    return remainder;
}

std::optional<std::size_t> EchelonSpan::insert(const SparseVec& v) {
    // independence is decided by the first leading entry without a pivot row
    SparseVec w = v;
    SparseVec combo = unit_vector(static_cast<std::uint32_t>(members_));
    while (!w.empty()) {
        auto it = rows_.find(w.front().first);
        if (it == rows_.end()) break;
        const Residue c = w.front().second;
        w = axpy(w, field_.neg(c), it->second.vec, field_);
        combo = axpy(combo, field_.neg(c), it->second.combo, field_);
    }
    if (w.empty()) return std::nullopt;
    const Residue lead_inv = field_.inv(w.front().second);
    const std::uint32_t pivot = w.front().first;
    rows_.emplace(pivot, Row{scaled(w, lead_inv, field_), scaled(combo, lead_inv, field_)});
    return members_++;
}

std::optional<SparseVec> EchelonSpan::coordinates(const SparseVec& w) const {
    SparseVec combo;
    SparseVec rest = reduce(w, &combo);
    if (!rest.empty()) return std::nullopt;
    return combo;
}

bool EchelonSpan::contains(const SparseVec& w) const { return reduce(w, nullptr).empty(); }

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& F) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Residue aik = a.at(i, k);
            if (!aik) continue;
            const Residue* brow = b.row(k);
            Residue* crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (brow[j]) crow[j] = F.add(crow[j], F.mul(aik, brow[j]));
        }
    return c;
}

std::vector<std::size_t> rref(Matrix& m, const PrimeField& F) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        const Residue inv = F.inv(m.at(r, c));
        Residue* prow = m.row(r);
        for (std::size_t j = c; j < m.cols(); ++j) prow[j] = F.mul(prow[j], inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            const Residue f = m.at(i, c);
            if (!f) continue;
            Residue* irow = m.row(i);
            const Residue nf = F.neg(f);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (prow[j]) irow[j] = F.add(irow[j], F.mul(nf, prow[j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(Matrix m, const PrimeField& F) { return rref(m, F).size(); }

std::optional<Matrix> inverse(const Matrix& m, const PrimeField& F) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto piv = rref(aug, F);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

std::optional<std::vector<Residue>> solve(const Matrix& a, const std::vector<Residue>& b, const PrimeField& F) {
    if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    auto piv = rref(aug, F);
    std::vector<Residue> x(a.cols(), 0);
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == a.cols()) return std::nullopt;
        x[piv[r]] = aug.at(r, a.cols());
    }
    return x;
}

std::vector<std::vector<Residue>> nullspace(const Matrix& a, const PrimeField& F) {
    Matrix m = a;
    auto piv = rref(m, F);
    std::vector<char> is_pivot(a.cols(), 0);
    for (auto c : piv) is_pivot[c] = 1;
    std::vector<std::vector<Residue>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Residue> v(a.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(m.at(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

bool RowSpace::insert(std::vector<Residue> row) {
    if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Residue f = row[pivots_[k]];
        if (!f) continue;
        const Residue nf = field_.neg(f);
        const auto& pr = rows_[k];
        for (std::size_t j = 0; j < cols_; ++j)
            if (pr[j]) row[j] = field_.add(row[j], field_.mul(nf, pr[j]));
    }
    std::size_t pivot = 0;
    while (pivot < cols_ && row[pivot] == 0) ++pivot;
    if (pivot == cols_) return false;
    const Residue inv = field_.inv(row[pivot]);
    for (auto& v : row) v = field_.mul(v, inv);
    // keep existing rows reduced against the new pivot
    for (auto& pr : rows_) {
        const Residue f = pr[pivot];
        if (!f) continue;
        const Residue nf = field_.neg(f);
        for (std::size_t j = 0; j < cols_; ++j)
            if (row[j]) pr[j] = field_.add(pr[j], field_.mul(nf, row[j]));
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
}

std::vector<std::vector<Residue>> RowSpace::kernel() const {
    std::vector<char> is_pivot(cols_, 0);
    for (auto c : pivots_) is_pivot[c] = 1;
    std::vector<std::vector<Residue>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Residue> v(cols_, 0);
        v[free] = 1;
        for (std::size_t k = 0; k < rows_.size(); ++k) v[pivots_[k]] = field_.neg(rows_[k][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace cartan
