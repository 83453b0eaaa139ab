#include "cartan/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace cartan {

std::string to_string(Family f) {
    switch (f) {
        case Family::W: return "W";
        case Family::S: return "S";
        case Family::H: return "H";
        case Family::K: return "K";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s.size() == 1) {
        switch (std::toupper(static_cast<unsigned char>(s[0]))) {
            case 'W': return Family::W;
            case 'S': return Family::S;
            case 'H': return Family::H;
            case 'K': return Family::K;
        }
    }
    throw std::invalid_argument("unknown family '" + s + "' (expected W, S, H or K)");
}

CartanElement AssociatedMap::operator()(const TruncPoly& f) const {
    switch (kind) {
        case Kind::Witt: return d_i(f, i);
        case Kind::Special: return d_ij(f, i, j);
        case Kind::Hamiltonian: return d_h(f);
        case Kind::Contact: return d_k(f);
    }
    throw std::logic_error("unreachable");
}

int AssociatedMap::alternate_shift(int n) const {
    switch (kind) {
        case Kind::Witt: return -(i + 1);
        case Kind::Special: return -(i + 1) - (j + 1);
        // x^{a-e_i} d_{i'} loses i + i' = 2m + 1 = n + 1 (1-based indices)
        case Kind::Hamiltonian: return -(n + 1);
        case Kind::Contact: return -n;
    }
    return 0;
}

std::string AssociatedMap::tag() const {
    switch (kind) {
        case Kind::Witt: return "D_" + std::to_string(i + 1);
        case Kind::Special: return "D_" + std::to_string(i + 1) + std::to_string(j + 1);
        case Kind::Hamiltonian: return "D_H";
        case Kind::Contact: return "D_K";
    }
    return "?";
}

AssociatedMap AssociatedMap::parse(const std::string& tag) {
    if (tag == "D_H") return {Kind::Hamiltonian, -1, -1};
    if (tag == "D_K") return {Kind::Contact, -1, -1};
    if (tag.size() == 3 && tag.rfind("D_", 0) == 0 && std::isdigit(static_cast<unsigned char>(tag[2])))
        return {Kind::Witt, tag[2] - '1', -1};
    if (tag.size() == 4 && tag.rfind("D_", 0) == 0 && std::isdigit(static_cast<unsigned char>(tag[2])) &&
        std::isdigit(static_cast<unsigned char>(tag[3])))
        return {Kind::Special, tag[2] - '1', tag[3] - '1'};
    throw std::invalid_argument("unknown associated map tag '" + tag + "'");
}

std::vector<AssociatedMap> associated_maps(Family family, int n) {
    std::vector<AssociatedMap> maps;
    switch (family) {
        case Family::W:
            for (int i = 0; i < n; ++i) maps.push_back({AssociatedMap::Kind::Witt, i, -1});
            break;
        case Family::S:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) maps.push_back({AssociatedMap::Kind::Special, i, j});
            break;
        case Family::H: maps.push_back({AssociatedMap::Kind::Hamiltonian, -1, -1}); break;
        case Family::K: maps.push_back({AssociatedMap::Kind::Contact, -1, -1}); break;
    }
    return maps;
}

StructureTable::StructureTable(std::size_t dim, const std::vector<SparseVec>& entries) : dim_(dim) {
    if (entries.size() != dim * dim) throw std::invalid_argument("structure table needs dim^2 entries");
    offsets_.resize(dim * dim + 1);
    std::size_t total = 0;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        offsets_[k] = static_cast<std::uint32_t>(total);
        total += entries[k].size();
    }
    offsets_.back() = static_cast<std::uint32_t>(total);
    entries_.reserve(total);
    for (const auto& e : entries) entries_.insert(entries_.end(), e.begin(), e.end());
}

std::string CartanAlgebra::name() const {
    std::ostringstream os;
    os << to_string(family_) << "(" << nvars() << "), p=" << characteristic();
    return os.str();
}

SparseVec CartanAlgebra::bracket(const SparseVec& a, const SparseVec& b) const {
    const auto& F = field();
    Accumulator acc(dim(), F);
    for (auto [i, ai] : a)
        for (auto [j, bj] : b) {
            const Residue c = F.mul(ai, bj);
            for (auto [k, t] : table_.at(i, j)) acc.add(k, F.mul(c, t));
        }
    return acc.take();
}

SparseVec CartanAlgebra::pmap_of(const SparseVec& u) const { return require_coordinates(p_power(element(u))); }

std::optional<SparseVec> CartanAlgebra::coordinates(const CartanElement& u) const {
    return span_->coordinates(u.ambient());
}

SparseVec CartanAlgebra::require_coordinates(const CartanElement& u) const {
    auto c = coordinates(u);
    if (!c) throw StructuralError("element " + to_string(u) + " is not in " + name());
    return *c;
}

CartanElement CartanAlgebra::element(const SparseVec& coords) const {
    CartanElement u(ring_);
    for (auto [k, c] : coords) u = u + basis_.at(k).scale(c);
    return u;
}

std::vector<std::size_t> CartanAlgebra::graded_component(int d, Grading g) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dim(); ++k)
        if (degree(k, g) == d) out.push_back(k);
    return out;
}

std::vector<std::size_t> CartanAlgebra::negative_part() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dim(); ++k)
        if (std_degree_[k] < 0) out.push_back(k);
    return out;
}

int CartanAlgebra::lowest_degree(const SparseVec& v) const {
    if (v.empty()) return kMinusInfinity;
    int d = std_degree_.at(v.front().first);
    for (auto [k, c] : v) d = std::min(d, std_degree_.at(k));
    return d;
}

void validate_parameters(Family family, int n, std::uint32_t p) {
    if (!is_prime(p) || p <= 3) throw std::invalid_argument("p must be a prime > 3");
    switch (family) {
        case Family::W:
            if (n < 1) throw std::invalid_argument("W(n) needs n >= 1");
            break;
        case Family::S:
            if (n < 2) throw std::invalid_argument("S(n) needs n >= 2");
            break;
        case Family::H:
            if (n < 4 || n % 2 != 0) throw std::invalid_argument("H(n) needs even n >= 4");
            break;
        case Family::K:
            if (n < 3 || n % 2 != 1) throw std::invalid_argument("K(n) needs odd n >= 3");
            break;
    }
    double size = 1;
    for (int i = 0; i < n; ++i) size *= p;
    if (size * n > 5000) throw std::invalid_argument("parameters too large for a dense structure table");
}

std::vector<BasisLabel> spanning_labels(Family family, int n, std::uint32_t p) {
    validate_parameters(family, n, p);
    const int top = n * (static_cast<int>(p) - 1);
    std::vector<BasisLabel> labels;
    auto monos = enumerate_monomials(n, p);
    switch (family) {
        case Family::W:
            for (const auto& a : monos)
                for (const auto& D : associated_maps(family, n)) labels.push_back({D, a});
            break;
        case Family::S:
            for (const auto& a : monos) {
                // S(2) is the second derived algebra: |a| < 2p - 2
                if (n == 2 && a.total() >= top) continue;
                for (const auto& D : associated_maps(family, n)) labels.push_back({D, a});
            }
            break;
        case Family::H:
            for (const auto& a : monos)
                if (a.total() > 0 && a.total() < top) labels.push_back({associated_maps(family, n)[0], a});
            break;
        case Family::K: {
            const bool drop_top = (n + 3) % static_cast<int>(p) == 0;
            const auto tau = MultiIndex::top(n, p);
            std::stable_sort(monos.begin(), monos.end(), [](const MultiIndex& a, const MultiIndex& b) {
                return degree(a, DegreeKind::Contact) < degree(b, DegreeKind::Contact);
            });
            for (const auto& a : monos)
                if (!(drop_top && a == tau)) labels.push_back({associated_maps(family, n)[0], a});
            break;
        }
    }
    return labels;
}

namespace {

int standard_degree_of(Family family, const MultiIndex& a) {
    switch (family) {
        case Family::W: return a.total() - 1;
        case Family::S:
        case Family::H: return a.total() - 2;
        case Family::K: return degree(a, DegreeKind::Contact);
    }
    return 0;
}

}  // namespace

CartanAlgebra build_algebra(Family family, int n, std::uint32_t p) {
    validate_parameters(family, n, p);
    CartanAlgebra L;
    L.family_ = family;
    L.ring_ = Ring::get(n, p);
    L.span_ = std::make_shared<EchelonSpan>(L.ring_->field());

    // Families other than S are spanned by independent images; S keeps the
    // first independent image in a fixed order.
    for (auto& lab : spanning_labels(family, n, p)) {
        CartanElement u = lab.map(TruncPoly::monomial(L.ring_, lab.alpha));
        if (u.is_zero()) {
            if (family == Family::S) continue;
            throw StructuralError("zero image for " + lab.map.tag() + to_string(lab.alpha));
        }
        if (!L.span_->insert(u.ambient())) {
            if (family == Family::S) continue;
            throw StructuralError("dependent image " + lab.map.tag() + to_string(lab.alpha));
        }
        L.std_degree_.push_back(standard_degree_of(family, lab.alpha));
        L.alt_degree_.push_back(degree(lab.alpha, DegreeKind::Alternate) + lab.map.alternate_shift(n));
        L.basis_.push_back(std::move(u));
        L.labels_.push_back(std::move(lab));
    }
    const std::size_t dim = L.basis_.size();
    L.min_degree_ = *std::min_element(L.std_degree_.begin(), L.std_degree_.end());
    L.max_degree_ = *std::max_element(L.std_degree_.begin(), L.std_degree_.end());

    const auto& F = L.field();
    std::vector<SparseVec> entries(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            auto c = L.span_->coordinates(witt_bracket(L.basis_[i], L.basis_[j]).ambient());
            if (!c) throw StructuralError("bracket of basis vectors " + std::to_string(i) + ", " + std::to_string(j) +
                                          " leaves " + L.name());
            entries[j * dim + i] = negated(*c, F);
            entries[i * dim + j] = std::move(*c);
        }
    L.table_ = StructureTable(dim, entries);

    L.pmap_.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) L.pmap_.push_back(L.require_coordinates(p_power(L.basis_[k])));
    return L;
}

std::vector<CartanElement> derived_subalgebra(const std::vector<CartanElement>& span) {
    std::vector<CartanElement> out;
    if (span.empty()) return out;
    EchelonSpan echelon(span.front().ring().field());
    for (std::size_t i = 0; i < span.size(); ++i)
        for (std::size_t j = i + 1; j < span.size(); ++j) {
            CartanElement b = witt_bracket(span[i], span[j]);
            if (!b.is_zero() && echelon.insert(b.ambient())) out.push_back(std::move(b));
        }
    return out;
}

std::size_t span_rank(const std::vector<CartanElement>& elements) {
    if (elements.empty()) return 0;
    EchelonSpan echelon(elements.front().ring().field());
    for (const auto& e : elements) echelon.insert(e.ambient());
    return echelon.rank();
}

std::size_t expected_dimension(Family family, int n, std::uint32_t p) {
    std::size_t pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    switch (family) {
        case Family::W: return static_cast<std::size_t>(n) * pn;
        case Family::S: return n == 2 ? pn - 2 : static_cast<std::size_t>(n - 1) * (pn - 1);
        case Family::H: return pn - 2;
        case Family::K: return (n + 3) % static_cast<int>(p) == 0 ? pn - 1 : pn;
    }
    return 0;
}

}  // namespace cartan
