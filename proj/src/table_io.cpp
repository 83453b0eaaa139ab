#include "cartan/table_io.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace cartan {

using nlohmann::json;

namespace {

json sparse_to_json(const SparseVec& v) {
    json out = json::array();
    for (auto [k, c] : v) out.push_back({k, c});
    return out;
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::uint32_t index_in(const json& j, std::size_t bound, const char* what) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= bound)
        throw std::invalid_argument(std::string("bad ") + what + " index");
    return j.get<std::uint32_t>();
}

SparseVec sparse_from_json(const json& j, std::size_t dim, std::uint32_t p) {
    if (!j.is_array()) throw std::invalid_argument("sparse vector must be an array");
    SparseVec v;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("sparse entry must be [index, coefficient]");
        const auto k = index_in(e[0], dim, "basis");
        if (!e[1].is_number_unsigned() || e[1].get<std::uint64_t>() == 0 || e[1].get<std::uint64_t>() >= p)
            throw std::invalid_argument("coefficient must be a nonzero residue");
        if (!v.empty() && v.back().first >= k) throw std::invalid_argument("sparse entries must be strictly increasing");
        v.emplace_back(k, e[1].get<Residue>());
    }
    return v;
}

}  // namespace

SparseVec TableData::bracket(std::uint32_t i, std::uint32_t j) const {
    if (i == j) return {};
    const bool swap = i > j;
    const std::uint32_t a = swap ? j : i, b = swap ? i : j;
    auto it = std::lower_bound(brackets.begin(), brackets.end(), std::pair{a, b},
                               [](const Bracket& x, std::pair<std::uint32_t, std::uint32_t> key) {
                                   return std::pair{x.i, x.j} < key;
                               });
    if (it == brackets.end() || it->i != a || it->j != b) return {};
    return swap ? negated(it->value, PrimeField(p)) : it->value;
}

TableData table_data(const CartanAlgebra& L) {
    TableData t;
    t.family = L.family();
    t.n = L.nvars();
    t.p = L.characteristic();
    for (std::size_t k = 0; k < L.dim(); ++k) {
        const auto& lab = L.label(k);
        std::vector<int> alpha(lab.alpha.size());
        for (int i = 0; i < lab.alpha.size(); ++i) alpha[i] = lab.alpha[i];
        t.basis.push_back({lab.map.tag(), std::move(alpha), L.degree(k), L.degree(k, Grading::Alternate)});
    }
    for (std::uint32_t i = 0; i < L.dim(); ++i)
        for (std::uint32_t j = i + 1; j < L.dim(); ++j) {
            auto s = L.bracket(i, j);
            if (!s.empty()) t.brackets.push_back({i, j, SparseVec(s.begin(), s.end())});
        }
    for (std::uint32_t k = 0; k < L.dim(); ++k)
        if (!L.pmap(k).empty()) t.pmap.emplace_back(k, L.pmap(k));
    return t;
}

std::string to_json(const TableData& t) {
    json j;
    j["family"] = to_string(t.family);
    j["n"] = t.n;
    j["p"] = t.p;
    j["dim"] = t.dim();
    json basis = json::array();
    for (const auto& b : t.basis)
        basis.push_back({{"map_tag", b.map_tag}, {"alpha", b.alpha}, {"degree_std", b.degree_std}, {"degree_alt", b.degree_alt}});
    j["basis"] = std::move(basis);
    json brackets = json::array();
    for (const auto& b : t.brackets) brackets.push_back({b.i, b.j, sparse_to_json(b.value)});
    j["brackets"] = std::move(brackets);
    json pmap = json::array();
    for (const auto& [k, v] : t.pmap) pmap.push_back({k, sparse_to_json(v)});
    j["pmap"] = std::move(pmap);
    return j.dump() + "\n";
}

std::string export_json(const CartanAlgebra& L) { return to_json(table_data(L)); }

TableData import_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    TableData t;
    try {
        t.family = parse_family(field(j, "family").get<std::string>());
        t.n = field(j, "n").get<int>();
        t.p = field(j, "p").get<std::uint32_t>();
        validate_parameters(t.family, t.n, t.p);
        const auto dim = field(j, "dim").get<std::size_t>();
        const auto& basis = field(j, "basis");
        if (!basis.is_array() || basis.size() != dim) throw std::invalid_argument("basis length differs from dim");
        for (const auto& b : basis) {
            TableData::BasisEntry e;
            e.map_tag = field(b, "map_tag").get<std::string>();
            AssociatedMap::parse(e.map_tag);
            e.alpha = field(b, "alpha").get<std::vector<int>>();
            if (static_cast<int>(e.alpha.size()) != t.n) throw std::invalid_argument("alpha has the wrong length");
            for (int a : e.alpha)
                if (a < 0 || a >= static_cast<int>(t.p)) throw std::invalid_argument("alpha entry out of range");
            e.degree_std = field(b, "degree_std").get<int>();
            e.degree_alt = field(b, "degree_alt").get<int>();
            t.basis.push_back(std::move(e));
        }
        for (const auto& b : field(j, "brackets")) {
            if (!b.is_array() || b.size() != 3) throw std::invalid_argument("bracket entry must be [i, j, value]");
            TableData::Bracket br{index_in(b[0], dim, "bracket"), index_in(b[1], dim, "bracket"),
                                  sparse_from_json(b[2], dim, t.p)};
            if (br.i >= br.j) throw std::invalid_argument("bracket entries need i < j");
            if (!t.brackets.empty() && std::pair{t.brackets.back().i, t.brackets.back().j} >= std::pair{br.i, br.j})
                throw std::invalid_argument("bracket entries must be sorted");
            t.brackets.push_back(std::move(br));
        }
        for (const auto& e : field(j, "pmap")) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("pmap entry must be [i, value]");
            const auto k = index_in(e[0], dim, "pmap");
            if (!t.pmap.empty() && t.pmap.back().first >= k) throw std::invalid_argument("pmap entries must be sorted");
            t.pmap.emplace_back(k, sparse_from_json(e[1], dim, t.p));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("schema error: ") + e.what());
    }
    return t;
}

CheckResult check_table_against_formula(const TableData& t, std::size_t samples, std::uint64_t seed) {
    CheckResult r;
    r.name = "table_formula";
    r.anchor = "imported structure constants equal polynomial brackets of the labelled basis";
    const auto start = std::chrono::steady_clock::now();
    const auto ring = Ring::get(t.n, t.p);
    const PrimeField& F = ring->field();
    std::vector<CartanElement> elems;
    EchelonSpan span(F);
    for (std::size_t k = 0; k < t.dim(); ++k) {
        const auto& b = t.basis[k];
        elems.push_back(AssociatedMap::parse(b.map_tag)(TruncPoly::monomial(ring, MultiIndex(b.alpha))));
        if (span.insert(elems.back().ambient()) != k) {
            r.fail("basis label " + std::to_string(k) + " is dependent on earlier ones");
            return r;
        }
    }
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples && t.dim() > 0; ++s) {
        const auto i = static_cast<std::uint32_t>(rng() % t.dim());
        const auto j = static_cast<std::uint32_t>(rng() % t.dim());
        ++r.checked;
        auto coords = span.coordinates(witt_bracket(elems[i], elems[j]).ambient());
        if (!coords) {
            r.fail("[b" + std::to_string(i) + ",b" + std::to_string(j) + "] leaves the labelled span");
            continue;
        }
        if (*coords != t.bracket(i, j))
            r.fail("[b" + std::to_string(i) + ",b" + std::to_string(j) + "] differs from the stored entry");
    }
    if (r.passed) r.detail = std::to_string(r.checked) + " pairs agree";
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace cartan
