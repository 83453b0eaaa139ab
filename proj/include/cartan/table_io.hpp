#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartan/checks.hpp"

namespace cartan {

/// Plain-data form of a structure table, independent of CartanAlgebra, as
/// read from or written to JSON:
///   {"family","n","p","dim",
///    "basis":[{"map_tag","alpha","degree_std","degree_alt"}...],
///    "brackets":[[i,j,[[k,c]...]]...]   (i<j, nonzero only)
///    "pmap":[[i,[[k,c]...]]...]}        (nonzero only)
/// Coefficients are residues in [0,p).
struct TableData {
    struct BasisEntry {
        std::string map_tag;
        std::vector<int> alpha;
        int degree_std = 0;
        int degree_alt = 0;
        bool operator==(const BasisEntry&) const = default;
    };
    struct Bracket {
        std::uint32_t i = 0, j = 0;
        SparseVec value;
        bool operator==(const Bracket&) const = default;
    };

    Family family = Family::W;
    int n = 0;
    std::uint32_t p = 0;
    std::vector<BasisEntry> basis;
    std::vector<Bracket> brackets;
    std::vector<std::pair<std::uint32_t, SparseVec>> pmap;

    std::size_t dim() const noexcept { return basis.size(); }
    /// [b_i, b_j] from the stored upper triangle.
    SparseVec bracket(std::uint32_t i, std::uint32_t j) const;

    bool operator==(const TableData&) const = default;
};

TableData table_data(const CartanAlgebra& L);
/// Compact JSON with sorted keys and a trailing newline.
std::string to_json(const TableData& t);
std::string export_json(const CartanAlgebra& L);
/// Parses and validates the schema. Throws std::invalid_argument on malformed input.
TableData import_json(const std::string& text);

/// Rebuilds each basis element from its label (map_tag applied to x^alpha)
/// and compares `samples` seeded random pair brackets, computed from the
/// polynomial bracket, with the stored table.
CheckResult check_table_against_formula(const TableData& t, std::size_t samples = 100, std::uint64_t seed = 1);

}  // namespace cartan
