#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cartan/field.hpp"

namespace cartan {

/// Sparse vector: entries sorted by index, no zero values.
using SparseEntry = std::pair<std::uint32_t, Residue>;
using SparseVec = std::vector<SparseEntry>;

/// y + a*x
SparseVec axpy(const SparseVec& y, Residue a, const SparseVec& x, const PrimeField& F);
SparseVec scaled(const SparseVec& x, Residue a, const PrimeField& F);
SparseVec negated(const SparseVec& x, const PrimeField& F);
Residue lookup(const SparseVec& x, std::uint32_t index);
SparseVec sparse_from_dense(const std::vector<Residue>& dense);
std::vector<Residue> dense_from_sparse(const SparseVec& x, std::size_t size);
SparseVec unit_vector(std::uint32_t index);
Residue dot(const SparseVec& x, const std::vector<Residue>& dense, const PrimeField& F);

/// Scatter-gather accumulator for building sparse vectors out of many
/// contributions without intermediate allocation.
class Accumulator {
public:
    Accumulator(std::size_t size, const PrimeField& F) : values_(size, 0), mark_(size, 0), field_(&F) {}

    void add(std::uint32_t index, Residue c) {
        if (c == 0) return;
        if (!mark_[index]) {
            mark_[index] = 1;
            touched_.push_back(index);
        }
        values_[index] = field_->add(values_[index], c);
    }
    void add(const SparseVec& x, Residue scale);
    /// Extracts the accumulated vector and resets the accumulator.
    SparseVec take();

private:
    std::vector<Residue> values_;
    std::vector<char> mark_;
    std::vector<std::uint32_t> touched_;
    const PrimeField* field_;
};

/// Incrementally built row echelon form over sparse vectors, remembering how
/// each pivot row combines the accepted input vectors. Used to express
/// elements of a span in coordinates against a chosen basis.
class EchelonSpan {
public:
    explicit EchelonSpan(const PrimeField& F) : field_(F) {}

    /// Adds v if it is independent of the current span; returns its member index.
    std::optional<std::size_t> insert(const SparseVec& v);
    /// Coordinates of w against the accepted vectors, or nullopt if w is outside the span.
    std::optional<SparseVec> coordinates(const SparseVec& w) const;
    bool contains(const SparseVec& w) const;
    std::size_t rank() const noexcept { return members_; }

private:
    struct Row {
        SparseVec vec;    // leading entry 1 at the pivot
        SparseVec combo;  // vec = sum combo[k] * member_k
    };
    /// Reduces w by leading terms; returns the remainder.
    SparseVec reduce(SparseVec w, SparseVec* combo) const;

    PrimeField field_;
    std::unordered_map<std::uint32_t, Row> rows_;
    std::size_t members_ = 0;
};

/// Dense row-major matrix over GF(p).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Residue& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Residue* row(std::size_t r) { return data_.data() + r * cols_; }
    const Residue* row(std::size_t r) const { return data_.data() + r * cols_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Residue> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& F);
/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, const PrimeField& F);
std::size_t rank(Matrix m, const PrimeField& F);
std::optional<Matrix> inverse(const Matrix& m, const PrimeField& F);
/// Some solution of A x = b (free variables zero), or nullopt if inconsistent.
std::optional<std::vector<Residue>> solve(const Matrix& a, const std::vector<Residue>& b, const PrimeField& F);
/// Basis of {x : A x = 0}.
std::vector<std::vector<Residue>> nullspace(const Matrix& a, const PrimeField& F);

/// Row space over a fixed number of columns, kept in reduced echelon form as
/// rows are streamed in. Memory is bounded by cols^2.
class RowSpace {
public:
    RowSpace(std::size_t cols, const PrimeField& F) : cols_(cols), field_(F) {}

    /// Returns true if the row enlarged the space.
    bool insert(std::vector<Residue> row);
    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    /// Basis of the orthogonal complement {x : r.x = 0 for every inserted row r}.
    std::vector<std::vector<Residue>> kernel() const;

private:
    std::size_t cols_;
    PrimeField field_;
    std::vector<std::vector<Residue>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace cartan
