#pragma once

#include "tdual/integers.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tdual::abgroup {

// Dense integer matrix with exact entries. Row-major storage.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> data);

    // Builds from nested initializer data, e.g. {{2,4},{6,8}}.
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const = default;

    bool is_zero() const;
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix scaled(const Int& c) const;
    IntMatrix pow(unsigned long e) const; // square matrices only

    // [this | rhs] side by side; row counts must agree.
    IntMatrix augment_cols(const IntMatrix& rhs) const;
    IntMatrix submatrix(std::size_t row0, std::size_t col0,
                        std::size_t nrows, std::size_t ncols) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& c);
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& c);
    void negate_row(std::size_t i);

    // Exact determinant by fraction-free (Bareiss) elimination. Used by the
    // tests as an oracle independent of the normal-form code.
    Int determinant() const;

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

struct SmithDecomposition {
    IntMatrix U; // rows x rows, unimodular
    IntMatrix D; // diagonal, nonnegative, d1 | d2 | ...
    IntMatrix V; // cols x cols, unimodular
};

// U * M * V = D with D diagonal satisfying the divisibility chain.
// Pivot choice: smallest nonzero absolute value in the remaining block,
// ties broken in row-major order, so the output is deterministic.
SmithDecomposition smith_normal_form(const IntMatrix& m);

// Diagonal invariant factors only (no transform matrices); cheaper for
// homology ranks where U and V are never consulted.
std::vector<Int> smith_invariant_factors(IntMatrix m);

// Number of nonzero invariant factors = rank over Q.
std::size_t rank(const IntMatrix& m);

// Basis for the integer kernel lattice {x : M x = 0}, as matrix columns.
IntMatrix kernel_basis(const IntMatrix& m);

} // namespace tdual::abgroup
