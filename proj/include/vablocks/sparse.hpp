#pragma once

#include <utility>
#include <vector>

#include "vablocks/rational.hpp"

namespace vablocks {

// Sparse vector: (column, coefficient) pairs, strictly increasing columns,
// no zero coefficients.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparse_normalize(SparseVec v);                  // sort, merge, drop zeros
void sparse_axpy(SparseVec& x, const Scalar& c, const SparseVec& y); // x += c*y

class SparseMatrix {
public:
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Scalar& v);
    const SparseVec& row(int r) const { return data_[r]; }
    void set_row(int r, SparseVec v);

private:
    int rows_, cols_;
    std::vector<SparseVec> data_;
};

// Streaming row-echelon accumulator over the rationals.  Rows may be fed one
// at a time; the rank is available at any point.  Pivot rows are kept with
// leading coefficient 1.
class RowEchelon {
public:
    explicit RowEchelon(int cols);

    // Reduces the row against the current echelon and inserts the remainder
    // if nonzero.  Returns true when the rank increased.
    bool insert(SparseVec row);

    // Reduce a row against the echelon without inserting it.
    SparseVec residual(SparseVec row) const;

    int rank() const { return static_cast<int>(pivot_rows_.size()); }
    int cols() const { return cols_; }

    // Basis of {x : M x = 0} where M has the inserted rows.  Performs the
    // back-substitution to reduced echelon form internally.
    std::vector<SparseVec> kernel_basis() const;

private:
    int cols_;
    // pivot column -> index into pivot_rows_
    std::vector<int> pivot_of_col_;
    std::vector<SparseVec> pivot_rows_; // each with leading coefficient 1
};

int rank(const SparseMatrix& m);

// Basis of the right null space; every returned x satisfies m*x = 0 exactly,
// and rank(m) + #basis = cols(m).
std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& m);

} // namespace vablocks
