#include "vablocks/sparse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace vablocks {

SparseVec sparse_normalize(SparseVec v) {
    std::map<int, Scalar> acc;
    for (auto& [c, x] : v) acc[c] += x;
    SparseVec out;
    out.reserve(acc.size());
    for (auto& [c, x] : acc)
        if (!is_zero(x)) out.emplace_back(c, x);
    return out;
}

void sparse_axpy(SparseVec& x, const Scalar& c, const SparseVec& y) {
    if (is_zero(c) || y.empty()) return;
    SparseVec out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(std::move(x[i++]));
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, c * y[j].second);
            ++j;
        } else {
            Scalar v = x[i].second + c * y[j].second;
            if (!is_zero(v)) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    x = std::move(out);
}

void SparseMatrix::set(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseMatrix::set index");
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        if (is_zero(v))
            row.erase(it);
        else
            it->second = v;
    } else if (!is_zero(v)) {
        row.insert(it, {c, v});
    }
}

void SparseMatrix::set_row(int r, SparseVec v) {
    if (r < 0 || r >= rows_) throw std::out_of_range("SparseMatrix::set_row index");
    v = sparse_normalize(std::move(v));
    if (!v.empty() && v.back().first >= cols_)
        throw std::out_of_range("SparseMatrix::set_row column");
    data_[r] = std::move(v);
}

RowEchelon::RowEchelon(int cols) : cols_(cols), pivot_of_col_(cols, -1) {}

SparseVec RowEchelon::residual(SparseVec row) const {
    size_t k = 0;
    while (k < row.size()) {
        int col = row[k].first;
        int pr = pivot_of_col_[col];
        if (pr < 0) {
            ++k; // pivot-free column stays; later columns can still reduce
            continue;
        }
        Scalar f = -row[k].second;
        sparse_axpy(row, f, pivot_rows_[pr]);
        // the pivot column is now eliminated; rescan from the front of the
        // suffix (axpy may have shuffled positions)
        k = 0;
        while (k < row.size() && pivot_of_col_[row[k].first] < 0) ++k;
    }
    return row;
}

bool RowEchelon::insert(SparseVec row) {
    row = sparse_normalize(std::move(row));
    if (!row.empty() && row.back().first >= cols_)
        throw std::out_of_range("RowEchelon::insert column");
    // standard reduction: eliminate leading entries that hit existing pivots
    while (!row.empty()) {
        int lead = row.front().first;
        int pr = pivot_of_col_[lead];
        if (pr < 0) break;
        Scalar f = -row.front().second;
        sparse_axpy(row, f, pivot_rows_[pr]);
    }
    if (row.empty()) return false;
    // normalize leading coefficient to 1
    Scalar inv = 1 / row.front().second;
    for (auto& [c, x] : row) x *= inv;
    pivot_of_col_[row.front().first] = static_cast<int>(pivot_rows_.size());
    pivot_rows_.push_back(std::move(row));
    return true;
}

std::vector<SparseVec> RowEchelon::kernel_basis() const {
    // back-substitute to reduced row echelon form
    std::vector<SparseVec> rref = pivot_rows_;
    std::vector<int> order; // pivot row indices sorted by pivot column
    for (int c = 0; c < cols_; ++c)
        if (pivot_of_col_[c] >= 0) order.push_back(pivot_of_col_[c]);
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
        const SparseVec& low = rref[order[i]];
        int pc = low.front().first;
        for (int j = 0; j < i; ++j) {
            SparseVec& hi = rref[order[j]];
            auto it = std::lower_bound(hi.begin(), hi.end(), pc,
                                       [](const auto& e, int col) { return e.first < col; });
            if (it != hi.end() && it->first == pc) {
                Scalar f = -it->second;
                sparse_axpy(hi, f, low);
            }
        }
    }
    std::vector<SparseVec> basis;
    for (int c = 0; c < cols_; ++c) {
        if (pivot_of_col_[c] >= 0) continue; // bound column
        SparseVec x;
        x.emplace_back(c, Scalar(1));
        for (int idx : order) {
            const SparseVec& r = rref[idx];
            auto it = std::lower_bound(r.begin(), r.end(), c,
                                       [](const auto& e, int col) { return e.first < col; });
            if (it != r.end() && it->first == c)
                x.emplace_back(r.front().first, -it->second);
        }
        basis.push_back(sparse_normalize(std::move(x)));
    }
    return basis;
}

int rank(const SparseMatrix& m) {
    RowEchelon ech(m.cols());
    for (int r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
    return ech.rank();
}

std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& m) {
    RowEchelon ech(m.cols());
    for (int r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
    std::vector<std::vector<Scalar>> out;
    for (const auto& v : ech.kernel_basis()) {
        std::vector<Scalar> dense(m.cols(), Scalar(0));
        for (const auto& [c, x] : v) dense[c] = x;
        out.push_back(std::move(dense));
    }
    return out;
}

} // namespace vablocks
