#include "vablocks/current.hpp"

#include <algorithm>
#include <sstream>

namespace vablocks {

namespace {

// Gauss-Jordan inverse of a small dense matrix; throws if singular.
std::vector<std::vector<Scalar>> dense_inverse(std::vector<std::vector<Scalar>> m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!is_zero(m[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("dense_inverse: singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Scalar d = 1 / m[col][col];
        for (int c = 0; c < n; ++c) {
            m[col][c] *= d;
            inv[col][c] *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || is_zero(m[r][col])) continue;
            Scalar f = m[r][col];
            for (int c = 0; c < n; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

std::vector<Scalar> dense_column(const GradedVector& v, int weight, int dim) {
    std::vector<Scalar> col(dim, 0);
    for (const auto& [key, c] : v.entries())
        if (key.first == weight) col[key.second] = c;
    return col;
}

SparseVec column_to_sparse(const std::vector<Scalar>& col) {
    SparseVec s;
    for (int i = 0; i < static_cast<int>(col.size()); ++i)
        if (!is_zero(col[i])) s.emplace_back(i, col[i]);
    return s;
}

} // namespace

CurrentElement CurrentElement::from_symbol(const GradedVector& a, const std::map<long, Scalar>& f) {
    CurrentElement out;
    for (const auto& [e, fc] : f) {
        if (vablocks::is_zero(fc)) continue;
        for (const auto& [key, ac] : a.entries()) {
            GradedVector piece;
            piece.add(key.first, key.second, ac * fc);
            out.add(static_cast<int>(e) - key.first + 1, piece);
        }
    }
    return out;
}

std::string CurrentElement::render(const TruncatedVOA& voa) const {
    if (comps_.empty()) return "0";
    // group exponents per basis vector
    std::map<std::pair<int, int>, std::map<int, Scalar>> by_basis;
    for (const auto& [n, v] : comps_)
        for (const auto& [key, c] : v.entries())
            by_basis[key][n + key.first - 1] = c;
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [key, poly] : by_basis) {
        if (!first_term) os << " + ";
        first_term = false;
        os << "J(" << voa.basis_name(key.first, key.second) << ", ";
        bool first_mono = true;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
            if (!first_mono) os << " + ";
            first_mono = false;
            os << scalar_to_string(it->second) << "*xi^" << it->first;
        }
        os << ")";
    }
    return os.str();
}

CurrentAlgebra::CurrentAlgebra(const TruncatedVOA& voa) : voa_(&voa) {
    const int lmax = voa.l_max();
    wd_.resize(lmax + 1);
    offset_.resize(lmax + 2, 0);
    for (int w = 0; w <= lmax; ++w) offset_[w + 1] = offset_[w] + voa.dim(w);
    total_dim_ = offset_[lmax + 1];

    for (int k = 0; k <= lmax; ++k) {
        WeightData& wd = wd_[k];
        const int dim = voa.dim(k);
        if (dim == 0) continue;

        // columns of L_{-1}: V_{k-1} -> V_k
        std::vector<std::pair<int, std::vector<Scalar>>> img; // (source idx, column)
        if (k >= 1) {
            for (int j = 0; j < voa.dim(k - 1); ++j) {
                GradedVector c = voa.virasoro(-1, GradedVector::unit(k - 1, j));
                if (!c.is_zero()) img.emplace_back(j, dense_column(c, k, dim));
            }
        }
        // kernel of L_{-1}: V_k -> V_{k+1}, available below the cutoff
        std::vector<std::vector<Scalar>> ker;
        if (k < lmax && voa.dim(k) > 0) {
            SparseMatrix lm(voa.dim(k + 1), dim);
            for (int j = 0; j < dim; ++j) {
                GradedVector c = voa.virasoro(-1, GradedVector::unit(k, j));
                for (const auto& [key, s] : c.entries()) lm.set(key.second, j, s);
            }
            ker = kernel_basis(lm);
            wd.kernel_known = true;
        }

        auto build = [&](bool with_kernel, std::vector<std::vector<Scalar>>& inv,
                         std::vector<int>& preimage, int& nker, std::vector<int>& comp) {
            RowEchelon ech(dim);
            std::vector<std::vector<Scalar>> cols;
            for (const auto& [src, col] : img)
                if (ech.insert(column_to_sparse(col))) {
                    preimage.push_back(src);
                    cols.push_back(col);
                }
            nker = 0;
            if (with_kernel)
                for (const auto& kv : ker)
                    if (ech.insert(column_to_sparse(kv))) {
                        ++nker;
                        cols.push_back(kv);
                    }
            for (int j = 0; j < dim; ++j) {
                SparseVec unit{{j, Scalar(1)}};
                if (ech.insert(std::move(unit))) {
                    comp.push_back(j);
                    std::vector<Scalar> u(dim, 0);
                    u[j] = 1;
                    cols.push_back(std::move(u));
                }
            }
            // assemble square matrix with those columns and invert
            std::vector<std::vector<Scalar>> m(dim, std::vector<Scalar>(dim, 0));
            for (int c = 0; c < dim; ++c)
                for (int r = 0; r < dim; ++r) m[r][c] = cols[c][r];
            inv = dense_inverse(std::move(m));
        };

        int nker_img_unused = 0;
        build(true, wd.inv_full, wd.preimage_full, wd.nker_full, wd.comp_full);
        build(false, wd.inv_img, wd.preimage_img, nker_img_unused, wd.comp_img);
    }
}

void CurrentAlgebra::reduce_slice(int degree, GradedVector work, CurrentElement& out) const {
    const int lmax = voa_->l_max();
    if (work.max_grade() > lmax)
        throw TruncatedError("current component of weight " + std::to_string(work.max_grade()) +
                             " beyond l_max " + std::to_string(lmax));
    for (int k = work.max_grade(); k >= 0; --k) {
        GradedVector vk = work.slice(k);
        if (vk.is_zero()) continue;
        const WeightData& wd = wd_[k];
        const bool full = (degree + k != 0) && wd.kernel_known;
        const auto& inv = full ? wd.inv_full : wd.inv_img;
        const auto& preimage = full ? wd.preimage_full : wd.preimage_img;
        const auto& comp = full ? wd.comp_full : wd.comp_img;
        const int nimg = static_cast<int>(preimage.size());
        const int nker = full ? wd.nker_full : 0;
        const int dim = voa_->dim(k);

        std::vector<Scalar> dense = dense_column(vk, k, dim);
        // coefficients in column order [img | ker | complement]
        GradedVector keep;
        GradedVector pre;
        for (int row = 0; row < dim; ++row) {
            Scalar x(0);
            for (int c = 0; c < dim; ++c)
                if (!is_zero(dense[c])) x += inv[row][c] * dense[c];
            if (is_zero(x)) continue;
            if (row < nimg) {
                pre.add(k - 1, preimage[row], x);
            } else if (row < nimg + nker) {
                // kernel class vanishes in this degree
            } else {
                keep.add(k, comp[row - nimg - nker], x);
            }
        }
        out.add(degree, keep);
        if (!pre.is_zero() && degree + k - 1 != 0) {
            pre *= Scalar(-(degree + k - 1));
            work += pre;
        }
    }
}

CurrentElement CurrentAlgebra::reduce(const CurrentElement& raw) const {
    CurrentElement out;
    for (const auto& [n, slice] : raw.comps()) reduce_slice(n, slice, out);
    return out;
}

bool CurrentAlgebra::is_normal(const CurrentElement& x) const {
    for (const auto& [n, v] : x.comps())
        for (const auto& [key, c] : v.entries()) {
            (void)c;
            const WeightData& wd = wd_[key.first];
            const bool full = (n + key.first != 0) && wd.kernel_known;
            const auto& comp = full ? wd.comp_full : wd.comp_img;
            if (!std::binary_search(comp.begin(), comp.end(), key.second)) return false;
        }
    return true;
}

CurrentElement CurrentAlgebra::bracket(const CurrentElement& x, const CurrentElement& y) const {
    CurrentElement raw;
    for (const auto& [n1, v1] : x.comps())
        for (const auto& [k1i1, c1] : v1.entries()) {
            const int k1 = k1i1.first, i1 = k1i1.second;
            const long e1 = n1 + k1 - 1;
            for (const auto& [n2, v2] : y.comps())
                for (const auto& [k2i2, c2] : v2.entries()) {
                    const int k2 = k2i2.first, i2 = k2i2.second;
                    const long e2 = n2 + k2 - 1;
                    for (int m = 0; m < k1 + k2; ++m) {
                        Scalar coeff = c1 * c2 * falling(e1, m) * inv_factorial(m);
                        if (is_zero(coeff)) continue;
                        const GradedVector& ab = voa_->product(k1, i1, m, k2, i2);
                        if (ab.is_zero()) continue;
                        GradedVector t = ab;
                        t *= coeff;
                        raw.add(n1 + n2, t);
                    }
                }
        }
    return reduce(raw);
}

CurrentElement CurrentAlgebra::theta(const CurrentElement& x) const {
    CurrentElement raw;
    for (const auto& [n, v] : x.comps())
        for (const auto& [ki, c] : v.entries()) {
            const int k = ki.first;
            const Scalar sign = (k % 2) ? Scalar(-1) : Scalar(1);
            GradedVector cur = GradedVector::unit(k, ki.second);
            for (long j = 0; !cur.is_zero(); ++j) {
                GradedVector t = cur;
                t *= sign * c * inv_factorial(j);
                raw.add(-n, t);
                cur = voa_->virasoro(1, cur); // weight drops; terminates
            }
        }
    return reduce(raw);
}

SparseVec CurrentAlgebra::window_coords(const CurrentElement& x, int deg_lo, int deg_hi) const {
    SparseVec out;
    for (const auto& [n, v] : x.comps()) {
        if (n < deg_lo || n > deg_hi) continue;
        for (const auto& [key, c] : v.entries())
            out.emplace_back((n - deg_lo) * total_dim_ + offset_[key.first] + key.second, c);
    }
    return sparse_normalize(std::move(out));
}

} // namespace vablocks
