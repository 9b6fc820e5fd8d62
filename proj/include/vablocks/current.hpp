#pragma once

#include <map>
#include <string>
#include <vector>

#include "vablocks/sparse.hpp"
#include "vablocks/voa.hpp"

namespace vablocks {

// Element of the current Lie algebra g = V^(1) / nabla V^(0), restricted to
// Laurent-polynomial symbols.  A term a (x) xi^e (dxi)^{1-|a|} with a of
// weight k is stored under its degree n = e - k + 1, so that J_n(a) is the
// degree-n part; the nabla relation J_n(L_{-1}v) = -(n+|v|) J_n(v) is
// degree-homogeneous.
class CurrentElement {
public:
    CurrentElement() = default;

    // J_n of a single basis vector
    static CurrentElement basis_current(int n, int weight, int idx) {
        CurrentElement c;
        c.comps_[n] = GradedVector::unit(weight, idx);
        return c;
    }
    // J(a, f) for a Laurent polynomial f (exponent -> coefficient)
    static CurrentElement from_symbol(const GradedVector& a, const std::map<long, Scalar>& f);

    bool is_zero() const { return comps_.empty(); }

    void add(int degree, const GradedVector& v) {
        if (v.is_zero()) return;
        auto it = comps_.find(degree);
        if (it == comps_.end()) {
            comps_[degree] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    CurrentElement& operator+=(const CurrentElement& o) {
        for (const auto& [n, v] : o.comps_) add(n, v);
        return *this;
    }
    CurrentElement& operator-=(const CurrentElement& o) {
        for (const auto& [n, v] : o.comps_) {
            GradedVector neg = v;
            neg *= Scalar(-1);
            add(n, neg);
        }
        return *this;
    }
    CurrentElement& operator*=(const Scalar& s) {
        if (vablocks::is_zero(s)) {
            comps_.clear();
            return *this;
        }
        for (auto& [n, v] : comps_) v *= s;
        return *this;
    }
    bool operator==(const CurrentElement& o) const { return comps_ == o.comps_; }

    const std::map<int, GradedVector>& comps() const { return comps_; }
    GradedVector degree_slice(int n) const {
        auto it = comps_.find(n);
        return it == comps_.end() ? GradedVector() : it->second;
    }
    CurrentElement truncate_degrees(int lo, int hi) const {
        CurrentElement out;
        for (const auto& [n, v] : comps_)
            if (n >= lo && n <= hi) out.comps_[n] = v;
        return out;
    }
    int min_degree() const { return comps_.empty() ? 0 : comps_.begin()->first; }
    int max_degree() const { return comps_.empty() ? 0 : comps_.rbegin()->first; }

    // textual rendering "J(a, c*xi^e + ...)" grouped by basis vector
    std::string render(const TruncatedVOA& voa) const;

private:
    std::map<int, GradedVector> comps_;
};

// The current Lie algebra attached to a truncated VOA: canonical
// representatives for the nabla quotient, the bracket, and the
// anti-involution theta on polynomial currents.
class CurrentAlgebra {
public:
    explicit CurrentAlgebra(const TruncatedVOA& voa);

    const TruncatedVOA& voa() const { return *voa_; }

    // Exhaustive nabla rewriting to the canonical normal form.  Per degree n
    // and weight k, components in the image of L_{-1} rewrite one weight
    // down, and components in ker L_{-1} vanish whenever n + k != 0 (the
    // relation nabla(v (x) f (dxi)^{-k}) supplies both rules).  Kernel
    // killing needs L_{-1} out of weight k, so it is available for
    // k < l_max only; top-weight components reduce modulo the image alone.
    CurrentElement reduce(const CurrentElement& raw) const;

    bool is_normal(const CurrentElement& x) const;

    // [J(a,f), J(b,g)] = sum_m (1/m!) J(a_(m)b, f^(m) g), reduced.
    CurrentElement bracket(const CurrentElement& x, const CurrentElement& y) const;

    // theta(J_n(a)) = (-1)^{|a|} sum_j (1/j!) J_{-n}(L_1^j a), reduced.
    CurrentElement theta(const CurrentElement& x) const;

    // flat coordinates of a normal-form current over the degree window
    // [deg_lo, deg_hi]; used to detect linear dependence between currents
    SparseVec window_coords(const CurrentElement& x, int deg_lo, int deg_hi) const;
    int window_dim(int deg_lo, int deg_hi) const {
        return (deg_hi - deg_lo + 1) * total_dim_;
    }

private:
    struct WeightData {
        // square solver [img cols | ker cols | complement unit cols]^{-1}
        // for both classes; complement subsets as basis index lists
        std::vector<std::vector<Scalar>> inv_full, inv_img;
        std::vector<int> preimage_full, preimage_img; // basis idx in V_{k-1} per img col
        int nker_full = 0;                            // kernel cols (full class only)
        std::vector<int> comp_full, comp_img;         // complement basis indices
        bool kernel_known = false;
    };

    const TruncatedVOA* voa_;
    std::vector<WeightData> wd_;
    std::vector<int> offset_; // flat offset per weight
    int total_dim_ = 0;

    void reduce_slice(int degree, GradedVector work, CurrentElement& out) const;
};

} // namespace vablocks
