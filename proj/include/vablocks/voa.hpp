#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "vablocks/errors.hpp"
#include "vablocks/graded.hpp"

namespace vablocks {

struct CheckReport {
    long checked = 0;
    long skipped = 0;
    std::vector<std::string> failures;
    long failure_count = 0;
    static constexpr size_t kMaxRecorded = 32;

    void fail(std::string what) {
        ++failure_count;
        if (failures.size() < kMaxRecorded) failures.push_back(std::move(what));
    }
    bool pass() const { return failure_count == 0; }
};

struct VOAProduct {
    int wa, ia;
    long n;
    int wb, ib;
    GradedVector result;
};

struct VOAData {
    int l_max = 0;
    std::vector<std::vector<std::string>> weights;
    std::string vacuum;
    std::string omega;
    Scalar central_charge = 0;
    std::vector<VOAProduct> products;
};

// Weight-truncated vertex operator algebra: a graded basis up to l_max and
// the full table of mode products a_(n)b that stay under the cutoff.
// Structure constants are input data; the axiom checkers below validate
// them rather than derive them.
class TruncatedVOA {
public:
    explicit TruncatedVOA(VOAData data);

    int l_max() const { return l_max_; }
    int dim(int weight) const {
        return (weight < 0 || weight > l_max_) ? 0 : static_cast<int>(names_[weight].size());
    }
    const std::string& basis_name(int weight, int idx) const { return names_[weight][idx]; }
    std::pair<int, int> find_basis(const std::string& name) const; // throws UnknownBasis
    std::pair<int, int> vacuum() const { return vacuum_; }
    std::pair<int, int> omega() const { return omega_; }
    const Scalar& central_charge() const { return c_; }

    // a_(n)b for basis vectors; zero when the grading forces it, throws
    // TruncatedError when the result weight would exceed l_max.
    const GradedVector& product(int wa, int ia, long n, int wb, int ib) const;

    GradedVector apply_basis_mode(int wa, int ia, long n, const GradedVector& b) const;
    GradedVector mode_apply(const GradedVector& a, long n, const GradedVector& b) const;

    // L_n = omega_(n+1)
    GradedVector virasoro(long n, const GradedVector& v) const;

    std::string describe(const GradedVector& v) const;

    const std::vector<std::vector<std::string>>& weights() const { return names_; }
    const std::map<std::tuple<int, int, long, int, int>, GradedVector>& products() const {
        return table_;
    }

private:
    int l_max_;
    std::vector<std::vector<std::string>> names_;
    std::map<std::string, std::pair<int, int>> by_name_;
    std::pair<int, int> vacuum_, omega_;
    Scalar c_;
    std::map<std::tuple<int, int, long, int, int>, GradedVector> table_;
    GradedVector zero_;
};

// Both V itself and every module are N-graded spaces the algebra acts on;
// the identity checkers are generic over the action.
struct VOAAction {
    const TruncatedVOA& voa;
    GradedVector operator()(int wa, int ia, long m, const GradedVector& v) const {
        return voa.apply_basis_mode(wa, ia, m, v);
    }
    int grade_cap() const { return voa.l_max(); }
};

template <class Action>
GradedVector apply_combination(const Action& act, const GradedVector& a, long m,
                               const GradedVector& u) {
    GradedVector out;
    for (const auto& [key, coeff] : a.entries()) {
        GradedVector t = act(key.first, key.second, m, u);
        t *= coeff;
        out += t;
    }
    return out;
}

// Residual of the Borcherds identity
//   sum_i C(p,i) (a_(r+i)b)_(p+q-i) u
//     - sum_i (-1)^i C(r,i) [ a_(p+r-i) b_(q+i) u - (-1)^r b_(q+r-i) a_(p+i) u ]
// against an arbitrary graded action.  All i-sums terminate by grading.
template <class Action>
GradedVector borcherds_residual(const TruncatedVOA& voa, const Action& act, long p, long q,
                                long r, const GradedVector& a, const GradedVector& b,
                                const GradedVector& u) {
    GradedVector res;
    const int wa = a.max_grade(), wb = b.max_grade(), gu = u.max_grade();
    if (a.is_zero() || b.is_zero() || u.is_zero()) return res;
    // left side: (a_(r+i)b) vanishes once r+i >= wa+wb
    for (long i = 0; r + i < wa + wb; ++i) {
        Scalar c = binomial(p, i);
        if (is_zero(c)) continue;
        GradedVector ab = voa.mode_apply(a, r + i, b);
        if (ab.is_zero()) continue;
        GradedVector t = apply_combination(act, ab, p + q - i, u);
        t *= c;
        res += t;
    }
    // right side, first family: b_(q+i)u dies once q+i >= wb+gu
    for (long i = 0; q + i < wb + gu + 1; ++i) {
        Scalar c = binomial(r, i);
        if (is_zero(c)) continue;
        if (i % 2) c = -c;
        GradedVector bu = apply_combination(act, b, q + i, u);
        if (bu.is_zero()) continue;
        GradedVector t = apply_combination(act, a, p + r - i, bu);
        t *= c;
        res -= t;
    }
    // right side, second family: a_(p+i)u dies once p+i >= wa+gu
    const bool r_odd = (r % 2) != 0;
    for (long i = 0; p + i < wa + gu + 1; ++i) {
        Scalar c = binomial(r, i);
        if (is_zero(c)) continue;
        if ((i % 2 == 0) != r_odd) c = -c; // sign (-1)^{i} * -(-1)^{r}, folded
        GradedVector au = apply_combination(act, a, p + i, u);
        if (au.is_zero()) continue;
        GradedVector t = apply_combination(act, b, q + r - i, au);
        t *= c;
        res -= t;
    }
    return res;
}

// True when every term of the identity stays representable: target grade in
// [0, cap_u], and the worst intermediate of each family under the cutoffs.
bool borcherds_checkable(int l_max, int cap_u, int wa, int wb, int gu, long p, long q, long r);

GradedVector check_borcherds(const TruncatedVOA& voa, long p, long q, long r,
                             const GradedVector& a, const GradedVector& b,
                             const GradedVector& c);

// Residual of [L_m, L_n] - (m-n) L_{m+n} - (c/12)(m^3-m) delta_{m+n,0} id on
// every basis vector both orders reach under the cutoff.
CheckReport check_virasoro(const TruncatedVOA& voa, long m, long n);

// L_0-eigenvalue = weight on every basis vector, and the mode form of the
// translation axiom, (L_{-1}a)_(n) = -n a_(n-1), on all representable
// instances.
CheckReport check_grading_translation(const TruncatedVOA& voa);

} // namespace vablocks
