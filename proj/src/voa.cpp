#include "vablocks/voa.hpp"

#include <sstream>

namespace vablocks {

TruncatedVOA::TruncatedVOA(VOAData data)
    : l_max_(data.l_max), names_(std::move(data.weights)), c_(std::move(data.central_charge)) {
    if (l_max_ < 2) throw ValidationError("l_max must be >= 2 (omega lives in weight 2)");
    names_.resize(l_max_ + 1);
    for (int w = 0; w <= l_max_; ++w)
        for (int i = 0; i < static_cast<int>(names_[w].size()); ++i) {
            const std::string& nm = names_[w][i];
            if (nm.empty()) throw ValidationError("empty basis name");
            if (!by_name_.emplace(nm, std::make_pair(w, i)).second)
                throw ValidationError("duplicate basis name '" + nm + "'");
        }
    auto vit = by_name_.find(data.vacuum);
    if (vit == by_name_.end() || vit->second.first != 0)
        throw ValidationError("vacuum must name a weight-0 basis vector");
    vacuum_ = vit->second;
    auto oit = by_name_.find(data.omega);
    if (oit == by_name_.end() || oit->second.first != 2)
        throw ValidationError("omega must name a weight-2 basis vector");
    omega_ = oit->second;

    for (auto& pr : data.products) {
        if (pr.wa < 0 || pr.wa > l_max_ || pr.ia < 0 || pr.ia >= dim(pr.wa) || pr.wb < 0 ||
            pr.wb > l_max_ || pr.ib < 0 || pr.ib >= dim(pr.wb))
            throw ValidationError("product references basis out of range");
        long w = pr.wa + pr.wb - 1 - pr.n;
        if (pr.result.is_zero()) continue;
        if (pr.n >= pr.wa + pr.wb)
            throw ValidationError("nonzero product at mode n >= |a|+|b| violates grading");
        if (w < 0 || w > l_max_)
            throw ValidationError("product result weight outside truncation");
        for (const auto& [key, coeff] : pr.result.entries()) {
            (void)coeff;
            if (key.first != w)
                throw ValidationError("product result not homogeneous of weight |a|+|b|-1-n");
            if (key.second < 0 || key.second >= dim(key.first))
                throw ValidationError("product result index out of range");
        }
        auto key = std::make_tuple(pr.wa, pr.ia, pr.n, pr.wb, pr.ib);
        if (!table_.emplace(key, std::move(pr.result)).second)
            throw ValidationError("duplicate product entry");
    }
}

std::pair<int, int> TruncatedVOA::find_basis(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw UnknownBasisError("unknown basis vector '" + name + "'");
    return it->second;
}

const GradedVector& TruncatedVOA::product(int wa, int ia, long n, int wb, int ib) const {
    if (n >= wa + wb) return zero_;
    long w = wa + wb - 1 - n;
    if (w > l_max_)
        throw TruncatedError("product " + names_[wa][ia] + "_(" + std::to_string(n) + ")" +
                             names_[wb][ib] + " has weight " + std::to_string(w) +
                             " beyond l_max " + std::to_string(l_max_));
    auto it = table_.find(std::make_tuple(wa, ia, n, wb, ib));
    return it == table_.end() ? zero_ : it->second;
}

GradedVector TruncatedVOA::apply_basis_mode(int wa, int ia, long n, const GradedVector& b) const {
    GradedVector out;
    for (const auto& [key, coeff] : b.entries()) {
        const GradedVector& p = product(wa, ia, n, key.first, key.second);
        if (p.is_zero()) continue;
        GradedVector t = p;
        t *= coeff;
        out += t;
    }
    return out;
}

GradedVector TruncatedVOA::mode_apply(const GradedVector& a, long n, const GradedVector& b) const {
    GradedVector out;
    for (const auto& [key, coeff] : a.entries()) {
        GradedVector t = apply_basis_mode(key.first, key.second, n, b);
        t *= coeff;
        out += t;
    }
    return out;
}

GradedVector TruncatedVOA::virasoro(long n, const GradedVector& v) const {
    return apply_basis_mode(omega_.first, omega_.second, n + 1, v);
}

std::string TruncatedVOA::describe(const GradedVector& v) const {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coeff] : v.entries()) {
        if (!first) os << " + ";
        first = false;
        os << scalar_to_string(coeff) << "*" << names_[key.first][key.second];
    }
    return os.str();
}

bool borcherds_checkable(int l_max, int cap_u, int wa, int wb, int gu, long p, long q, long r) {
    long target = static_cast<long>(wa) + wb + gu - 2 - p - q - r;
    if (target > cap_u) return false;
    if (static_cast<long>(wa) + wb - 1 - r > l_max) return false;
    if (static_cast<long>(wb) + gu - 1 - q > cap_u) return false;
    if (static_cast<long>(wa) + gu - 1 - p > cap_u) return false;
    return true;
}

GradedVector check_borcherds(const TruncatedVOA& voa, long p, long q, long r,
                             const GradedVector& a, const GradedVector& b,
                             const GradedVector& c) {
    return borcherds_residual(voa, VOAAction{voa}, p, q, r, a, b, c);
}

CheckReport check_virasoro(const TruncatedVOA& voa, long m, long n) {
    CheckReport rep;
    const Scalar central = voa.central_charge() * frac(m * m * m - m, 12);
    for (int w = 0; w <= voa.l_max(); ++w) {
        bool ok = w - m <= voa.l_max() && w - n <= voa.l_max() && w - m - n <= voa.l_max();
        for (int i = 0; i < voa.dim(w); ++i) {
            if (!ok) {
                ++rep.skipped;
                continue;
            }
            ++rep.checked;
            GradedVector v = GradedVector::unit(w, i);
            GradedVector res = voa.virasoro(m, voa.virasoro(n, v));
            res -= voa.virasoro(n, voa.virasoro(m, v));
            GradedVector lin = voa.virasoro(m + n, v);
            lin *= Scalar(m - n);
            res -= lin;
            if (m + n == 0) {
                GradedVector cen = v;
                cen *= central;
                res -= cen;
            }
            if (!res.is_zero())
                rep.fail("[L_" + std::to_string(m) + ", L_" + std::to_string(n) +
                         "] fails on " + voa.basis_name(w, i) + ": residual " +
                         voa.describe(res));
        }
    }
    return rep;
}

CheckReport check_grading_translation(const TruncatedVOA& voa) {
    CheckReport rep;
    for (int w = 0; w <= voa.l_max(); ++w)
        for (int i = 0; i < voa.dim(w); ++i) {
            ++rep.checked;
            GradedVector v = GradedVector::unit(w, i);
            GradedVector res = voa.virasoro(0, v);
            GradedVector wv = v;
            wv *= Scalar(w);
            res -= wv;
            if (!res.is_zero())
                rep.fail("L_0 is not weight*id on " + voa.basis_name(w, i));
        }
    // mode form of the translation axiom: (L_{-1}a)_(n) = -n a_(n-1)
    for (int wa = 0; wa + 1 <= voa.l_max(); ++wa)
        for (int ia = 0; ia < voa.dim(wa); ++ia) {
            GradedVector la = voa.virasoro(-1, GradedVector::unit(wa, ia));
            for (int wb = 0; wb <= voa.l_max(); ++wb)
                for (int ib = 0; ib < voa.dim(wb); ++ib) {
                    GradedVector b = GradedVector::unit(wb, ib);
                    for (long n = wa + wb - voa.l_max(); n <= wa + wb; ++n) {
                        ++rep.checked;
                        GradedVector lhs = voa.mode_apply(la, n, b);
                        GradedVector rhs = voa.apply_basis_mode(wa, ia, n - 1, b);
                        rhs *= Scalar(-n);
                        lhs -= rhs;
                        if (!lhs.is_zero())
                            rep.fail("(L_{-1}" + voa.basis_name(wa, ia) + ")_(" +
                                     std::to_string(n) + ") != -n*" + voa.basis_name(wa, ia) +
                                     "_(" + std::to_string(n - 1) + ") on " +
                                     voa.basis_name(wb, ib));
                    }
                }
        }
    return rep;
}

} // namespace vablocks
