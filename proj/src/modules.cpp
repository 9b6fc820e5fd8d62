#include "vablocks/modules.hpp"

#include <sstream>

namespace vablocks {

namespace {

std::vector<std::vector<Scalar>> mat_mul(const std::vector<std::vector<Scalar>>& a,
                                         const std::vector<std::vector<Scalar>>& b) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<Scalar>> out(n, std::vector<Scalar>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (is_zero(a[i][k])) continue;
            for (int j = 0; j < n; ++j) {
                if (is_zero(b[k][j])) continue;
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    return out;
}

bool mat_is_zero(const std::vector<std::vector<Scalar>>& a) {
    for (const auto& row : a)
        for (const auto& v : row)
            if (!is_zero(v)) return false;
    return true;
}

} // namespace

LogModule::LogModule(const TruncatedVOA& voa, ModuleData data, std::string name)
    : voa_(&voa), name_(std::move(name)), h_(std::move(data.h)), depth_(data.depth),
      l_mod_(data.l_mod), names_(std::move(data.levels)), l0_(std::move(data.l0)) {
    if (l_mod_ < 0) throw ValidationError(name_ + ": negative level cutoff");
    if (depth_ < 0) throw ValidationError(name_ + ": negative depth");
    names_.resize(l_mod_ + 1);
    l0_.resize(l_mod_ + 1);
    for (int lv = 0; lv <= l_mod_; ++lv) {
        const size_t d = names_[lv].size();
        if (l0_[lv].size() != d)
            throw ValidationError(name_ + ": L0 matrix size mismatch at level " +
                                  std::to_string(lv));
        for (const auto& row : l0_[lv])
            if (row.size() != d)
                throw ValidationError(name_ + ": L0 matrix not square at level " +
                                      std::to_string(lv));
    }

    for (auto& a : data.actions) {
        if (a.wa < 0 || a.wa > voa.l_max() || a.ia < 0 || a.ia >= voa.dim(a.wa))
            throw ValidationError(name_ + ": action references unknown algebra basis");
        if (a.level < 0 || a.level > l_mod_ || a.iu < 0 || a.iu >= dim(a.level))
            throw ValidationError(name_ + ": action references unknown module basis");
        if (a.result.is_zero()) continue;
        long target = a.level + a.wa - 1 - a.m;
        if (target < 0 || target > l_mod_)
            throw ValidationError(name_ + ": action result level outside cutoff");
        for (const auto& [key, c] : a.result.entries()) {
            (void)c;
            if (key.first != target)
                throw ValidationError(name_ + ": action result not at level |a|+k-1-n");
            if (key.second < 0 || key.second >= dim(key.first))
                throw ValidationError(name_ + ": action result index out of range");
        }
        auto key = std::make_tuple(a.wa, a.ia, a.m, a.level, a.iu);
        GradedVector res = a.result;
        if (!table_.emplace(key, std::move(res)).second)
            throw ValidationError(name_ + ": duplicate action entry");
        actions_flat_.push_back(std::move(a));
    }

    // declared L0 must match the omega_(1) column of the action table
    auto [ow, oi] = voa.omega();
    for (int lv = 0; lv <= l_mod_; ++lv)
        for (int j = 0; j < dim(lv); ++j) {
            const GradedVector& col = act_basis_mode(ow, oi, 1, lv, j);
            for (int i = 0; i < dim(lv); ++i)
                if (col.coeff(lv, i) != l0_[lv][i][j])
                    throw ValidationError(name_ + ": declared L0 disagrees with omega_(1) at level " +
                                          std::to_string(lv));
        }

    // true nilpotency index of L0 - (h+n) per level; reject non-nilpotent L0
    // or a depth different from the declared one
    int true_depth = 0;
    nil_pow_.resize(l_mod_ + 1);
    for (int lv = 0; lv <= l_mod_; ++lv) {
        const int d = dim(lv);
        std::vector<std::vector<Scalar>> nil(d, std::vector<Scalar>(d, 0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                nil[i][j] = l0_[lv][i][j];
                if (i == j) nil[i][j] -= h_ + lv;
            }
        std::vector<std::vector<Scalar>> id(d, std::vector<Scalar>(d, 0));
        for (int i = 0; i < d; ++i) id[i][i] = 1;
        nil_pow_[lv].push_back(id);
        std::vector<std::vector<Scalar>> pw = id;
        int j = 0;
        while (!mat_is_zero(pw)) {
            if (j > d)
                throw ValidationError(name_ + ": L0 - (h+n) not nilpotent at level " +
                                      std::to_string(lv) + " (wrong h?)");
            pw = mat_mul(pw, nil);
            ++j;
            if (!mat_is_zero(pw)) nil_pow_[lv].push_back(pw);
        }
        true_depth = std::max(true_depth, j - 1);
    }
    if (true_depth != depth_)
        throw ValidationError(name_ + ": declared depth " + std::to_string(depth_) +
                              " but computed nilpotency depth " + std::to_string(true_depth));
    for (int lv = 0; lv <= l_mod_; ++lv) {
        const int d = dim(lv);
        while (static_cast<int>(nil_pow_[lv].size()) <= depth_)
            nil_pow_[lv].push_back(std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, 0)));
    }
}

const GradedVector& LogModule::act_basis_mode(int wa, int ia, long m, int level, int iu) const {
    long target = level + wa - 1 - m;
    if (target < 0) return zero_;
    if (target > l_mod_)
        throw TruncatedError(name_ + ": action target level " + std::to_string(target) +
                             " beyond cutoff " + std::to_string(l_mod_));
    auto it = table_.find(std::make_tuple(wa, ia, m, level, iu));
    return it == table_.end() ? zero_ : it->second;
}

GradedVector LogModule::act_mode(int wa, int ia, long m, const GradedVector& u) const {
    GradedVector out;
    for (const auto& [key, c] : u.entries()) {
        const GradedVector& r = act_basis_mode(wa, ia, m, key.first, key.second);
        if (r.is_zero()) continue;
        GradedVector t = r;
        t *= c;
        out += t;
    }
    return out;
}

GradedVector LogModule::act(const GradedVector& a, long m, const GradedVector& u) const {
    GradedVector out;
    for (const auto& [key, c] : a.entries()) {
        GradedVector t = act_mode(key.first, key.second, m, u);
        t *= c;
        out += t;
    }
    return out;
}

GradedVector LogModule::act_current(const CurrentElement& x, const GradedVector& u) const {
    GradedVector out;
    for (const auto& [n, v] : x.comps())
        for (const auto& [key, c] : v.entries()) {
            GradedVector t = act_mode(key.first, key.second, key.first - 1 + n, u);
            t *= c;
            out += t;
        }
    return out;
}

GradedVector LogModule::act_current_capped(const CurrentElement& x, const GradedVector& u,
                                           int cap) const {
    GradedVector out;
    for (const auto& [n, v] : x.comps())
        for (const auto& [key, c] : v.entries())
            for (const auto& [ukey, uc] : u.entries()) {
                long target = ukey.first - n;
                if (target < 0 || target > cap) continue;
                const GradedVector& r =
                    act_basis_mode(key.first, key.second, key.first - 1 + n, ukey.first, ukey.second);
                if (r.is_zero()) continue;
                GradedVector t = r;
                t *= c * uc;
                out += t;
            }
    return out;
}

GradedVector LogModule::l0_apply(const GradedVector& u) const {
    GradedVector out;
    for (const auto& [key, c] : u.entries()) {
        const auto& m = l0_[key.first];
        for (int i = 0; i < dim(key.first); ++i)
            if (!is_zero(m[i][key.second])) out.add(key.first, i, c * m[i][key.second]);
    }
    return out;
}

std::string LogModule::describe(const GradedVector& v) const {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : v.entries()) {
        if (!first) os << " + ";
        first = false;
        os << scalar_to_string(c) << "*" << names_[key.first][key.second];
    }
    return os.str();
}

LogModule dual_module(const CurrentAlgebra& alg, const LogModule& m) {
    const TruncatedVOA& voa = alg.voa();
    ModuleData d;
    d.h = m.h();
    d.depth = m.depth();
    d.l_mod = m.l_mod();
    d.levels.resize(m.l_mod() + 1);
    d.l0.resize(m.l_mod() + 1);
    for (int lv = 0; lv <= m.l_mod(); ++lv) {
        for (int i = 0; i < m.dim(lv); ++i) d.levels[lv].push_back(m.level_name(lv, i) + "*");
        // <L0 phi, u> = <phi, L0 u>: transpose per level
        const auto& l0 = m.l0()[lv];
        d.l0[lv].assign(m.dim(lv), std::vector<Scalar>(m.dim(lv), 0));
        for (int i = 0; i < m.dim(lv); ++i)
            for (int j = 0; j < m.dim(lv); ++j) d.l0[lv][i][j] = l0[j][i];
    }
    if (&voa != &m.voa())
        throw ValidationError("dual_module: current algebra and module disagree on the VOA");
    for (int wa = 0; wa <= voa.l_max(); ++wa)
        for (int ia = 0; ia < voa.dim(wa); ++ia) {
            // a_(m) shifts dual levels by -n, n = m - wa + 1
            for (int n = -m.l_mod(); n <= m.l_mod(); ++n) {
                CurrentElement th =
                    alg.theta(CurrentElement::basis_current(n, wa, ia));
                for (int src = std::max(0, n); src <= std::min(m.l_mod(), m.l_mod() + n);
                     ++src) {
                    const int dst = src - n;
                    if (m.dim(src) == 0 || m.dim(dst) == 0) continue;
                    std::vector<GradedVector> cols(m.dim(src));
                    bool any = false;
                    for (int i = 0; i < m.dim(dst); ++i) {
                        GradedVector w = m.act_current(th, GradedVector::unit(dst, i));
                        for (int j = 0; j < m.dim(src); ++j) {
                            Scalar c = w.coeff(src, j);
                            if (!is_zero(c)) {
                                cols[j].add(dst, i, c);
                                any = true;
                            }
                        }
                    }
                    if (!any) continue;
                    for (int j = 0; j < m.dim(src); ++j)
                        if (!cols[j].is_zero())
                            d.actions.push_back(
                                {wa, ia, static_cast<long>(n) + wa - 1, src, j,
                                 std::move(cols[j])});
                }
            }
        }
    return LogModule(voa, std::move(d), "D(" + m.name() + ")");
}

GradedVector check_module_borcherds(const LogModule& m, long p, long q, long r,
                                    const GradedVector& a, const GradedVector& b,
                                    const GradedVector& u) {
    return borcherds_residual(m.voa(), LogModuleAction{m}, p, q, r, a, b, u);
}

CheckReport module_borcherds_sweep(const LogModule& m, long bound) {
    CheckReport rep;
    const TruncatedVOA& voa = m.voa();
    for (int wa = 0; wa <= voa.l_max(); ++wa)
        for (int ia = 0; ia < voa.dim(wa); ++ia)
            for (int wb = 0; wb <= voa.l_max(); ++wb)
                for (int ib = 0; ib < voa.dim(wb); ++ib)
                    for (int lv = 0; lv <= m.l_mod(); ++lv)
                        for (int iu = 0; iu < m.dim(lv); ++iu)
                            for (long p = -bound; p <= bound; ++p)
                                for (long q = -bound; q <= bound; ++q)
                                    for (long r = -bound; r <= bound; ++r) {
                                        if (!borcherds_checkable(voa.l_max(), m.l_mod(), wa, wb,
                                                                 lv, p, q, r)) {
                                            ++rep.skipped;
                                            continue;
                                        }
                                        ++rep.checked;
                                        GradedVector res = check_module_borcherds(
                                            m, p, q, r, GradedVector::unit(wa, ia),
                                            GradedVector::unit(wb, ib),
                                            GradedVector::unit(lv, iu));
                                        if (!res.is_zero())
                                            rep.fail("module Borcherds fails at a=" +
                                                     voa.basis_name(wa, ia) + " b=" +
                                                     voa.basis_name(wb, ib) + " u=" +
                                                     m.level_name(lv, iu) + " (p,q,r)=(" +
                                                     std::to_string(p) + "," + std::to_string(q) +
                                                     "," + std::to_string(r) + ")");
                                    }
    return rep;
}

} // namespace vablocks
