#include "vablocks/heisenberg.hpp"

#include <algorithm>
#include <sstream>

namespace vablocks {

namespace {

void gen_partitions(int n, int max_part, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

// basis normalization: the [1,1] monomial carries 1/2 so that it is omega
Scalar basis_scale(const Partition& p) {
    if (p.size() == 2 && p[0] == 1 && p[1] == 1) return Scalar(1, 2);
    return Scalar(1);
}

} // namespace

std::vector<std::vector<Partition>> partitions_up_to(int n) {
    std::vector<std::vector<Partition>> out(n + 1);
    for (int w = 0; w <= n; ++w) {
        Partition cur;
        gen_partitions(w, w == 0 ? 1 : w, cur, out[w]);
    }
    return out;
}

std::string partition_name(const Partition& p) {
    if (p.empty()) return "vac";
    std::ostringstream os;
    os << "a";
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "_" : "") << p[i];
    return os.str();
}

FreeBosonSpace::FreeBosonSpace(Scalar lambda, int copies, int level_cap, int partition_cap)
    : lambda_(std::move(lambda)), copies_(copies), cap_(level_cap),
      parts_(partitions_up_to(std::max(level_cap, partition_cap))) {
    index_.resize(parts_.size());
    for (size_t w = 0; w < parts_.size(); ++w)
        for (size_t i = 0; i < parts_[w].size(); ++i) index_[w][parts_[w][i]] = static_cast<int>(i);
}

GradedVector FreeBosonSpace::alpha_apply(long m, const GradedVector& u) const {
    GradedVector out;
    for (const auto& [key, c] : u.entries()) {
        const int level = key.first;
        const int pi = key.second / copies_;
        const int copy = key.second % copies_;
        const Partition& p = parts_[level][pi];
        if (m > 0) {
            // annihilation: remove one part equal to m, factor m * multiplicity
            long mult = std::count(p.begin(), p.end(), static_cast<int>(m));
            if (mult == 0) continue;
            Partition q;
            bool removed = false;
            for (int part : p) {
                if (!removed && part == m) {
                    removed = true;
                    continue;
                }
                q.push_back(part);
            }
            int qi = index_[level - m].at(q);
            out.add(level - static_cast<int>(m), flat_index(qi, copy), c * Scalar(m * mult));
        } else if (m < 0) {
            const int k = static_cast<int>(-m);
            if (level + k > cap_)
                throw TruncatedError("free boson creation beyond level cap");
            Partition q = p;
            q.insert(std::upper_bound(q.begin(), q.end(), k, std::greater<int>()), k);
            int qi = index_[level + k].at(q);
            out.add(level + k, flat_index(qi, copy), c);
        } else {
            // zero mode: lambda + nilpotent drop between copies
            out.add(level, key.second, c * lambda_);
            if (copy >= 1) out.add(level, flat_index(pi, copy - 1), c);
        }
    }
    return out;
}

GradedVector FreeBosonSpace::monomial_mode(int pw, int pi, long n, const GradedVector& u) const {
    GradedVector out;
    for (const auto& [key, c] : u.entries()) {
        GradedVector t = monomial_mode_state(pw, pi, n, key.first, key.second);
        t *= c;
        out += t;
    }
    return out;
}

GradedVector FreeBosonSpace::monomial_mode_state(int pw, int pi, long n, int level,
                                                 int flat) const {
    const Partition& mu = parts_[pw][pi];
    if (mu.empty()) {
        GradedVector out;
        if (n == -1) out.add(level, flat, Scalar(1));
        return out;
    }
    auto memo_key = std::make_tuple(pw, pi, n, level, flat);
    auto hit = memo_.find(memo_key);
    if (hit != memo_.end()) return hit->second;

    const int k = mu.front();
    Partition rest(mu.begin() + 1, mu.end());
    const int rw = pw - k;
    const int ri = index_[rw].at(rest);
    GradedVector state = GradedVector::unit(level, flat);

    GradedVector out;
    // (alpha_{(-k)} b)_(n) = sum_i C(k+i-1, i)
    //     [ alpha_{(-k-i)} b_(n+i)  -  (-1)^k b_(n-k-i) alpha_{(i)} ]
    // first family: b_(n+i)u vanishes once its level drops below 0
    for (long i = 0; level + rw - 1 - (n + i) >= 0; ++i) {
        GradedVector inner = monomial_mode(rw, ri, n + i, state);
        if (inner.is_zero()) continue;
        GradedVector t = alpha_apply(-k - i, inner);
        t *= binomial(k + i - 1, i);
        out += t;
    }
    // second family: alpha_(i)u vanishes for i > level
    const Scalar sign = (k % 2) ? Scalar(1) : Scalar(-1);
    for (long i = 0; i <= level; ++i) {
        GradedVector au = alpha_apply(i, state);
        if (au.is_zero()) continue;
        GradedVector t = monomial_mode(rw, ri, n - k - i, au);
        if (t.is_zero()) continue;
        t *= sign * binomial(k + i - 1, i);
        out += t;
    }
    memo_.emplace(memo_key, out);
    return out;
}

TruncatedVOA heisenberg_voa(int l_max) {
    if (l_max < 2) throw ValidationError("heisenberg_voa needs l_max >= 2");
    FreeBosonSpace fb(Scalar(0), 1, l_max, l_max);
    VOAData data;
    data.l_max = l_max;
    data.central_charge = 1;
    data.weights.resize(l_max + 1);
    for (int w = 0; w <= l_max; ++w)
        for (int i = 0; i < fb.partition_count(w); ++i)
            data.weights[w].push_back(partition_name(fb.partition_at(w, i)));
    data.vacuum = "vac";
    data.omega = "a1_1";

    for (int wa = 0; wa <= l_max; ++wa)
        for (int ia = 0; ia < fb.partition_count(wa); ++ia) {
            const Scalar ca = basis_scale(fb.partition_at(wa, ia));
            for (int wb = 0; wb <= l_max; ++wb)
                for (int ib = 0; ib < fb.partition_count(wb); ++ib) {
                    const Scalar cb = basis_scale(fb.partition_at(wb, ib));
                    for (long n = wa + wb - 1 - l_max; n <= static_cast<long>(wa) + wb - 1;
                         ++n) {
                        GradedVector r =
                            fb.monomial_mode(wa, ia, n, GradedVector::unit(wb, ib));
                        if (r.is_zero()) continue;
                        GradedVector res;
                        for (const auto& [key, c] : r.entries())
                            res.add(key.first, key.second,
                                    c * ca * cb / basis_scale(fb.partition_at(key.first, key.second)));
                        data.products.push_back({wa, ia, n, wb, ib, std::move(res)});
                    }
                }
        }
    return TruncatedVOA(std::move(data));
}

namespace {

LogModule fock_like_module(const TruncatedVOA& heis, const Scalar& lambda, int l_mod,
                           int copies, const std::string& name) {
    FreeBosonSpace fb(lambda, copies, l_mod, heis.l_max());
    // the algebra basis must be the partition basis this builder assumes
    for (int w = 0; w <= heis.l_max(); ++w) {
        if (heis.dim(w) != fb.partition_count(w))
            throw ValidationError(name + ": VOA is not the Heisenberg partition basis");
        for (int i = 0; i < heis.dim(w); ++i)
            if (heis.basis_name(w, i) != partition_name(fb.partition_at(w, i)))
                throw ValidationError(name + ": VOA is not the Heisenberg partition basis");
    }

    ModuleData d;
    d.h = lambda * lambda / 2;
    d.depth = (copies >= 2 && !is_zero(lambda)) ? 1 : 0;
    d.l_mod = l_mod;
    d.levels.resize(l_mod + 1);
    for (int lv = 0; lv <= l_mod; ++lv)
        for (int pi = 0; pi < fb.partition_count(lv); ++pi)
            for (int cp = 0; cp < copies; ++cp) {
                std::string nm = "u" + std::to_string(lv) + "_" + std::to_string(pi);
                if (copies > 1) nm += (cp ? "b" : "a");
                d.levels[lv].push_back(nm);
            }

    for (int wa = 0; wa <= heis.l_max(); ++wa)
        for (int ia = 0; ia < heis.dim(wa); ++ia) {
            const Scalar ca = basis_scale(fb.partition_at(wa, ia));
            for (int lv = 0; lv <= l_mod; ++lv)
                for (int iu = 0; iu < fb.states_at(lv); ++iu)
                    for (long m = lv + wa - 1 - l_mod; m <= static_cast<long>(lv) + wa - 1;
                         ++m) {
                        GradedVector r = fb.monomial_mode(wa, ia, m, GradedVector::unit(lv, iu));
                        if (r.is_zero()) continue;
                        r *= ca;
                        d.actions.push_back({wa, ia, m, lv, iu, std::move(r)});
                    }
        }

    // L0 per level from the omega_(1) action entries just built
    auto [ow, oi] = heis.omega();
    d.l0.resize(l_mod + 1);
    for (int lv = 0; lv <= l_mod; ++lv)
        d.l0[lv].assign(fb.states_at(lv), std::vector<Scalar>(fb.states_at(lv), 0));
    for (const auto& a : d.actions)
        if (a.wa == ow && a.ia == oi && a.m == 1)
            for (const auto& [key, c] : a.result.entries()) d.l0[a.level][key.second][a.iu] = c;

    return LogModule(heis, std::move(d), name);
}

} // namespace

LogModule fock_module(const TruncatedVOA& heis, const Scalar& lambda, int l_mod) {
    return fock_like_module(heis, lambda, l_mod, 1,
                            "F(" + scalar_to_string(lambda) + ")");
}

LogModule log_fock_module(const TruncatedVOA& heis, const Scalar& lambda, int l_mod) {
    return fock_like_module(heis, lambda, l_mod, 2,
                            "LF(" + scalar_to_string(lambda) + ")");
}

} // namespace vablocks
