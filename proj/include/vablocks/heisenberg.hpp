#pragma once

#include <map>
#include <vector>

#include "vablocks/modules.hpp"
#include "vablocks/voa.hpp"

namespace vablocks {

using Partition = std::vector<int>; // parts descending

// partitions of 0..n, each list in reverse-lexicographic order
std::vector<std::vector<Partition>> partitions_up_to(int n);
std::string partition_name(const Partition& p);

// Rank-1 free boson Fock space F(lambda) tensored with C^copies, the copies
// coupled only through the zero mode: alpha_0 = lambda + N with N the
// regular nilpotent on C^copies.  States are (partition, copy) pairs graded
// by partition size; mode actions of partition monomials are generated
// recursively from the boson commutation rule.
class FreeBosonSpace {
public:
    FreeBosonSpace(Scalar lambda, int copies, int level_cap, int partition_cap);

    int copies() const { return copies_; }
    int level_cap() const { return cap_; }
    const Scalar& lambda() const { return lambda_; }
    int states_at(int level) const {
        return level > cap_ ? 0 : static_cast<int>(parts_[level].size()) * copies_;
    }
    const Partition& partition_at(int weight, int idx) const { return parts_[weight][idx]; }
    int partition_count(int weight) const { return static_cast<int>(parts_[weight].size()); }
    int flat_index(int part_idx, int copy) const { return part_idx * copies_ + copy; }

    // alpha_(m) on a state vector (grade = level)
    GradedVector alpha_apply(long m, const GradedVector& u) const;

    // (alpha_{-mu_1} ... alpha_{-mu_r} vac)_(n) u, memoized
    GradedVector monomial_mode(int pw, int pi, long n, const GradedVector& u) const;

private:
    Scalar lambda_;
    int copies_, cap_;
    std::vector<std::vector<Partition>> parts_;
    std::vector<std::map<Partition, int>> index_;
    mutable std::map<std::tuple<int, int, long, int, int>, GradedVector> memo_;

    GradedVector monomial_mode_state(int pw, int pi, long n, int level, int flat) const;
};

// rank-1 free boson VOA truncated at l_max: basis indexed by partitions,
// omega = (1/2) alpha_{-1}^2 vac as the weight-2 [1,1] basis vector,
// central charge 1
TruncatedVOA heisenberg_voa(int l_max);

// ordinary Fock module F(lambda): h = lambda^2/2, depth 0
LogModule fock_module(const TruncatedVOA& heis, const Scalar& lambda, int l_mod);

// rank-2 self-extension of F(lambda): zero mode lambda + N, so L_0 gains
// the nilpotent part lambda*N; depth 1 when lambda != 0
LogModule log_fock_module(const TruncatedVOA& heis, const Scalar& lambda, int l_mod);

} // namespace vablocks
