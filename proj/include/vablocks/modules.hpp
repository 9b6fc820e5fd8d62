#pragma once

#include <map>
#include <string>
#include <vector>

#include "vablocks/current.hpp"
#include "vablocks/voa.hpp"

namespace vablocks {

struct ModuleAction {
    int wa, ia;
    long m;
    int level, iu;
    GradedVector result;
};

struct ModuleData {
    Scalar h = 0;
    int depth = 0;
    int l_mod = 0;
    std::vector<std::vector<std::string>> levels;
    std::vector<std::vector<std::vector<Scalar>>> l0; // [level][i][j]: coeff of e_i in L0 e_j
    std::vector<ModuleAction> actions;
};

// Logarithmic module truncated at level l_mod: generalized L_0-eigenspaces
// M_(h+n) with one uniform nilpotency depth, an explicit (not necessarily
// diagonal) L_0 matrix per level, and the mode-action table.  The
// constructor recomputes the true nilpotency index and rejects a mismatch
// with the declared depth, and checks the declared L_0 against the
// omega_(1) column of the action table.
class LogModule {
public:
    LogModule(const TruncatedVOA& voa, ModuleData data, std::string name);

    const TruncatedVOA& voa() const { return *voa_; }
    const std::string& name() const { return name_; }
    const Scalar& h() const { return h_; }
    int depth() const { return depth_; }
    int l_mod() const { return l_mod_; }
    int dim(int level) const {
        return (level < 0 || level > l_mod_) ? 0 : static_cast<int>(names_[level].size());
    }
    const std::string& level_name(int level, int idx) const { return names_[level][idx]; }

    // a_(m)u for a basis vector of V; zero below level 0, TruncatedError
    // above l_mod.
    const GradedVector& act_basis_mode(int wa, int ia, long m, int level, int iu) const;
    GradedVector act_mode(int wa, int ia, long m, const GradedVector& u) const;
    GradedVector act(const GradedVector& a, long m, const GradedVector& u) const;

    // J_n(a)u = a_(|a|-1+n)u, extended over all terms of the current.
    GradedVector act_current(const CurrentElement& x, const GradedVector& u) const;
    // Same, but only producing components with level <= cap (the coinvariant
    // window projection); never throws for overflow.
    GradedVector act_current_capped(const CurrentElement& x, const GradedVector& u,
                                    int cap) const;

    GradedVector l0_apply(const GradedVector& u) const;
    // (L_0 - h - level)^j as a dense matrix on one level, 0 <= j <= depth
    const std::vector<std::vector<Scalar>>& nil_pow(int level, int j) const {
        return nil_pow_[level][j];
    }

    const std::vector<std::vector<std::vector<Scalar>>>& l0() const { return l0_; }
    const std::vector<ModuleAction>& actions() const { return actions_flat_; }

    std::string describe(const GradedVector& v) const;

private:
    const TruncatedVOA* voa_;
    std::string name_;
    Scalar h_;
    int depth_, l_mod_;
    std::vector<std::vector<std::string>> names_;
    std::vector<std::vector<std::vector<Scalar>>> l0_;
    std::vector<std::vector<std::vector<std::vector<Scalar>>>> nil_pow_; // [level][j]
    std::map<std::tuple<int, int, long, int, int>, GradedVector> table_;
    std::vector<ModuleAction> actions_flat_;
    GradedVector zero_;
};

struct LogModuleAction {
    const LogModule& m;
    GradedVector operator()(int wa, int ia, long mm, const GradedVector& u) const {
        return m.act_mode(wa, ia, mm, u);
    }
};

// Contragredient dual D(M): dual bases per level, action transported
// through theta via <a_(m) phi, u> = <phi, theta(J_n(a)) u>, n = m-|a|+1.
LogModule dual_module(const CurrentAlgebra& alg, const LogModule& m);

// Module-action form of the Borcherds identity.
GradedVector check_module_borcherds(const LogModule& m, long p, long q, long r,
                                    const GradedVector& a, const GradedVector& b,
                                    const GradedVector& u);

// Sweep the identity over all basis triples within the given mode bounds.
CheckReport module_borcherds_sweep(const LogModule& m, long bound);

} // namespace vablocks
