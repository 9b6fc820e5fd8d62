#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vablocks/heisenberg.hpp"
#include "vablocks/modules.hpp"

using namespace vablocks;

namespace {

ModuleData data_of(const LogModule& m) {
    ModuleData d;
    d.h = m.h();
    d.depth = m.depth();
    d.l_mod = m.l_mod();
    d.levels.resize(m.l_mod() + 1);
    for (int lv = 0; lv <= m.l_mod(); ++lv)
        for (int i = 0; i < m.dim(lv); ++i) d.levels[lv].push_back(m.level_name(lv, i));
    d.l0 = m.l0();
    d.actions = m.actions();
    return d;
}

} // namespace

TEST_CASE("ordinary fock module: lowest weight, depth, dimensions") {
    TruncatedVOA v = heisenberg_voa(4);
    LogModule f = fock_module(v, Scalar(3, 2), 4);
    CHECK(f.h() == Scalar(9, 8)); // (3/2)^2 / 2
    CHECK(f.depth() == 0);
    int expected[] = {1, 1, 2, 3, 5};
    for (int lv = 0; lv <= 4; ++lv) CHECK(f.dim(lv) == expected[lv]);

    // L0 on the lowest level is h * id
    GradedVector u = GradedVector::unit(0, 0);
    GradedVector l0u = f.l0_apply(u);
    GradedVector hu = u;
    hu *= f.h();
    CHECK(l0u == hu);

    // zero mode eigenvalue
    auto [aw, ai] = v.find_basis("a1");
    GradedVector zu = f.act_mode(aw, ai, 0, u);
    GradedVector lu = u;
    lu *= Scalar(3, 2);
    CHECK(zu == lu);

    // J_0(vac) acts as the identity
    CurrentAlgebra alg(v);
    CurrentElement j0vac = CurrentElement::basis_current(0, 0, 0);
    for (int lv = 0; lv <= 2; ++lv)
        for (int i = 0; i < f.dim(lv); ++i) {
            GradedVector w = GradedVector::unit(lv, i);
            CHECK(f.act_current(j0vac, w) == w);
        }
}

TEST_CASE("lambda = 0 fock module reproduces vacuum graded dimensions") {
    TruncatedVOA v = heisenberg_voa(4);
    LogModule f = fock_module(v, Scalar(0), 4);
    for (int lv = 0; lv <= 4; ++lv) CHECK(f.dim(lv) == v.dim(lv));
    CHECK(f.h() == 0);
}

TEST_CASE("logarithmic fock module: genuine nilpotent part") {
    TruncatedVOA v = heisenberg_voa(4);
    LogModule lf = log_fock_module(v, Scalar(1), 4);
    CHECK(lf.depth() == 1);
    CHECK(lf.h() == Scalar(1, 2));
    int expected[] = {2, 2, 4, 6, 10};
    for (int lv = 0; lv <= 4; ++lv) CHECK(lf.dim(lv) == expected[lv]);

    // (L0 - h) maps the top copy to its partner and the partner to 0
    GradedVector top = GradedVector::unit(0, 1);
    GradedVector partner = GradedVector::unit(0, 0);
    GradedVector nil_top = lf.l0_apply(top);
    GradedVector htop = top;
    htop *= lf.h();
    nil_top -= htop;
    CHECK(nil_top == partner);
    GradedVector nil_partner = lf.l0_apply(partner);
    GradedVector hp = partner;
    hp *= lf.h();
    nil_partner -= hp;
    CHECK(nil_partner.is_zero());

    // depth declaration is validated: lambda = 0 self-extension is depth 0
    LogModule flat = log_fock_module(v, Scalar(0), 2);
    CHECK(flat.depth() == 0);
}

TEST_CASE("module borcherds sweep passes on fock and log-fock") {
    TruncatedVOA v = heisenberg_voa(3);
    LogModule f = fock_module(v, Scalar(2), 3);
    CheckReport rep = module_borcherds_sweep(f, 2);
    CHECK(rep.pass());
    CHECK(rep.checked > 500);

    LogModule lf = log_fock_module(v, Scalar(-1), 3);
    CheckReport rep2 = module_borcherds_sweep(lf, 2);
    CHECK(rep2.pass());
}

TEST_CASE("corrupted action table fails the sweep") {
    TruncatedVOA v = heisenberg_voa(3);
    ModuleData d = data_of(fock_module(v, Scalar(1), 3));
    auto [aw, ai] = v.find_basis("a1");
    bool bumped = false;
    for (auto& a : d.actions)
        if (a.wa == aw && a.ia == ai && a.m == -1 && a.level == 0 && !bumped) {
            a.result *= Scalar(3);
            bumped = true;
        }
    REQUIRE(bumped);
    LogModule bad(v, std::move(d), "corrupt");
    CheckReport rep = module_borcherds_sweep(bad, 2);
    CHECK(!rep.pass());
}

TEST_CASE("action respects the current bracket") {
    TruncatedVOA v = heisenberg_voa(4);
    CurrentAlgebra alg(v);
    LogModule lf = log_fock_module(v, Scalar(2), 4);
    std::vector<CurrentElement> xs;
    for (int n = -1; n <= 1; ++n) {
        xs.push_back(CurrentElement::basis_current(n, 1, 0));
        xs.push_back(CurrentElement::basis_current(n, 2, 1));
    }
    for (const auto& x : xs)
        for (const auto& y : xs)
            for (int lv = 0; lv <= 1; ++lv)
                for (int i = 0; i < lf.dim(lv); ++i) {
                    GradedVector u = GradedVector::unit(lv, i);
                    GradedVector lhs = lf.act_current(alg.bracket(x, y), u);
                    GradedVector rhs = lf.act_current(x, lf.act_current(y, u));
                    rhs -= lf.act_current(y, lf.act_current(x, u));
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("contragredient dual: pairing, eigenvalues, involution") {
    TruncatedVOA v = heisenberg_voa(4);
    CurrentAlgebra alg(v);
    LogModule f = fock_module(v, Scalar(2), 3);
    LogModule df = dual_module(alg, f);

    for (int lv = 0; lv <= 3; ++lv) CHECK(df.dim(lv) == f.dim(lv));
    CHECK(df.depth() == f.depth());

    // alpha_0 eigenvalue on the dual lowest level is -lambda
    auto [aw, ai] = v.find_basis("a1");
    GradedVector phi = GradedVector::unit(0, 0);
    GradedVector zphi = df.act_mode(aw, ai, 0, phi);
    GradedVector expect = phi;
    expect *= Scalar(-2);
    CHECK(zphi == expect);

    // <L_n phi, u> = <phi, L_{-n} u>
    auto [ow, oi] = v.omega();
    for (long n = -2; n <= 2; ++n)
        for (int lsrc = 0; lsrc <= 3; ++lsrc) {
            int ldst = lsrc - static_cast<int>(n);
            if (ldst < 0 || ldst > 3) continue;
            for (int j = 0; j < df.dim(lsrc); ++j)
                for (int i = 0; i < f.dim(ldst); ++i) {
                    GradedVector lphi =
                        df.act_mode(ow, oi, n + 1, GradedVector::unit(lsrc, j));
                    GradedVector lu =
                        f.act_mode(ow, oi, -n + 1, GradedVector::unit(ldst, i));
                    CHECK(lphi.coeff(ldst, i) == lu.coeff(lsrc, j));
                }
        }

    // double dual restores the action table entry-by-entry on samples
    LogModule ddf = dual_module(alg, df);
    for (int lv = 0; lv <= 3; ++lv) CHECK(ddf.dim(lv) == f.dim(lv));
    for (int wa = 0; wa <= 3; ++wa)
        for (int ia = 0; ia < v.dim(wa); ++ia)
            for (int lv = 0; lv <= 3; ++lv)
                for (int i = 0; i < f.dim(lv); ++i)
                    for (long m = lv + wa - 4; m <= lv + wa - 1; ++m) {
                        long target = lv + wa - 1 - m;
                        if (target < 0 || target > 3) continue;
                        GradedVector a = ddf.act_mode(wa, ia, m, GradedVector::unit(lv, i));
                        GradedVector b = f.act_mode(wa, ia, m, GradedVector::unit(lv, i));
                        CHECK(a == b);
                    }

    // dual of the logarithmic module stays in the same category
    LogModule lf = log_fock_module(v, Scalar(1), 3);
    LogModule dlf = dual_module(alg, lf);
    CHECK(dlf.depth() == 1);
    CheckReport rep = module_borcherds_sweep(dlf, 1);
    CHECK(rep.pass());
}

TEST_CASE("actions beyond the level cutoff raise Truncated") {
    TruncatedVOA v = heisenberg_voa(4);
    LogModule f = fock_module(v, Scalar(1), 3);
    auto [aw, ai] = v.find_basis("a1");
    CHECK_THROWS_AS((void)f.act_mode(aw, ai, -1, GradedVector::unit(3, 0)), TruncatedError);
}
