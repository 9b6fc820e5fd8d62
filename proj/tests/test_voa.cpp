#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vablocks/heisenberg.hpp"
#include "vablocks/voa.hpp"

using namespace vablocks;

namespace {

VOAData data_of(const TruncatedVOA& v) {
    VOAData d;
    d.l_max = v.l_max();
    d.weights = v.weights();
    d.vacuum = v.basis_name(v.vacuum().first, v.vacuum().second);
    d.omega = v.basis_name(v.omega().first, v.omega().second);
    d.central_charge = v.central_charge();
    for (const auto& [key, res] : v.products()) {
        auto [wa, ia, n, wb, ib] = key;
        d.products.push_back({wa, ia, n, wb, ib, res});
    }
    return d;
}

} // namespace

TEST_CASE("heisenberg graded dimensions are partition counts") {
    TruncatedVOA v = heisenberg_voa(6);
    int expected[] = {1, 1, 2, 3, 5, 7, 11};
    for (int w = 0; w <= 6; ++w) CHECK(v.dim(w) == expected[w]);
}

TEST_CASE("vacuum modes act as delta_{n,-1} id") {
    TruncatedVOA v = heisenberg_voa(4);
    auto [vw, vi] = v.vacuum();
    GradedVector vac = GradedVector::unit(vw, vi);
    for (int w = 0; w <= 4; ++w)
        for (int i = 0; i < v.dim(w); ++i) {
            GradedVector b = GradedVector::unit(w, i);
            CHECK(v.mode_apply(vac, -1, b) == b);
            for (long n = 0; n <= 3; ++n) CHECK(v.mode_apply(vac, n, b).is_zero());
            // creation side of axiom (4): a_(-1)vac = a
            CHECK(v.mode_apply(b, -1, vac) == b);
        }
}

TEST_CASE("free boson pairing and omega products") {
    TruncatedVOA v = heisenberg_voa(4);
    auto [vw, vi] = v.vacuum();
    GradedVector vac = GradedVector::unit(vw, vi);
    auto [aw, ai] = v.find_basis("a1");
    GradedVector alpha = GradedVector::unit(aw, ai);
    auto [ow, oi] = v.find_basis("a1_1");
    GradedVector omega = GradedVector::unit(ow, oi);
    CHECK(std::make_pair(ow, oi) == v.omega());

    CHECK(v.mode_apply(alpha, 1, alpha) == vac);      // level-1 pairing
    CHECK(v.mode_apply(alpha, 2, alpha).is_zero());
    CHECK(v.mode_apply(alpha, 3, alpha).is_zero());
    CHECK(v.mode_apply(alpha, 0, alpha).is_zero());

    GradedVector two_omega = omega;
    two_omega *= Scalar(2);
    CHECK(v.virasoro(0, omega) == two_omega);         // L_0 omega = 2 omega
    CHECK(v.virasoro(1, omega).is_zero());            // L_1 omega = 0
    GradedVector half_vac = vac;
    half_vac *= Scalar(1, 2);
    CHECK(v.virasoro(2, omega) == half_vac);          // L_2 omega = (c/2) vac, c = 1
}

TEST_CASE("virasoro relations on the truncation") {
    TruncatedVOA v = heisenberg_voa(6);
    for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n) {
            CheckReport rep = check_virasoro(v, m, n);
            INFO("m=", m, " n=", n);
            CHECK(rep.pass());
            CHECK(rep.checked > 0);
        }
}

TEST_CASE("L_0 commutator with a mode has weight defect |a|-n-1") {
    TruncatedVOA v = heisenberg_voa(5);
    for (int wa = 0; wa <= 3; ++wa)
        for (int ia = 0; ia < v.dim(wa); ++ia)
            for (int wb = 0; wb <= 2; ++wb)
                for (int ib = 0; ib < v.dim(wb); ++ib)
                    for (long n = wa + wb - 5; n <= wa + wb; ++n) {
                        GradedVector a = GradedVector::unit(wa, ia);
                        GradedVector b = GradedVector::unit(wb, ib);
                        GradedVector anb = v.mode_apply(a, n, b);
                        GradedVector lhs = v.virasoro(0, anb);
                        lhs -= v.mode_apply(a, n, v.virasoro(0, b));
                        GradedVector rhs = anb;
                        rhs *= Scalar(wa - n - 1);
                        CHECK(lhs == rhs);
                    }
}

TEST_CASE("grading and translation axiom checker") {
    TruncatedVOA v = heisenberg_voa(5);
    CheckReport rep = check_grading_translation(v);
    CHECK(rep.pass());
    CHECK(rep.checked > 0);
}

TEST_CASE("borcherds identity: vacuum instances and a small sweep") {
    TruncatedVOA v = heisenberg_voa(4);
    auto [vw, vi] = v.vacuum();
    GradedVector vac = GradedVector::unit(vw, vi);
    GradedVector b = GradedVector::unit(2, 0);
    GradedVector c = GradedVector::unit(1, 0);
    for (long p = -2; p <= 2; ++p)
        for (long q = -2; q <= 2; ++q)
            for (long r = -2; r <= 2; ++r) {
                if (!borcherds_checkable(4, 4, 0, 2, 1, p, q, r)) continue;
                CHECK(check_borcherds(v, p, q, r, vac, b, c).is_zero());
            }

    long checked = 0;
    for (int wa = 0; wa <= 4; ++wa)
        for (int ia = 0; ia < v.dim(wa); ++ia)
            for (int wb = 0; wb <= 4; ++wb)
                for (int ib = 0; ib < v.dim(wb); ++ib)
                    for (int wc = 0; wc <= 4; ++wc)
                        for (int ic = 0; ic < v.dim(wc); ++ic)
                            for (long p = -2; p <= 2; ++p)
                                for (long q = -2; q <= 2; ++q)
                                    for (long r = -2; r <= 2; ++r) {
                                        if (!borcherds_checkable(4, 4, wa, wb, wc, p, q, r))
                                            continue;
                                        ++checked;
                                        GradedVector res = check_borcherds(
                                            v, p, q, r, GradedVector::unit(wa, ia),
                                            GradedVector::unit(wb, ib),
                                            GradedVector::unit(wc, ic));
                                        INFO("a=", v.basis_name(wa, ia), " b=",
                                             v.basis_name(wb, ib), " c=", v.basis_name(wc, ic),
                                             " p=", p, " q=", q, " r=", r);
                                        REQUIRE(res.is_zero());
                                    }
    CHECK(checked > 1000);
}

TEST_CASE("perturbed structure constants break the identity") {
    VOAData d = data_of(heisenberg_voa(4));
    // bump alpha_(1)alpha = vac to 2*vac
    bool bumped = false;
    for (auto& pr : d.products)
        if (pr.wa == 1 && pr.wb == 1 && pr.n == 1) {
            pr.result *= Scalar(2);
            bumped = true;
        }
    REQUIRE(bumped);
    TruncatedVOA bad(std::move(d));
    bool found_failure = false;
    for (long p = -3; p <= 3 && !found_failure; ++p)
        for (long q = -3; q <= 3 && !found_failure; ++q)
            for (long r = -3; r <= 3 && !found_failure; ++r)
                for (int wa = 0; wa <= 4 && !found_failure; ++wa)
                    for (int ia = 0; ia < bad.dim(wa) && !found_failure; ++ia)
                        for (int wb = 0; wb <= 4 && !found_failure; ++wb)
                            for (int ib = 0; ib < bad.dim(wb) && !found_failure; ++ib) {
                                if (!borcherds_checkable(4, 4, wa, wb, 1, p, q, r)) continue;
                                GradedVector res = check_borcherds(
                                    bad, p, q, r, GradedVector::unit(wa, ia),
                                    GradedVector::unit(wb, ib), GradedVector::unit(1, 0));
                                if (!res.is_zero()) found_failure = true;
                            }
    CHECK(found_failure);
}

TEST_CASE("products beyond the cutoff raise Truncated") {
    TruncatedVOA v = heisenberg_voa(4);
    GradedVector top = GradedVector::unit(4, 0);
    CHECK_THROWS_AS((void)v.mode_apply(top, 0, top), TruncatedError);
    CHECK_THROWS_AS((void)v.find_basis("nonexistent"), UnknownBasisError);
}
