#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vablocks/heisenberg.hpp"
#include "vablocks/intertwiner.hpp"

using namespace vablocks;

TEST_CASE("nilpotent symbol algebra basics") {
    NilpotentSymbol t = NilpotentSymbol::token(2, 2, 1, 0);
    // x1 x2 = x2 x1
    CHECK(t.mul_x1().mul_x2() == t.mul_x2().mul_x1());
    // nilpotency truncates
    CHECK(t.mul_x1().mul_x1().mul_x1().is_zero());
    // substitution rule: x3 (u)^0 = (x1+x2)(u)^0 + (u)^1
    NilpotentSymbol lhs = t.apply_x3();
    NilpotentSymbol rhs = t.mul_x1();
    rhs += t.mul_x2();
    rhs += NilpotentSymbol::token(2, 2, 1, 1);
    CHECK(lhs == rhs);
    // top token: the shift term is absent
    NilpotentSymbol top = NilpotentSymbol::token(2, 2, 1, 1);
    NilpotentSymbol lhs2 = top.apply_x3();
    NilpotentSymbol rhs2 = top.mul_x1();
    rhs2 += top.mul_x2();
    CHECK(lhs2 == rhs2);
}

TEST_CASE("closed form for powers of x3") {
    for (int d = 0; d <= 4; ++d)
        for (int q = 0; q <= d; ++q)
            for (int p = 0; p <= 4; ++p) {
                INFO("p=", p, " q=", q, " d=", d);
                CHECK(lemma38_verify(p, q, d));
            }
}

TEST_CASE("planted coefficient above the truncation bound is rejected") {
    TruncatedVOA voa = heisenberg_voa(3);
    CurrentAlgebra alg(voa);
    LogModule m = fock_module(voa, Scalar(1), 2);
    auto win = std::make_shared<TriWindow>(m, m, m, 2);
    IntwTable t(win, 0);
    CHECK(check_truncation(t).pass()); // zero operator passes

    t.set(0, 0, 0, 0, 0, -1, 0, Scalar(5));
    CheckReport rep = check_truncation(t);
    CHECK(!rep.pass());
    CHECK(rep.failure_count == 1);

    t.set(0, 0, 0, 0, 0, -1, 0, Scalar(0));
    CHECK(check_truncation(t).pass());
}

TEST_CASE("table writes outside the window are rejected") {
    TruncatedVOA voa = heisenberg_voa(3);
    CurrentAlgebra alg(voa);
    LogModule m = fock_module(voa, Scalar(1), 2);
    auto win = std::make_shared<TriWindow>(m, m, m, 1);
    IntwTable t(win, 0);
    CHECK_THROWS_AS(t.set(0, 1, 0, 1, 0, 1, 0, Scalar(1)), WindowTooSmallError);
    CHECK_THROWS_AS((void)t.get(0, 1, 0, 1, 0, 1, 0), WindowTooSmallError);
    CHECK_THROWS_AS(t.set(1, 0, 0, 0, 0, 0, 0, Scalar(1)), ValidationError);
}
