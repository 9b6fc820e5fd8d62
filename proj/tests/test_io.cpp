#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vablocks/correspondence.hpp"
#include "vablocks/heisenberg.hpp"
#include "vablocks/io.hpp"

using namespace vablocks;

TEST_CASE("scalar strings are bit-exact") {
    CHECK(scalar_to_string(frac(4, 6)) == "2/3");
    CHECK(scalar_to_string(Scalar(7)) == "7");
    CHECK(scalar_to_string(frac(-3, 9)) == "-1/3");
    CHECK(scalar_from_string("2/3") == frac(2, 3));
    CHECK(scalar_from_string("-5") == Scalar(-5));
    CHECK(scalar_from_string("6/4") == frac(3, 2)); // canonicalized on load
    CHECK_THROWS(scalar_from_string("1/0"));
    CHECK_THROWS(scalar_from_string("abc"));
    CHECK_THROWS(scalar_from_string(""));
}

TEST_CASE("voa file round trip preserves the structure table") {
    TruncatedVOA v = heisenberg_voa(3);
    json j = save_voa(v);
    TruncatedVOA w = load_voa(j);
    CHECK(w.l_max() == v.l_max());
    CHECK(w.central_charge() == v.central_charge());
    CHECK(w.products() == v.products());
    CHECK(w.vacuum() == v.vacuum());
    CHECK(w.omega() == v.omega());
    CHECK(check_grading_translation(w).pass());
    CHECK(save_voa(w) == j); // byte-stable serialization
}

TEST_CASE("module file round trip preserves actions and validates") {
    TruncatedVOA v = heisenberg_voa(3);
    LogModule m = log_fock_module(v, frac(1, 2), 2);
    json j = save_module(m);
    LogModule w = load_module(j, v, m.name());
    CHECK(w.h() == m.h());
    CHECK(w.depth() == 1);
    for (int lv = 0; lv <= 2; ++lv) CHECK(w.dim(lv) == m.dim(lv));
    CHECK(w.l0() == m.l0());
    CHECK(save_module(w) == j);
}

TEST_CASE("corrupted module files are rejected") {
    TruncatedVOA v = heisenberg_voa(3);
    json j = save_module(fock_module(v, Scalar(1), 2));
    json bad = j;
    bad["depth"] = 1; // declared depth must match the computed one
    CHECK_THROWS_AS((void)load_module(bad, v, "bad"), ValidationError);
    bad = j;
    bad["l0"][0][0][0] = "1"; // disagrees with the omega_(1) action (h = 1/2)
    CHECK_THROWS_AS((void)load_module(bad, v, "bad"), ValidationError);
    bad = j;
    bad["h"] = "1/3"; // L0 - h - n is no longer nilpotent
    CHECK_THROWS_AS((void)load_module(bad, v, "bad"), ValidationError);
    bad = j;
    bad["actions"][0]["a"] = "nonexistent";
    CHECK_THROWS_AS((void)load_module(bad, v, "bad"), UnknownBasisError);
}

TEST_CASE("intertwiner table file round trip") {
    TruncatedVOA v = heisenberg_voa(4);
    CurrentAlgebra alg(v);
    LogModule m1 = log_fock_module(v, Scalar(1), 2);
    LogModule m2 = fock_module(v, Scalar(1), 2);
    LogModule m3 = log_fock_module(v, Scalar(-2), 2);
    auto basis = block_basis(alg, m1, m2, m3, 2);
    REQUIRE(!basis.empty());
    IntwTable t = intw_from_block(basis[0]);
    json j = save_intw(t);
    IntwTable w = load_intw(j, basis[0].win);
    CHECK(w == t);
    CHECK(save_intw(w) == j);
}
