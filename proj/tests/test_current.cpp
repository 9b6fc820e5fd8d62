#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vablocks/current.hpp"
#include "vablocks/heisenberg.hpp"

using namespace vablocks;

namespace {

struct Fixture {
    TruncatedVOA voa = heisenberg_voa(6);
    CurrentAlgebra alg{voa};
    GradedVector vac = GradedVector::unit(0, 0);
    GradedVector alpha = GradedVector::unit(1, 0);
    GradedVector omega = GradedVector::unit(2, 1);
};

} // namespace

TEST_CASE("nabla reduction rewrites L_{-1} symbols one weight down") {
    Fixture f;
    // J(L_{-1}omega, xi^2) -> -2 J(omega, xi) = -2 J_0(omega)
    GradedVector lo = f.voa.virasoro(-1, f.omega); // weight 3
    CurrentElement raw = CurrentElement::from_symbol(lo, {{2, Scalar(1)}});
    CurrentElement red = f.alg.reduce(raw);
    CurrentElement expect = CurrentElement::basis_current(0, 2, 1);
    expect *= Scalar(-2);
    CHECK(red == expect);
    CHECK(f.alg.is_normal(red));

    // alpha is not in the image of L_{-1}: already normal
    CurrentElement a = CurrentElement::basis_current(3, 1, 0);
    CHECK(f.alg.reduce(a) == a);
    CHECK(f.alg.is_normal(a));

    // L_{-1}vac = 0, so its symbol is the zero class
    GradedVector lvac = f.voa.virasoro(-1, f.vac);
    CHECK(lvac.is_zero());
    CHECK(f.alg.reduce(CurrentElement::from_symbol(lvac, {{5, Scalar(1)}})).is_zero());

    // central degree: J_n(vac) = 0 for n != 0, J_0(vac) survives
    for (int n = -3; n <= 3; ++n) {
        CurrentElement jv = f.alg.reduce(CurrentElement::basis_current(n, 0, 0));
        if (n == 0)
            CHECK(jv == CurrentElement::basis_current(0, 0, 0));
        else
            CHECK(jv.is_zero());
    }
}

TEST_CASE("bracket with the vacuum current vanishes") {
    Fixture f;
    for (int n = -2; n <= 2; ++n)
        for (int m = -2; m <= 2; ++m) {
            CurrentElement jv = CurrentElement::basis_current(n, 0, 0);
            CurrentElement y = CurrentElement::basis_current(m, 2, 1);
            CHECK(f.alg.bracket(jv, y).is_zero());
            CHECK(f.alg.bracket(y, jv).is_zero());
        }
}

TEST_CASE("virasoro current bracket with central term") {
    Fixture f;
    // [J_2(omega), J_{-2}(omega)] = 4 J_0(omega) + (c/2) J_0(vac)
    CurrentElement x = CurrentElement::basis_current(2, 2, 1);
    CurrentElement y = CurrentElement::basis_current(-2, 2, 1);
    CurrentElement br = f.alg.bracket(x, y);
    CurrentElement expect = CurrentElement::basis_current(0, 2, 1);
    expect *= Scalar(4);
    CurrentElement central = CurrentElement::basis_current(0, 0, 0);
    central *= Scalar(1, 2);
    expect += central;
    CHECK(br == expect);
}

TEST_CASE("heisenberg currents close on the central element") {
    Fixture f;
    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n) {
            CurrentElement x = CurrentElement::basis_current(m, 1, 0);
            CurrentElement y = CurrentElement::basis_current(n, 1, 0);
            CurrentElement br = f.alg.bracket(x, y);
            if (m + n == 0 && m != 0) {
                CurrentElement expect = CurrentElement::basis_current(0, 0, 0);
                expect *= Scalar(m);
                CHECK(br == expect);
            } else {
                CHECK(br.is_zero());
            }
        }
}

TEST_CASE("theta mirrors indices with parity sign") {
    Fixture f;
    for (int n = -4; n <= 4; ++n) {
        // L_1 omega = 0 and |omega| even: theta(J_n(omega)) = J_{-n}(omega)
        CurrentElement to = f.alg.theta(CurrentElement::basis_current(n, 2, 1));
        CHECK(to == f.alg.reduce(CurrentElement::basis_current(-n, 2, 1)));
        // weight-1 primary: theta(J_n(alpha)) = -J_{-n}(alpha)
        CurrentElement ta = f.alg.theta(CurrentElement::basis_current(n, 1, 0));
        CurrentElement ea = f.alg.reduce(CurrentElement::basis_current(-n, 1, 0));
        ea *= Scalar(-1);
        CHECK(ta == ea);
    }
}

TEST_CASE("theta is an involution on basis currents") {
    Fixture f;
    for (int n = -4; n <= 4; ++n)
        for (int w = 0; w <= 4; ++w)
            for (int i = 0; i < f.voa.dim(w); ++i) {
                CurrentElement j = CurrentElement::basis_current(n, w, i);
                CHECK(f.alg.theta(f.alg.theta(j)) == f.alg.reduce(j));
            }
}

TEST_CASE("theta is an anti-homomorphism") {
    Fixture f;
    // all basis currents with |n| <= 2 and |a| <= 3 (products stay under the cutoff)
    std::vector<CurrentElement> xs;
    for (int n = -2; n <= 2; ++n)
        for (int w = 0; w <= 3; ++w)
            for (int i = 0; i < f.voa.dim(w); ++i)
                xs.push_back(CurrentElement::basis_current(n, w, i));
    for (const auto& x : xs)
        for (const auto& y : xs) {
            CurrentElement lhs = f.alg.theta(f.alg.bracket(x, y));
            CurrentElement rhs = f.alg.bracket(f.alg.theta(y), f.alg.theta(x));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("antisymmetry, jacobi, and degree additivity") {
    Fixture f;
    std::vector<std::pair<int, std::pair<int, int>>> gens; // (degree, basis)
    for (int n = -2; n <= 2; ++n) {
        gens.push_back({n, {1, 0}});
        gens.push_back({n, {2, 1}});
        gens.push_back({n, {2, 0}});
    }
    auto cur = [](const std::pair<int, std::pair<int, int>>& g) {
        return CurrentElement::basis_current(g.first, g.second.first, g.second.second);
    };
    for (const auto& gx : gens)
        for (const auto& gy : gens) {
            CurrentElement br = f.alg.bracket(cur(gx), cur(gy));
            CurrentElement anti = f.alg.bracket(cur(gy), cur(gx));
            anti *= Scalar(-1);
            CHECK(br == anti);
            for (const auto& [deg, comp] : br.comps()) {
                (void)comp;
                CHECK(deg == gx.first + gy.first);
            }
        }
    // Jacobi on triples of low weight (triple products stay representable)
    std::vector<std::pair<int, std::pair<int, int>>> small;
    for (int n = -1; n <= 1; ++n) {
        small.push_back({n, {1, 0}});
        small.push_back({n, {2, 1}});
    }
    for (const auto& gx : small)
        for (const auto& gy : small)
            for (const auto& gz : small) {
                CurrentElement s = f.alg.bracket(cur(gx), f.alg.bracket(cur(gy), cur(gz)));
                s += f.alg.bracket(cur(gy), f.alg.bracket(cur(gz), cur(gx)));
                s += f.alg.bracket(cur(gz), f.alg.bracket(cur(gx), cur(gy)));
                CHECK(s.is_zero());
            }
}

TEST_CASE("reduction is idempotent and class-preserving on random sums") {
    Fixture f;
    // raw symbols J(a, xi^e) for inhomogeneous a; reduce twice
    GradedVector a = f.voa.virasoro(-1, f.omega);
    a += f.alpha;
    a += GradedVector::unit(2, 0);
    for (long e = -3; e <= 3; ++e) {
        CurrentElement raw = CurrentElement::from_symbol(a, {{e, Scalar(3, 7)}});
        CurrentElement red = f.alg.reduce(raw);
        CHECK(f.alg.is_normal(red));
        CHECK(f.alg.reduce(red) == red);
    }
}
