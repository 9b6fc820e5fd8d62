#pragma once

#include <map>
#include <memory>
#include <optional>
#include <tuple>

#include "vablocks/blocks.hpp"

namespace vablocks {

// Coefficient table of a logarithmic intertwining operator of type
// <D(M3); M2, M1>: for each log power 0 <= n <= d and window cell
// (l1,i1,l2,i2,l3,i3) the pairing <(u2)^n_(alpha) u1, u3> with
// alpha = (h1+l1)+(h2+l2)-(h3+l3)-1.  The log-degree bound is pinned to
// d = k1+k2+k3; sparser operators simply have zero top coefficients.
// Entries with l3 < 0 (exponents above the truncation bound) can be planted
// for testing and are what check_truncation rejects.
class IntwTable {
public:
    IntwTable(std::shared_ptr<const TriWindow> win, int d);

    const TriWindow& win() const { return *win_; }
    std::shared_ptr<const TriWindow> win_ptr() const { return win_; }
    int log_bound() const { return d_; }

    Scalar alpha(int l1, int l2, int l3) const;

    Scalar get(int n, int l1, int i1, int l2, int i2, int l3, int i3) const;
    const Scalar& at(int n, int cell_idx) const { return coef_[n][cell_idx]; }
    void set(int n, int l1, int i1, int l2, int i2, int l3, int i3, const Scalar& v);

    bool operator==(const IntwTable& o) const {
        return d_ == o.d_ && coef_ == o.coef_ && planted_ == o.planted_;
    }

    const std::map<std::array<int, 7>, Scalar>& planted() const { return planted_; }

    // restriction of T[n] to a window functional
    std::vector<Scalar> layer(int n) const { return coef_[n]; }

private:
    std::shared_ptr<const TriWindow> win_;
    int d_;
    std::vector<std::vector<Scalar>> coef_;         // [n][cell]
    std::map<std::array<int, 7>, Scalar> planted_;  // out-of-shape entries
};

// truncation condition: no nonzero coefficient above the grading bound
CheckReport check_truncation(const IntwTable& t);

// coefficient-level L_{-1}-derivative property:
// (L_{-1}u2)^n_(alpha) = -alpha (u2)^n_(alpha-1) + (n+1)(u2)^{n+1}_(alpha-1)
CheckReport check_derivative(const IntwTable& t);

// the L_0 two-case formula
// (L_0 u)^n = [L_0, (u)^n] + (alpha+1)(u)^n - (n+1)(u)^{n+1}
CheckReport check_l0_identity(const IntwTable& t);

// the commutator form of translation covariance,
// [L_{-1}, (u)^n_(alpha)] = (L_{-1}u)^n_(alpha)
CheckReport check_translation_commutator(const IntwTable& t);

// both derived identities together
CheckReport fund_relations_check(const IntwTable& t);

// Residual of the Borcherds-type identity for one instance, as coordinates
// over the M3 level basis determined by the exponent offset.  nullopt when
// the instance is not representable in the window.
std::optional<std::vector<Scalar>> check_borcherds_intw(const CurrentAlgebra& alg,
                                                        const IntwTable& t, int wa, int ia,
                                                        long p, long q, int l1, int i1, int l2,
                                                        int i2, long alpha_offset, int n);

// full sweep over |p|,|q| <= bound, all basis a, all window instances
CheckReport intw_borcherds_sweep(const CurrentAlgebra& alg, const IntwTable& t, long bound);

struct AxiomSystemStats {
    int unknowns = 0;
    long borcherds_rows = 0;
    long fund_rows = 0;
    long derivative_rows = 0;
    int rank = 0;
    int dimension = 0;
};

// Dimension of the solution space of the intertwiner axiom system on the
// window: unknowns are all table entries, equations are the representable
// Borcherds rows for every log power, the L_0 identities, and the in-window
// derivative identities.
AxiomSystemStats intw_axiom_dimension(const CurrentAlgebra& alg, const LogModule& m1,
                                      const LogModule& m2, const LogModule& m3, int L);

// Polynomial in two commuting nilpotent variables x1, x2 acting on formal
// tokens (u)^l with 0 <= l <= token_cap; x3 acts by the substitution rule
// x3 (u)^l = (x1+x2)(u)^l + (l+1)(u)^{l+1}.
class NilpotentSymbol {
public:
    NilpotentSymbol(int depth1, int depth2, int token_cap)
        : d1_(depth1), d2_(depth2), cap_(token_cap) {}

    static NilpotentSymbol token(int depth1, int depth2, int token_cap, int ell) {
        NilpotentSymbol s(depth1, depth2, token_cap);
        if (ell <= token_cap) s.terms_[{0, 0, ell}] = 1;
        return s;
    }

    bool is_zero() const { return terms_.empty(); }
    void add(int e1, int e2, int ell, const Scalar& c);
    NilpotentSymbol& operator+=(const NilpotentSymbol& o);
    NilpotentSymbol& operator*=(const Scalar& s);
    bool operator==(const NilpotentSymbol& o) const { return terms_ == o.terms_; }

    NilpotentSymbol mul_x1() const;
    NilpotentSymbol mul_x2() const;
    NilpotentSymbol apply_x3() const;

    const std::map<std::tuple<int, int, int>, Scalar>& terms() const { return terms_; }

private:
    int d1_, d2_, cap_;
    std::map<std::tuple<int, int, int>, Scalar> terms_;
};

// x3^p (u)^q = sum_{l=0}^{min(p,d-q)} C(p,l) (q+l)!/q! (x1+x2)^{p-l} (u)^{q+l}
bool lemma38_verify(int p, int q, int d);

} // namespace vablocks
