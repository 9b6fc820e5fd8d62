#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "vablocks/current.hpp"
#include "vablocks/modules.hpp"
#include "vablocks/sparse.hpp"

namespace vablocks {

// Global meromorphic form a (x) z^p (z-1)^q (dz)^{1-k} on P^1 with poles in
// {0, 1, infinity}; a homogeneous of weight k.
struct P1Form {
    GradedVector a;
    long p = 0, q = 0;

    int weight() const;
};

enum class P1Point { Zero, One, Infinity };

// Laurent expansion of the form at one of the three points, as a reduced
// current; only degrees in [deg_lo, deg_hi] are materialized.  Every ladder
// ascends in degree, so the terms above deg_hi act by zero on any
// level-bounded vector; terms below deg_lo are genuinely cut and the caller
// must pick deg_lo low enough for its purpose.  At infinity this is -theta
// applied to the expansion.
CurrentElement expand_at(const CurrentAlgebra& alg, const P1Form& form, P1Point pt, int deg_lo,
                         int deg_hi);

// Lie bracket of two forms inside g(P^1, *p_A): finitely many forms with
// shifted exponents.
std::vector<std::pair<Scalar, P1Form>> form_bracket(const TruncatedVOA& voa, const P1Form& x,
                                                    const P1Form& y);

// Tri-graded truncation window: cells (l1,i1,l2,i2,l3,i3) over the level
// bases of three modules with l1+l2+l3 <= budget.
class TriWindow {
public:
    struct Cell {
        int l1, i1, l2, i2, l3, i3;
    };

    TriWindow(const LogModule& m1, const LogModule& m2, const LogModule& m3, int budget);

    const LogModule& mod(int slot) const { return *mods_[slot]; } // slot 0,1,2
    int budget() const { return budget_; }
    int dim() const { return static_cast<int>(cells_.size()); }
    const std::vector<Cell>& cells() const { return cells_; }
    // -1 when the cell lies outside the window
    int index(int l1, int i1, int l2, int i2, int l3, int i3) const;

private:
    std::array<const LogModule*, 3> mods_;
    int budget_;
    std::vector<Cell> cells_;
    std::vector<std::vector<std::vector<int>>> base_; // [l1][l2][l3] -> first flat index
};

// element of the truncated M^1 (x) M^2 (x) M^3
struct TriVector {
    std::map<std::array<int, 6>, Scalar> entries;

    void add(const std::array<int, 6>& key, const Scalar& c) {
        if (vablocks::is_zero(c)) return;
        auto it = entries.find(key);
        if (it == entries.end()) {
            entries[key] = c;
        } else {
            it->second += c;
            if (vablocks::is_zero(it->second)) entries.erase(it);
        }
    }
    bool is_zero() const { return entries.empty(); }
    static TriVector unit(const TriWindow::Cell& c) {
        TriVector t;
        t.entries[{c.l1, c.i1, c.l2, c.i2, c.l3, c.i3}] = 1;
        return t;
    }
};

// The three reduced window expansions of one relation form.  The degree
// window reaches low enough that every raising term that could land at or
// below the module cutoffs is materialized exactly.
struct FormExpansionTriple {
    CurrentElement at0, at1, atinf;
    int weight;
    long p, q;
};

// Expansion triples for all forms in the relation box (basis a of weight
// k <= l_max, |p|,|q| <= L+k+1), with exact duplicates removed.  Forms whose
// expansions have a nonzero reduced class below degree -l_mod_min can never
// give a representable relation and are skipped.
std::vector<FormExpansionTriple> form_expansion_triples(const CurrentAlgebra& alg, int L,
                                                        int l_mod_min,
                                                        long* considered = nullptr);

// The relation row of one form triple applied to one window generator, as
// coordinates over the window cells.  Returns nullopt when the full
// relation vector is not representable inside the window: a component
// beyond the window (or beyond a module cutoff, where it cannot be
// evaluated and its reduced class is nonzero) disqualifies the relation
// rather than being silently dropped.
std::optional<SparseVec> window_relation_row(const TriWindow& win, const FormExpansionTriple& tr,
                                             const TriWindow::Cell& cell);

// j_0-action on slot 1 + j_1-action on slot 2 + j_infinity-action on slot 3.
// Throws TruncatedError when the relation is not representable in the
// window.
TriVector relation_vector(const CurrentAlgebra& alg, const TriWindow& win, const P1Form& form,
                          const TriVector& t);

// linear functional on the window, annihilating every generated relation
struct BlockFunctional {
    std::shared_ptr<const TriWindow> win;
    std::vector<Scalar> coords;

    Scalar eval(const TriVector& t) const;
    Scalar at(int l1, int i1, int l2, int i2, int l3, int i3) const;
};

struct BlocksLevelStats {
    int level = 0;
    int window_dim = 0;
    long forms_considered = 0;
    long expansion_triples = 0;
    long relation_rows = 0;
    int rank = 0;
    int estimate = 0;
};

struct BlocksReport {
    std::vector<BlocksLevelStats> per_level;
    int estimate = 0;
    bool stabilized = false;
};

// Estimate of dim C*(M_A, p_A) on the truncated window: representable
// relations of all forms in the box applied to all window generators;
// estimate = window dim - rank.  The stabilization flag (estimate at L
// equals estimate at L-1) is a heuristic certificate, not a proof.
BlocksReport blocks_dimension(const CurrentAlgebra& alg, const LogModule& m1,
                              const LogModule& m2, const LogModule& m3, int L);

// Basis of the functionals annihilating all representable relations at
// budget L.
std::vector<BlockFunctional> block_basis(const CurrentAlgebra& alg, const LogModule& m1,
                                         const LogModule& m2, const LogModule& m3, int L);

} // namespace vablocks
