#include "vablocks/blocks.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vablocks {

int P1Form::weight() const {
    auto g = a.homogeneous_grade();
    if (!g) throw ValidationError("P1Form coefficient vector must be homogeneous");
    return *g;
}

CurrentElement expand_at(const CurrentAlgebra& alg, const P1Form& form, P1Point pt, int deg_lo,
                         int deg_hi) {
    const int k = form.weight();
    CurrentElement raw;
    switch (pt) {
    case P1Point::Zero: {
        // sum_i (-1)^{q-i} C(q,i) J_{p+i-k+1}(a)
        for (long i = std::max(0L, deg_lo - form.p + k - 1);
             form.p + i - k + 1 <= deg_hi; ++i) {
            Scalar c = binomial(form.q, i);
            if (is_zero(c)) {
                if (form.q >= 0 && i > form.q) break;
                continue;
            }
            if ((form.q - i) % 2 != 0) c = -c;
            GradedVector t = form.a;
            t *= c;
            raw.add(static_cast<int>(form.p + i - k + 1), t);
        }
        return alg.reduce(raw);
    }
    case P1Point::One: {
        // sum_i C(p,i) J_{q+i-k+1}(a)
        for (long i = std::max(0L, deg_lo - form.q + k - 1);
             form.q + i - k + 1 <= deg_hi; ++i) {
            Scalar c = binomial(form.p, i);
            if (is_zero(c)) {
                if (form.p >= 0 && i > form.p) break;
                continue;
            }
            GradedVector t = form.a;
            t *= c;
            raw.add(static_cast<int>(form.q + i - k + 1), t);
        }
        return alg.reduce(raw);
    }
    case P1Point::Infinity: {
        // -theta( sum_i (-1)^i C(q,i) J_{p+q-i-k+1}(a) ); theta negates the
        // degree, so keep raw degrees in [-deg_hi, -deg_lo]
        for (long i = std::max(0L, form.p + form.q - k + 1 + deg_lo);
             form.p + form.q - i - k + 1 >= -deg_hi; ++i) {
            Scalar c = binomial(form.q, i);
            if (is_zero(c)) {
                if (form.q >= 0 && i > form.q) break;
                continue;
            }
            if (i % 2 != 0) c = -c;
            GradedVector t = form.a;
            t *= c;
            raw.add(static_cast<int>(form.p + form.q - i - k + 1), t);
        }
        CurrentElement th = alg.theta(raw);
        th *= Scalar(-1);
        return th;
    }
    }
    return raw;
}

std::vector<std::pair<Scalar, P1Form>> form_bracket(const TruncatedVOA& voa, const P1Form& x,
                                                    const P1Form& y) {
    const int ka = x.weight();
    const int kb = y.weight();
    std::vector<std::pair<Scalar, P1Form>> out;
    for (int m = 0; m < ka + kb; ++m) {
        GradedVector ab = voa.mode_apply(x.a, m, y.a);
        if (ab.is_zero()) continue;
        // d^m/dz^m [z^p (z-1)^q] = sum_j C(m,j) p^(j) q^(m-j) z^{p-j} (z-1)^{q-m+j}
        for (int j = 0; j <= m; ++j) {
            Scalar c = binomial(m, j) * falling(x.p, j) * falling(x.q, m - j) * inv_factorial(m);
            if (is_zero(c)) continue;
            out.push_back({c, P1Form{ab, x.p - j + y.p, x.q - (m - j) + y.q}});
        }
    }
    return out;
}

TriWindow::TriWindow(const LogModule& m1, const LogModule& m2, const LogModule& m3, int budget)
    : mods_{&m1, &m2, &m3}, budget_(budget) {
    if (budget < 0) throw BudgetExceededError("negative level budget");
    for (const LogModule* m : mods_)
        if (m->l_mod() < budget)
            throw BudgetExceededError("level budget " + std::to_string(budget) +
                                      " exceeds module cutoff of " + m->name());
    base_.assign(budget + 1, {});
    for (int l1 = 0; l1 <= budget; ++l1) {
        base_[l1].assign(budget + 1 - l1, {});
        for (int l2 = 0; l2 + l1 <= budget; ++l2) {
            base_[l1][l2].assign(budget + 1 - l1 - l2, 0);
            for (int l3 = 0; l3 + l2 + l1 <= budget; ++l3) {
                base_[l1][l2][l3] = static_cast<int>(cells_.size());
                for (int i1 = 0; i1 < m1.dim(l1); ++i1)
                    for (int i2 = 0; i2 < m2.dim(l2); ++i2)
                        for (int i3 = 0; i3 < m3.dim(l3); ++i3)
                            cells_.push_back({l1, i1, l2, i2, l3, i3});
            }
        }
    }
}

int TriWindow::index(int l1, int i1, int l2, int i2, int l3, int i3) const {
    if (l1 < 0 || l2 < 0 || l3 < 0 || l1 + l2 + l3 > budget_) return -1;
    const int d2 = mods_[1]->dim(l2), d3 = mods_[2]->dim(l3);
    return base_[l1][l2][l3] + (i1 * d2 + i2) * d3 + i3;
}

std::vector<FormExpansionTriple> form_expansion_triples(const CurrentAlgebra& alg, int L,
                                                        int l_mod_min, long* considered) {
    const TruncatedVOA& voa = alg.voa();
    // low enough that every raising term landing at or below the cutoffs is
    // exact; anything still lower can never be representable
    const int deg_lo = -(L + 2 * voa.l_max() + 1);
    std::vector<FormExpansionTriple> kept;
    std::set<std::string> seen;
    long total = 0;
    for (int k = 0; k <= voa.l_max(); ++k)
        for (int ia = 0; ia < voa.dim(k); ++ia) {
            const long B = L + k + 1;
            GradedVector a = GradedVector::unit(k, ia);
            for (long p = -B; p <= B; ++p)
                for (long q = -B; q <= B; ++q) {
                    ++total;
                    P1Form f{a, p, q};
                    FormExpansionTriple tr{expand_at(alg, f, P1Point::Zero, deg_lo, L),
                                           expand_at(alg, f, P1Point::One, deg_lo, L),
                                           expand_at(alg, f, P1Point::Infinity, deg_lo, L), k,
                                           p, q};
                    if (tr.at0.is_zero() && tr.at1.is_zero() && tr.atinf.is_zero()) continue;
                    // a nonzero class below degree -l_mod_min raises every
                    // state beyond the cutoff: never representable
                    if (tr.at0.min_degree() < -l_mod_min || tr.at1.min_degree() < -l_mod_min ||
                        tr.atinf.min_degree() < -l_mod_min)
                        continue;
                    std::ostringstream key;
                    for (const CurrentElement* c : {&tr.at0, &tr.at1, &tr.atinf}) {
                        key << "|";
                        for (const auto& [n, v] : c->comps())
                            for (const auto& [ki, s] : v.entries())
                                key << n << "," << ki.first << "," << ki.second << ","
                                    << scalar_to_string(s) << ";";
                    }
                    if (!seen.insert(key.str()).second) continue;
                    kept.push_back(std::move(tr));
                }
        }
    if (considered) *considered = total;
    return kept;
}

namespace {

// Apply one slot current to the slot component of a window cell.  Returns
// false when some component escapes the window (or a cutoff) with a value
// that is not provably zero.
bool slot_apply_checked(const TriWindow& win, const CurrentElement& cur, int slot,
                        const TriWindow::Cell& cell, const Scalar& scale, TriVector& out) {
    const LogModule& m = win.mod(slot);
    const int levels[3] = {cell.l1, cell.l2, cell.l3};
    const int idxs[3] = {cell.i1, cell.i2, cell.i3};
    const int ls = levels[slot];
    const int cap = win.budget() - (levels[0] + levels[1] + levels[2] - ls);
    for (const auto& [n, v] : cur.comps()) {
        const long target = ls - n;
        if (target < 0) continue;
        if (target > m.l_mod()) return false; // reduced class nonzero, cannot evaluate
        for (const auto& [ki, c] : v.entries()) {
            const GradedVector& r =
                m.act_basis_mode(ki.first, ki.second, ki.first - 1 + n, ls, idxs[slot]);
            if (r.is_zero()) continue;
            if (target > cap) return false; // escapes the window
            for (const auto& [rk, rc] : r.entries()) {
                std::array<int, 6> nk{cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, cell.i3};
                nk[2 * slot] = rk.first;
                nk[2 * slot + 1] = rk.second;
                out.add(nk, scale * c * rc);
            }
        }
    }
    return true;
}

bool triple_relation_checked(const TriWindow& win, const FormExpansionTriple& tr,
                             const TriWindow::Cell& cell, TriVector& out) {
    return slot_apply_checked(win, tr.at0, 0, cell, 1, out) &&
           slot_apply_checked(win, tr.at1, 1, cell, 1, out) &&
           slot_apply_checked(win, tr.atinf, 2, cell, 1, out);
}

} // namespace

std::optional<SparseVec> window_relation_row(const TriWindow& win, const FormExpansionTriple& tr,
                                             const TriWindow::Cell& cell) {
    TriVector rel;
    if (!triple_relation_checked(win, tr, cell, rel)) return std::nullopt;
    SparseVec row;
    for (const auto& [key, c] : rel.entries) {
        int idx = win.index(key[0], key[1], key[2], key[3], key[4], key[5]);
        row.emplace_back(idx, c); // representable: idx >= 0
    }
    return sparse_normalize(std::move(row));
}

TriVector relation_vector(const CurrentAlgebra& alg, const TriWindow& win, const P1Form& form,
                          const TriVector& t) {
    const int deg_lo = -(win.budget() + 2 * alg.voa().l_max() + 1);
    const int L = win.budget();
    FormExpansionTriple tr{expand_at(alg, form, P1Point::Zero, deg_lo, L),
                           expand_at(alg, form, P1Point::One, deg_lo, L),
                           expand_at(alg, form, P1Point::Infinity, deg_lo, L), form.weight(),
                           form.p, form.q};
    TriVector out;
    for (const auto& [key, c] : t.entries) {
        TriWindow::Cell cell{key[0], key[1], key[2], key[3], key[4], key[5]};
        TriVector part;
        if (!triple_relation_checked(win, tr, cell, part))
            throw TruncatedError("relation of the form is not representable in the window");
        for (const auto& [k2, c2] : part.entries) out.add(k2, c * c2);
    }
    return out;
}

Scalar BlockFunctional::eval(const TriVector& t) const {
    Scalar s(0);
    for (const auto& [key, c] : t.entries) {
        int idx = win->index(key[0], key[1], key[2], key[3], key[4], key[5]);
        if (idx >= 0) s += c * coords[idx];
    }
    return s;
}

Scalar BlockFunctional::at(int l1, int i1, int l2, int i2, int l3, int i3) const {
    int idx = win->index(l1, i1, l2, i2, l3, i3);
    if (idx < 0)
        throw WindowTooSmallError("functional not defined on cell outside its window");
    return coords[idx];
}

namespace {

struct Assembly {
    int window_dim = 0;
    long forms_considered = 0;
    long triples = 0;
    long rows = 0;
    RowEchelon ech{0};
};

Assembly assemble_relations(const CurrentAlgebra& alg, const TriWindow& win) {
    Assembly out;
    out.window_dim = win.dim();
    out.ech = RowEchelon(win.dim());
    const int l_mod_min =
        std::min({win.mod(0).l_mod(), win.mod(1).l_mod(), win.mod(2).l_mod()});
    auto kept = form_expansion_triples(alg, win.budget(), l_mod_min, &out.forms_considered);
    out.triples = static_cast<long>(kept.size());
    for (const auto& tr : kept)
        for (const auto& cell : win.cells()) {
            auto row = window_relation_row(win, tr, cell);
            if (!row || row->empty()) continue;
            ++out.rows;
            out.ech.insert(std::move(*row));
        }
    return out;
}

void check_same_voa(const CurrentAlgebra& alg, const LogModule& m1, const LogModule& m2,
                    const LogModule& m3) {
    if (&m1.voa() != &alg.voa() || &m2.voa() != &alg.voa() || &m3.voa() != &alg.voa())
        throw ValidationError("blocks: modules must share the current algebra's VOA");
}

} // namespace

BlocksReport blocks_dimension(const CurrentAlgebra& alg, const LogModule& m1,
                              const LogModule& m2, const LogModule& m3, int L) {
    check_same_voa(alg, m1, m2, m3);
    BlocksReport rep;
    for (int lv = 0; lv <= L; ++lv) {
        TriWindow win(m1, m2, m3, lv);
        Assembly as = assemble_relations(alg, win);
        BlocksLevelStats st;
        st.level = lv;
        st.window_dim = as.window_dim;
        st.forms_considered = as.forms_considered;
        st.expansion_triples = as.triples;
        st.relation_rows = as.rows;
        st.rank = as.ech.rank();
        st.estimate = as.window_dim - st.rank;
        rep.per_level.push_back(st);
    }
    rep.estimate = rep.per_level.back().estimate;
    rep.stabilized = L >= 1 && rep.per_level[L].estimate == rep.per_level[L - 1].estimate;
    return rep;
}

std::vector<BlockFunctional> block_basis(const CurrentAlgebra& alg, const LogModule& m1,
                                         const LogModule& m2, const LogModule& m3, int L) {
    check_same_voa(alg, m1, m2, m3);
    auto win = std::make_shared<TriWindow>(m1, m2, m3, L);
    Assembly as = assemble_relations(alg, *win);
    std::vector<BlockFunctional> out;
    for (const auto& kv : as.ech.kernel_basis()) {
        BlockFunctional f;
        f.win = win;
        f.coords.assign(win->dim(), Scalar(0));
        for (const auto& [c, v] : kv) f.coords[c] = v;
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace vablocks
