#include "vablocks/intertwiner.hpp"

#include <sstream>

namespace vablocks {

IntwTable::IntwTable(std::shared_ptr<const TriWindow> win, int d) : win_(std::move(win)), d_(d) {
    if (d_ < 0) throw ValidationError("negative log-degree bound");
    coef_.assign(d_ + 1, std::vector<Scalar>(win_->dim(), Scalar(0)));
}

Scalar IntwTable::alpha(int l1, int l2, int l3) const {
    return win_->mod(0).h() + l1 + win_->mod(1).h() + l2 - win_->mod(2).h() - l3 - 1;
}

Scalar IntwTable::get(int n, int l1, int i1, int l2, int i2, int l3, int i3) const {
    if (n < 0 || n > d_) return 0;
    if (l3 < 0) {
        auto it = planted_.find({n, l1, i1, l2, i2, l3, i3});
        return it == planted_.end() ? Scalar(0) : it->second;
    }
    int idx = win_->index(l1, i1, l2, i2, l3, i3);
    if (idx < 0) throw WindowTooSmallError("intertwiner table read outside its window");
    return coef_[n][idx];
}

void IntwTable::set(int n, int l1, int i1, int l2, int i2, int l3, int i3, const Scalar& v) {
    if (n < 0 || n > d_) throw ValidationError("log power beyond the bound d");
    if (l3 < 0) {
        // above the truncation bound; representable only as a planted defect
        if (!is_zero(v))
            planted_[{n, l1, i1, l2, i2, l3, i3}] = v;
        else
            planted_.erase({n, l1, i1, l2, i2, l3, i3});
        return;
    }
    int idx = win_->index(l1, i1, l2, i2, l3, i3);
    if (idx < 0) throw WindowTooSmallError("intertwiner table write outside its window");
    coef_[n][idx] = v;
}

CheckReport check_truncation(const IntwTable& t) {
    CheckReport rep;
    rep.checked = static_cast<long>(t.win().dim()) * (t.log_bound() + 1);
    for (const auto& [key, v] : t.planted())
        if (!is_zero(v)) {
            std::ostringstream os;
            os << "nonzero coefficient above the truncation bound: n=" << key[0] << " cell=("
               << key[1] << "," << key[2] << "|" << key[3] << "," << key[4] << "|" << key[5]
               << "," << key[6] << ")";
            rep.fail(os.str());
        }
    return rep;
}

CheckReport check_derivative(const IntwTable& t) {
    CheckReport rep;
    const TriWindow& win = t.win();
    const LogModule& m2 = win.mod(1);
    const TruncatedVOA& voa = m2.voa();
    auto [ow, oi] = voa.omega();
    const int d = t.log_bound();
    for (const auto& cell : win.cells()) {
        if (cell.l1 + cell.l2 + 1 + cell.l3 > win.budget()) {
            rep.skipped += d + 1;
            continue;
        }
        // L_{-1} u2 components at level l2+1
        GradedVector lx = m2.act_mode(ow, oi, 0, GradedVector::unit(cell.l2, cell.i2));
        Scalar alpha = t.alpha(cell.l1, cell.l2 + 1, cell.l3);
        for (int n = 0; n <= d; ++n) {
            ++rep.checked;
            Scalar r(0);
            for (const auto& [k, c] : lx.entries())
                r += c * t.get(n, cell.l1, cell.i1, k.first, k.second, cell.l3, cell.i3);
            r += alpha * t.get(n, cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, cell.i3);
            if (n < d)
                r -= Scalar(n + 1) *
                     t.get(n + 1, cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, cell.i3);
            if (!is_zero(r)) {
                std::ostringstream os;
                os << "derivative identity fails at n=" << n << " cell=(" << cell.l1 << ","
                   << cell.i1 << "|" << cell.l2 << "," << cell.i2 << "|" << cell.l3 << ","
                   << cell.i3 << "), residual " << scalar_to_string(r);
                rep.fail(os.str());
            }
        }
    }
    return rep;
}

CheckReport check_l0_identity(const IntwTable& t) {
    CheckReport rep;
    const TriWindow& win = t.win();
    const int d = t.log_bound();
    const auto& l01 = win.mod(0).l0();
    const auto& l02 = win.mod(1).l0();
    const auto& l03 = win.mod(2).l0();
    for (const auto& cell : win.cells()) {
        Scalar alpha = t.alpha(cell.l1, cell.l2, cell.l3);
        for (int n = 0; n <= d; ++n) {
            // (L_0 u2)^n - [L_0, (u2)^n] - (alpha+1)(u2)^n + (n+1)(u2)^{n+1}
            ++rep.checked;
            Scalar r(0);
            for (int j = 0; j < win.mod(1).dim(cell.l2); ++j)
                r += l02[cell.l2][j][cell.i2] *
                     t.get(n, cell.l1, cell.i1, cell.l2, j, cell.l3, cell.i3);
            for (int j = 0; j < win.mod(2).dim(cell.l3); ++j)
                r -= l03[cell.l3][j][cell.i3] *
                     t.get(n, cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, j);
            for (int j = 0; j < win.mod(0).dim(cell.l1); ++j)
                r += l01[cell.l1][j][cell.i1] *
                     t.get(n, cell.l1, j, cell.l2, cell.i2, cell.l3, cell.i3);
            r -= (alpha + 1) * t.at(n, win.index(cell.l1, cell.i1, cell.l2, cell.i2, cell.l3,
                                                 cell.i3));
            if (n < d)
                r += Scalar(n + 1) *
                     t.get(n + 1, cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, cell.i3);
            if (!is_zero(r)) {
                std::ostringstream os;
                os << "L_0 identity fails at n=" << n << " cell=(" << cell.l1 << "," << cell.i1
                   << "|" << cell.l2 << "," << cell.i2 << "|" << cell.l3 << "," << cell.i3
                   << "), residual " << scalar_to_string(r);
                rep.fail(os.str());
            }
        }
    }
    return rep;
}

CheckReport check_translation_commutator(const IntwTable& t) {
    CheckReport rep;
    const TriWindow& win = t.win();
    const int d = t.log_bound();
    const TruncatedVOA& voa = win.mod(0).voa();
    auto [ow, oi] = voa.omega();
    for (const auto& cell : win.cells()) {
        // output level l3+1; the b- and u2-shifted cells sit two levels
        // above the base
        if (cell.l1 + cell.l2 + cell.l3 > win.budget() - 2) {
            rep.skipped += d + 1;
            continue;
        }
        const int l3out = cell.l3 + 1;
        for (int i3 = 0; i3 < win.mod(2).dim(l3out); ++i3) {
            GradedVector lw = win.mod(2).act_mode(ow, oi, 2, GradedVector::unit(l3out, i3));
            GradedVector lb = win.mod(0).act_mode(ow, oi, 0, GradedVector::unit(cell.l1, cell.i1));
            GradedVector lx = win.mod(1).act_mode(ow, oi, 0, GradedVector::unit(cell.l2, cell.i2));
            for (int n = 0; n <= d; ++n) {
                ++rep.checked;
                Scalar r(0);
                for (const auto& [k, c] : lw.entries())
                    r += c * t.get(n, cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, k.second);
                for (const auto& [k, c] : lb.entries())
                    r -= c * t.get(n, k.first, k.second, cell.l2, cell.i2, l3out, i3);
                for (const auto& [k, c] : lx.entries())
                    r -= c * t.get(n, cell.l1, cell.i1, k.first, k.second, l3out, i3);
                if (!is_zero(r)) {
                    std::ostringstream os;
                    os << "L_{-1} commutator identity fails at n=" << n << " cell=(" << cell.l1
                       << "," << cell.i1 << "|" << cell.l2 << "," << cell.i2 << "|" << l3out
                       << "," << i3 << "), residual " << scalar_to_string(r);
                    rep.fail(os.str());
                }
            }
        }
    }
    return rep;
}

CheckReport fund_relations_check(const IntwTable& t) {
    CheckReport rep = check_l0_identity(t);
    CheckReport comm = check_translation_commutator(t);
    rep.checked += comm.checked;
    rep.skipped += comm.skipped;
    rep.failure_count += comm.failure_count;
    for (auto& f : comm.failures)
        if (rep.failures.size() < CheckReport::kMaxRecorded) rep.failures.push_back(std::move(f));
    return rep;
}

std::optional<std::vector<Scalar>> check_borcherds_intw(const CurrentAlgebra& alg,
                                                        const IntwTable& t, int wa, int ia,
                                                        long p, long q, int l1, int i1, int l2,
                                                        int i2, long alpha_offset, int n) {
    const TriWindow& win = t.win();
    const int L = win.budget();
    const long l3out = l1 + l2 + wa - 2 - p - q - alpha_offset;
    if (l3out < 0 || l3out > L || l1 + l2 + l3out > L) return std::nullopt;
    const int deg_lo = -(L + 2 * alg.voa().l_max() + 1);
    P1Form f{GradedVector::unit(wa, ia), p, q};
    FormExpansionTriple tr{expand_at(alg, f, P1Point::Zero, deg_lo, L),
                           expand_at(alg, f, P1Point::One, deg_lo, L),
                           expand_at(alg, f, P1Point::Infinity, deg_lo, L), wa, p, q};
    std::vector<Scalar> out;
    for (int i3 = 0; i3 < win.mod(2).dim(static_cast<int>(l3out)); ++i3) {
        auto row = window_relation_row(win, tr,
                                       {l1, i1, l2, i2, static_cast<int>(l3out), i3});
        if (!row) return std::nullopt;
        Scalar r(0);
        for (const auto& [idx, c] : *row) r += c * t.at(n, idx);
        out.push_back(std::move(r));
    }
    return out;
}

CheckReport intw_borcherds_sweep(const CurrentAlgebra& alg, const IntwTable& t, long bound) {
    CheckReport rep;
    const TriWindow& win = t.win();
    const TruncatedVOA& voa = alg.voa();
    const int L = win.budget();
    const int deg_lo = -(L + 2 * voa.l_max() + 1);
    for (int wa = 0; wa <= voa.l_max(); ++wa)
        for (int ia = 0; ia < voa.dim(wa); ++ia)
            for (long p = -bound; p <= bound; ++p)
                for (long q = -bound; q <= bound; ++q) {
                    P1Form f{GradedVector::unit(wa, ia), p, q};
                    FormExpansionTriple tr{expand_at(alg, f, P1Point::Zero, deg_lo, L),
                                           expand_at(alg, f, P1Point::One, deg_lo, L),
                                           expand_at(alg, f, P1Point::Infinity, deg_lo, L),
                                           wa, p, q};
                    for (const auto& cell : win.cells()) {
                        auto row = window_relation_row(win, tr, cell);
                        if (!row) {
                            rep.skipped += t.log_bound() + 1;
                            continue;
                        }
                        for (int n = 0; n <= t.log_bound(); ++n) {
                            ++rep.checked;
                            Scalar r(0);
                            for (const auto& [idx, c] : *row) r += c * t.at(n, idx);
                            if (!is_zero(r)) {
                                std::ostringstream os;
                                os << "Borcherds identity fails at a=" << voa.basis_name(wa, ia)
                                   << " p=" << p << " q=" << q << " n=" << n << " cell=("
                                   << cell.l1 << "," << cell.i1 << "|" << cell.l2 << ","
                                   << cell.i2 << "|" << cell.l3 << "," << cell.i3 << ")";
                                rep.fail(os.str());
                            }
                        }
                    }
                }
    return rep;
}

AxiomSystemStats intw_axiom_dimension(const CurrentAlgebra& alg, const LogModule& m1,
                                      const LogModule& m2, const LogModule& m3, int L) {
    TriWindow win(m1, m2, m3, L);
    const int D = win.dim();
    const int d = m1.depth() + m2.depth() + m3.depth();
    AxiomSystemStats st;
    st.unknowns = (d + 1) * D;
    RowEchelon ech(st.unknowns);

    // Borcherds rows, one copy per log power.  A row dependent on earlier
    // rows inside one layer is dependent in every layer, so only a spanning
    // set of relation rows needs replication.
    const int l_mod_min = std::min({m1.l_mod(), m2.l_mod(), m3.l_mod()});
    auto kept = form_expansion_triples(alg, L, l_mod_min, nullptr);
    RowEchelon layer(D);
    std::vector<SparseVec> spanning;
    for (const auto& tr : kept)
        for (const auto& cell : win.cells()) {
            auto row = window_relation_row(win, tr, cell);
            if (!row || row->empty()) continue;
            if (layer.insert(*row)) spanning.push_back(std::move(*row));
        }
    for (const auto& row : spanning)
        for (int n = 0; n <= d; ++n) {
            SparseVec shifted;
            shifted.reserve(row.size());
            for (const auto& [idx, c] : row) shifted.emplace_back(n * D + idx, c);
            ++st.borcherds_rows;
            ech.insert(std::move(shifted));
        }

    // L_0 identities (level-local, always in-window)
    const Scalar h1 = m1.h(), h2 = m2.h(), h3 = m3.h();
    for (const auto& cell : win.cells()) {
        const int idx = win.index(cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, cell.i3);
        const Scalar alpha = h1 + cell.l1 + h2 + cell.l2 - h3 - cell.l3 - 1;
        for (int n = 0; n <= d; ++n) {
            SparseVec row;
            for (int j = 0; j < m2.dim(cell.l2); ++j) {
                const Scalar& c = m2.l0()[cell.l2][j][cell.i2];
                if (!is_zero(c))
                    row.emplace_back(
                        n * D + win.index(cell.l1, cell.i1, cell.l2, j, cell.l3, cell.i3), c);
            }
            for (int j = 0; j < m3.dim(cell.l3); ++j) {
                const Scalar& c = m3.l0()[cell.l3][j][cell.i3];
                if (!is_zero(c))
                    row.emplace_back(
                        n * D + win.index(cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, j), -c);
            }
            for (int j = 0; j < m1.dim(cell.l1); ++j) {
                const Scalar& c = m1.l0()[cell.l1][j][cell.i1];
                if (!is_zero(c))
                    row.emplace_back(
                        n * D + win.index(cell.l1, j, cell.l2, cell.i2, cell.l3, cell.i3), c);
            }
            row.emplace_back(n * D + idx, -(alpha + 1));
            if (n < d) row.emplace_back((n + 1) * D + idx, Scalar(n + 1));
            ++st.fund_rows;
            ech.insert(std::move(row));
        }
    }

    // derivative identities on in-window instances
    const TruncatedVOA& voa = alg.voa();
    auto [ow, oi] = voa.omega();
    for (const auto& cell : win.cells()) {
        if (cell.l1 + cell.l2 + 1 + cell.l3 > L) continue;
        GradedVector lx = m2.act_mode(ow, oi, 0, GradedVector::unit(cell.l2, cell.i2));
        const Scalar alpha = h1 + cell.l1 + h2 + cell.l2 + 1 - h3 - cell.l3 - 1;
        const int idx = win.index(cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, cell.i3);
        for (int n = 0; n <= d; ++n) {
            SparseVec row;
            for (const auto& [k, c] : lx.entries())
                row.emplace_back(
                    n * D + win.index(cell.l1, cell.i1, k.first, k.second, cell.l3, cell.i3),
                    c);
            row.emplace_back(n * D + idx, alpha);
            if (n < d) row.emplace_back((n + 1) * D + idx, Scalar(-(n + 1)));
            ++st.derivative_rows;
            ech.insert(std::move(row));
        }
    }

    st.rank = ech.rank();
    st.dimension = st.unknowns - st.rank;
    return st;
}

void NilpotentSymbol::add(int e1, int e2, int ell, const Scalar& c) {
    if (vablocks::is_zero(c) || e1 > d1_ || e2 > d2_ || ell > cap_) return;
    auto key = std::make_tuple(e1, e2, ell);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_[key] = c;
    } else {
        it->second += c;
        if (vablocks::is_zero(it->second)) terms_.erase(it);
    }
}

NilpotentSymbol& NilpotentSymbol::operator+=(const NilpotentSymbol& o) {
    for (const auto& [k, c] : o.terms_) add(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
    return *this;
}

NilpotentSymbol& NilpotentSymbol::operator*=(const Scalar& s) {
    if (vablocks::is_zero(s)) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

NilpotentSymbol NilpotentSymbol::mul_x1() const {
    NilpotentSymbol out(d1_, d2_, cap_);
    for (const auto& [k, c] : terms_)
        out.add(std::get<0>(k) + 1, std::get<1>(k), std::get<2>(k), c);
    return out;
}

NilpotentSymbol NilpotentSymbol::mul_x2() const {
    NilpotentSymbol out(d1_, d2_, cap_);
    for (const auto& [k, c] : terms_)
        out.add(std::get<0>(k), std::get<1>(k) + 1, std::get<2>(k), c);
    return out;
}

NilpotentSymbol NilpotentSymbol::apply_x3() const {
    NilpotentSymbol out(d1_, d2_, cap_);
    for (const auto& [k, c] : terms_) {
        const int e1 = std::get<0>(k), e2 = std::get<1>(k), ell = std::get<2>(k);
        out.add(e1 + 1, e2, ell, c);
        out.add(e1, e2 + 1, ell, c);
        if (ell < cap_) out.add(e1, e2, ell + 1, Scalar(ell + 1) * c);
    }
    return out;
}

bool lemma38_verify(int p, int q, int d) {
    if (p < 0 || q < 0 || q > d) return false;
    // depths large enough that truncation never interferes
    NilpotentSymbol lhs = NilpotentSymbol::token(p, p, d, q);
    for (int i = 0; i < p; ++i) lhs = lhs.apply_x3();

    NilpotentSymbol rhs(p, p, d);
    const int N = std::min(p, d - q);
    for (int l = 0; l <= N; ++l) {
        NilpotentSymbol term = NilpotentSymbol::token(p, p, d, q + l);
        for (int j = 0; j < p - l; ++j) {
            NilpotentSymbol nxt = term.mul_x1();
            nxt += term.mul_x2();
            term = nxt;
        }
        term *= binomial(p, l) * factorial(q + l) / factorial(q);
        rhs += term;
    }
    return lhs == rhs;
}

} // namespace vablocks
