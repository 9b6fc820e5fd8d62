#include "vablocks/correspondence.hpp"

#include <sstream>

namespace vablocks {

IntwTable intw_from_block(const BlockFunctional& x) {
    const TriWindow& win = *x.win;
    const LogModule& m1 = win.mod(0);
    const LogModule& m2 = win.mod(1);
    const LogModule& m3 = win.mod(2);
    const int k1 = m1.depth(), k2 = m2.depth(), k3 = m3.depth();
    IntwTable t(x.win, k1 + k2 + k3);
    for (const auto& cell : win.cells()) {
        for (int n1 = 0; n1 <= k1; ++n1)
            for (int n2 = 0; n2 <= k2; ++n2)
                for (int n3 = 0; n3 <= k3; ++n3) {
                    Scalar c = inv_factorial(n1) * inv_factorial(n2) * inv_factorial(n3);
                    if ((n1 + n2) % 2 != 0) c = -c;
                    const auto& p1 = m1.nil_pow(cell.l1, n1);
                    const auto& p2 = m2.nil_pow(cell.l2, n2);
                    const auto& p3 = m3.nil_pow(cell.l3, n3);
                    Scalar acc(0);
                    for (int r1 = 0; r1 < m1.dim(cell.l1); ++r1) {
                        if (is_zero(p1[r1][cell.i1])) continue;
                        for (int r2 = 0; r2 < m2.dim(cell.l2); ++r2) {
                            if (is_zero(p2[r2][cell.i2])) continue;
                            Scalar c12 = p1[r1][cell.i1] * p2[r2][cell.i2];
                            for (int r3 = 0; r3 < m3.dim(cell.l3); ++r3) {
                                if (is_zero(p3[r3][cell.i3])) continue;
                                acc += c12 * p3[r3][cell.i3] *
                                       x.at(cell.l1, r1, cell.l2, r2, cell.l3, r3);
                            }
                        }
                    }
                    if (is_zero(acc)) continue;
                    const int n = n1 + n2 + n3;
                    Scalar cur = t.get(n, cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, cell.i3);
                    t.set(n, cell.l1, cell.i1, cell.l2, cell.i2, cell.l3, cell.i3,
                          cur + c * acc);
                }
    }
    return t;
}

BlockFunctional block_from_intw(const IntwTable& t) {
    BlockFunctional f;
    f.win = t.win_ptr();
    f.coords = t.layer(0);
    return f;
}

CheckReport roundtrip_block(const BlockFunctional& x) {
    CheckReport rep;
    BlockFunctional back = block_from_intw(intw_from_block(x));
    const TriWindow& win = *x.win;
    for (int i = 0; i < win.dim(); ++i) {
        ++rep.checked;
        if (back.coords[i] != x.coords[i]) {
            const auto& c = win.cells()[i];
            std::ostringstream os;
            os << "functional round trip differs at cell (" << c.l1 << "," << c.i1 << "|"
               << c.l2 << "," << c.i2 << "|" << c.l3 << "," << c.i3 << ")";
            rep.fail(os.str());
        }
    }
    return rep;
}

CheckReport roundtrip_intw(const IntwTable& t) {
    CheckReport rep;
    IntwTable back = intw_from_block(block_from_intw(t));
    const TriWindow& win = t.win();
    for (int n = 0; n <= t.log_bound(); ++n)
        for (int i = 0; i < win.dim(); ++i) {
            ++rep.checked;
            if (back.at(n, i) != t.at(n, i)) {
                const auto& c = win.cells()[i];
                std::ostringstream os;
                os << "operator round trip differs at n=" << n << " cell (" << c.l1 << ","
                   << c.i1 << "|" << c.l2 << "," << c.i2 << "|" << c.l3 << "," << c.i3 << ")";
                rep.fail(os.str());
            }
        }
    for (const auto& [key, v] : t.planted())
        if (!is_zero(v)) rep.fail("operator carries entries above the truncation bound");
    return rep;
}

bool telescoping_verify(int k) {
    if (k < 0) return false;
    NilpotentSymbol sum(k, k, k);
    for (int n1 = 0; n1 <= k; ++n1)
        for (int n2 = 0; n1 + n2 <= k; ++n2) {
            const int n3 = k - n1 - n2;
            NilpotentSymbol term = NilpotentSymbol::token(k, k, k, 0);
            for (int j = 0; j < n3; ++j) term = term.apply_x3();
            for (int j = 0; j < n1; ++j) term = term.mul_x1();
            for (int j = 0; j < n2; ++j) term = term.mul_x2();
            Scalar c = inv_factorial(n1) * inv_factorial(n2) * inv_factorial(n3);
            if ((n1 + n2) % 2 != 0) c = -c;
            term *= c;
            sum += term;
        }
    return sum == NilpotentSymbol::token(k, k, k, k);
}

} // namespace vablocks
