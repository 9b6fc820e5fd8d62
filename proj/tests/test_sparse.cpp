#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "vablocks/sparse.hpp"

using namespace vablocks;

namespace {

SparseMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int density_pct) {
    SparseMatrix m(rows, cols);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> pct(0, 99);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (pct(rng) < density_pct) m.set(r, c, frac(num(rng), den(rng)));
    return m;
}

std::vector<Scalar> mat_vec(const SparseMatrix& m, const std::vector<Scalar>& x) {
    std::vector<Scalar> out(m.rows(), Scalar(0));
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) out[r] += v * x[c];
    return out;
}

} // namespace

TEST_CASE("rank of simple matrices") {
    SparseMatrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.set(i, i, 1);
    CHECK(rank(id3) == 3);

    SparseMatrix zero(4, 7);
    CHECK(rank(zero) == 0);

    SparseMatrix prop(2, 2);
    prop.set(0, 0, 1);
    prop.set(0, 1, 2);
    prop.set(1, 0, 2);
    prop.set(1, 1, 4);
    CHECK(rank(prop) == 1);
}

TEST_CASE("kernel of simple matrices") {
    SparseMatrix id2(2, 2);
    id2.set(0, 0, 1);
    id2.set(1, 1, 1);
    CHECK(kernel_basis(id2).empty());

    SparseMatrix zero(2, 3);
    CHECK(kernel_basis(zero).size() == 3);

    SparseMatrix row(1, 2);
    row.set(0, 0, 1);
    row.set(0, 1, 1);
    auto kb = kernel_basis(row);
    REQUIRE(kb.size() == 1);
    // forced up to scale: (1, -1)
    CHECK(kb[0][0] == -kb[0][1]);
    CHECK(kb[0][0] != 0);
}

TEST_CASE("rank-nullity and exact annihilation on random matrices") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 10);
        int cols = 1 + static_cast<int>(rng() % 10);
        SparseMatrix m = random_matrix(rng, rows, cols, 35);
        int r = rank(m);
        auto kb = kernel_basis(m);
        CHECK(r + static_cast<int>(kb.size()) == cols);
        for (const auto& x : kb) {
            auto y = mat_vec(m, x);
            for (const auto& v : y) CHECK(v == 0);
        }
    }
}

TEST_CASE("rank invariant under row permutation and scaling") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 2 + static_cast<int>(rng() % 8);
        int cols = 2 + static_cast<int>(rng() % 8);
        SparseMatrix m = random_matrix(rng, rows, cols, 40);
        int r = rank(m);

        std::vector<int> perm(rows);
        for (int i = 0; i < rows; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        SparseMatrix p(rows, cols);
        for (int i = 0; i < rows; ++i) {
            SparseVec row = m.row(perm[i]);
            Scalar scale = frac(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
            for (auto& [c, v] : row) v *= scale;
            p.set_row(i, std::move(row));
        }
        CHECK(rank(p) == r);
    }
}

TEST_CASE("streaming echelon matches batch rank") {
    std::mt19937_64 rng(99);
    SparseMatrix m = random_matrix(rng, 30, 12, 30);
    RowEchelon ech(12);
    for (int r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
    CHECK(ech.rank() == rank(m));
    // every achieved row reduces to zero against the echelon
    for (int r = 0; r < m.rows(); ++r) CHECK(ech.residual(m.row(r)).empty());
}
