#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace intform;
using testsupport::Rng;

namespace {

Matrix from_rows(std::vector<std::vector<int>> rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    return m;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    // Low rank on purpose: sums of a few random outer products.
    Matrix m(rows, cols);
    int k = rng.uniform(0, static_cast<int>(std::min(rows, cols)));
    for (int t = 0; t < k; ++t) {
        Vector u(rows), v(cols);
        for (auto& x : u) x = rng.chance(60) ? Rational(rng.uniform(-3, 3)) : Rational(0);
        for (auto& x : v) x = rng.chance(60) ? Rational(rng.uniform(-3, 3)) : Rational(0);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c) += u[r] * v[c];
    }
    return m;
}

// Leibniz determinant of the submatrix on the given rows and columns.
Rational minor_det(const Matrix& m, const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) {
    std::vector<std::size_t> perm(cs.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rational det = 0;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inv;
        Rational p = (inv % 2) ? -1 : 1;
        for (std::size_t i = 0; i < rs.size(); ++i) p *= m(rs[i], cs[perm[i]]);
        det += p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;  // lexicographic order
}

std::size_t rank_by_minors(const Matrix& m) {
    for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k)
        for (const auto& rs : subsets(m.rows(), k))
            for (const auto& cs : subsets(m.cols(), k))
                if (minor_det(m, rs, cs) != 0) return k;
    return 0;
}

Matrix with_units(const Matrix& m, const std::vector<std::size_t>& idx) {
    Matrix a(m.rows(), m.cols() + idx.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) a(r, c) = m(r, c);
    for (std::size_t k = 0; k < idx.size(); ++k) a(idx[k], m.cols() + k) = 1;
    return a;
}

}  // namespace

TEST(Linalg, RowReduceExample) {
    auto m = from_rows({{1, 2, 3}, {2, 4, 7}, {0, 0, 1}});
    auto e = row_reduce(m);
    EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(e.reduced, from_rows({{1, 2, 0}, {0, 0, 1}, {0, 0, 0}}));
    EXPECT_EQ(rank(m), 2u);
    auto k = kernel_basis(m);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (Vector{-2, 1, 0}));
}

TEST(Linalg, SolveAndInconsistency) {
    auto m = from_rows({{1, 1}, {1, -1}, {2, 0}});
    auto x = solve(m, Vector{3, 1, 4});
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, (Vector{2, 1}));
    EXPECT_FALSE(solve(m, Vector{3, 1, 5}));
    EXPECT_THROW(solve(m, Vector{1, 2}), StructuralError);
}

TEST(Linalg, ComplementExamples) {
    // span{e0 + e2}: e2 is hit (its last nonzero row), so {e0, e1} remain.
    auto m = from_rows({{1}, {0}, {1}});
    EXPECT_EQ(cokernel_unit_complement(m), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(cokernel_unit_complement(Matrix(3, 0)), (std::vector<std::size_t>{0, 1, 2}));
    auto q = quotient_coordinates(m, std::vector<std::size_t>{0, 1}, Vector{0, 5, 3});
    EXPECT_EQ(q, (Vector{-3, 5}));
}

TEST(Linalg, ProductShape) {
    EXPECT_THROW(Matrix(2, 3) * Matrix(2, 3), StructuralError);
    EXPECT_EQ(from_rows({{1, 2}}) * from_rows({{3}, {4}}), from_rows({{11}}));
}

TEST(Linalg, RandomAgainstMinors) {
    Rng rng(101);
    for (int it = 0; it < 400; ++it) {
        std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 4));
        std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 4));
        auto m = random_matrix(rng, rows, cols);
        std::size_t r = rank(m);
        ASSERT_EQ(r, rank_by_minors(m));
        auto k = kernel_basis(m);
        ASSERT_EQ(r + k.size(), cols);
        for (const auto& v : k) ASSERT_TRUE((m * Matrix::from_columns(cols, {v})).is_zero());

        Vector x(cols);
        for (auto& c : x) c = rng.uniform(-4, 4);
        auto b = (m * Matrix::from_columns(cols, {x})).column(0);
        auto s = solve(m, b);
        ASSERT_TRUE(s);
        ASSERT_EQ((m * Matrix::from_columns(cols, {*s})).column(0), b);
    }
}

TEST(Linalg, ComplementIsLexicographicallyFirst) {
    Rng rng(202);
    for (int it = 0; it < 300; ++it) {
        std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 5));
        std::size_t cols = static_cast<std::size_t>(rng.uniform(0, 3));
        auto m = random_matrix(rng, rows, cols);
        std::size_t need = rows - rank_by_minors(m);
        std::vector<std::size_t> expected;
        for (const auto& s : subsets(rows, need)) {
            if (rank_by_minors(with_units(m, s)) == rows) {
                expected = s;
                break;
            }
        }
        ASSERT_EQ(cokernel_unit_complement(m), expected);

        Vector v(rows);
        for (auto& c : v) c = rng.uniform(-3, 3);
        auto q = quotient_coordinates(m, expected, v);
        // v minus the complement part must lie in the column span.
        for (std::size_t k = 0; k < expected.size(); ++k) v[expected[k]] -= q[k];
        ASSERT_TRUE(solve(m, v));
    }
}

TEST(Linalg, QuotientRepresentatives) {
    std::vector<Vector> image{{1, 1, 0}};
    std::vector<Vector> kernel{{1, 1, 0}, {2, 2, 0}, {0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    auto reps = quotient_representatives(image, kernel, 3);
    EXPECT_EQ(reps, (std::vector<Vector>{{0, 1, 0}, {0, 0, 1}}));
}
