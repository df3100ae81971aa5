#pragma once

// Dense exact linear algebra over the rationals.  Blocks handed to these
// routines are small (cohomology is computed per weight block), so a plain
// row-major matrix with Gauss-Jordan elimination is enough.

#include <intform/error.hpp>
#include <intform/rational.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace intform {

using Vector = std::vector<Rational>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector column(std::size_t c) const {
        Vector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    void set_column(std::size_t c, std::span<const Rational> v) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }

    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
        return m;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw StructuralError("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RowEchelon {
    Matrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination; the pivot of each column is the first row at or
/// below the current one with a nonzero entry.
inline RowEchelon row_reduce(Matrix m) {
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

/// Basis of the null space, one vector per free column.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
    auto ech = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : ech.pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some solution x of m x = b, or nullopt when b is outside the column span.
inline std::optional<Vector> solve(const Matrix& m, std::span<const Rational> b) {
    if (b.size() != m.rows()) throw StructuralError("right-hand side has wrong length");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    auto ech = row_reduce(std::move(aug));
    if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced(r, m.cols());
    return x;
}

/// Indices i of the lexicographically first set of unit vectors e_i that
/// complete the column span of `m` to the whole space.  Found as the rows
/// that are not pivots when each column is reduced against its last nonzero
/// row.
inline std::vector<std::size_t> cokernel_unit_complement(const Matrix& m) {
    const std::size_t n = m.rows();
    // Reverse the row order and reduce the transpose: pivots taken from the
    // front of the reversed order are the last nonzero rows of the original.
    Matrix t(m.cols(), n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) t(c, n - 1 - r) = m(r, c);
    auto ech = row_reduce(std::move(t));
    std::vector<bool> hit(n, false);
    for (auto p : ech.pivots) hit[n - 1 - p] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!hit[i]) out.push_back(i);
    return out;
}

/// Coordinates of v in the quotient space / span(m), with respect to the
/// unit vectors listed in `complement` (which must complete span(m)).
inline Vector quotient_coordinates(const Matrix& m, std::span<const std::size_t> complement,
                                   std::span<const Rational> v) {
    Matrix aug(m.rows(), m.cols() + complement.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    for (std::size_t k = 0; k < complement.size(); ++k) aug(complement[k], m.cols() + k) = 1;
    auto x = solve(aug, v);
    if (!x) throw StructuralError("complement does not span the quotient");
    return Vector(x->begin() + static_cast<std::ptrdiff_t>(m.cols()), x->end());
}

/// Greedy choice of kernel vectors independent modulo the image vectors:
/// representatives of ker / im, taken in the order given.
inline std::vector<Vector> quotient_representatives(const std::vector<Vector>& image, const std::vector<Vector>& kernel,
                                                    std::size_t dim) {
    std::vector<Vector> span = image;
    std::size_t current = span.empty() ? 0 : rank(Matrix::from_columns(dim, span));
    std::vector<Vector> reps;
    for (const auto& k : kernel) {
        span.push_back(k);
        std::size_t r = rank(Matrix::from_columns(dim, span));
        if (r > current) {
            reps.push_back(k);
            current = r;
        } else {
            span.pop_back();
        }
    }
    return reps;
}

}  // namespace intform
