#pragma once

#include <bit>
#include <concepts>
#include <cstddef>
#include <optional>
#include <vector>

#include "error.hpp"
#include "grassmann.hpp"
#include "rational.hpp"
#include "superpoly.hpp"

namespace supergeom {

// Elements of a supercommutative Q-algebra with a distinguished scalar part:
// SuperPoly and GrassmannElement.
template <class T>
concept SuperAlgebraElement = requires(const T a, const T b, const Rational q) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { q * a } -> std::convertible_to<T>;
    { a.constant_like(q) } -> std::convertible_to<T>;
    { a.scalar_part() } -> std::convertible_to<Rational>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_nilpotent() } -> std::convertible_to<bool>;
    { a.parity() } -> std::convertible_to<std::optional<Parity>>;
};

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix &) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> multiply(const Matrix<T> &a, const Matrix<T> &b, const T &zero)
{
    require(a.cols() == b.rows(), ErrorKind::precondition, "matrix shapes do not compose");
    Matrix<T> r(a.rows(), b.cols(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) = r(i, j) + a(i, k) * b(k, j);
        }
    return r;
}

// Determinant over a commutative ring (entries must pairwise commute, e.g. all
// even). Subset dynamic programming over columns, O(2^n n) ring operations.
template <SuperAlgebraElement T>
T determinant(const Matrix<T> &m, const T &one)
{
    require(m.rows() == m.cols(), ErrorKind::precondition, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    require(n <= 16, ErrorKind::limit_exceeded, "determinant size limit is 16");
    if (n == 0) return one;
    std::vector<std::optional<T>> f(std::size_t{1} << n);
    f[0] = one;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!f[mask] || f[mask]->is_zero()) continue;
        std::size_t row = static_cast<std::size_t>(std::popcount(mask));
        if (row == n) continue;
        for (std::size_t c = 0; c < n; ++c) {
            if (mask & (1u << c)) continue;
            const T &e = m(row, c);
            if (e.is_zero()) continue;
            int inversions = std::popcount(mask >> (c + 1));
            T term = (*f[mask]) * e;
            if (inversions % 2) term = Rational(-1) * term;
            auto &slot = f[mask | (1u << c)];
            slot = slot ? *slot + term : term;
        }
    }
    const auto &full = f[(std::size_t{1} << n) - 1];
    return full ? *full : one.constant_like(0);
}

// Rational matrix inverse by Gauss-Jordan; nullopt when singular.
inline std::optional<Matrix<Rational>> invert(Matrix<Rational> a)
{
    const std::size_t n = a.rows();
    Matrix<Rational> inv(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a(piv, col)) == 0) ++piv;
        if (piv == n) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(col, j), a(piv, j));
            std::swap(inv(col, j), inv(piv, j));
        }
        Rational s = 1 / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= s;
            inv(col, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || sgn(a(i, col)) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Inverse of an element with invertible scalar part and nilpotent remainder:
// u = c(1 + n) gives u^{-1} = c^{-1} Σ (-n)^k, the series stopping once the
// power vanishes.
template <SuperAlgebraElement T>
T invert_element(const T &u)
{
    Rational c = u.scalar_part();
    require(sgn(c) != 0, ErrorKind::singular_block, "element has zero scalar part");
    T nil = (1 / c) * u - u.constant_like(1);
    require(nil.is_nilpotent(), ErrorKind::singular_block, "element is not a unit (non-nilpotent remainder)");
    T sum = u.constant_like(1), power = u.constant_like(1);
    for (int k = 1; k <= 4096; ++k) {
        power = Rational(-1) * (power * nil);
        if (power.is_zero()) return (1 / c) * sum;
        sum = sum + power;
    }
    fail(ErrorKind::limit_exceeded, "nilpotency order too large");
}

// Square supermatrix of format (p|q)×(r|s): the first p rows and r columns are
// even. Block A = even→even, D = odd→odd, B and C the off-diagonal blocks.
template <SuperAlgebraElement T>
class SuperMatrix {
public:
    SuperMatrix(int even_rows, int odd_rows, int even_cols, int odd_cols, const T &zero)
        : p_(even_rows), q_(odd_rows), r_(even_cols), s_(odd_cols), zero_(zero),
          m_(static_cast<std::size_t>(even_rows + odd_rows), static_cast<std::size_t>(even_cols + odd_cols), zero)
    {
    }

    static SuperMatrix identity(int p, int q, const T &one)
    {
        SuperMatrix id(p, q, p, q, one.constant_like(0));
        for (int i = 0; i < p + q; ++i) id(i, i) = one;
        return id;
    }

    int even_rows() const { return p_; }
    int odd_rows() const { return q_; }
    int even_cols() const { return r_; }
    int odd_cols() const { return s_; }

    T &operator()(int i, int j) { return m_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
    const T &operator()(int i, int j) const { return m_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }

    const Matrix<T> &full() const { return m_; }

    Matrix<T> block(bool odd_row, bool odd_col) const
    {
        int r0 = odd_row ? p_ : 0, nr = odd_row ? q_ : p_;
        int c0 = odd_col ? r_ : 0, nc = odd_col ? s_ : r_;
        Matrix<T> b(static_cast<std::size_t>(nr), static_cast<std::size_t>(nc), zero());
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = (*this)(r0 + i, c0 + j);
        return b;
    }

    // Entries of A and D even, of B and C odd (zero counts as both).
    bool is_even() const
    {
        for (int i = 0; i < p_ + q_; ++i)
            for (int j = 0; j < r_ + s_; ++j) {
                const T &e = (*this)(i, j);
                if (e.is_zero()) continue;
                auto par = e.parity();
                Parity want = ((i >= p_) != (j >= r_)) ? Parity::odd : Parity::even;
                if (!par || *par != want) return false;
            }
        return true;
    }

    friend SuperMatrix operator*(const SuperMatrix &a, const SuperMatrix &b)
    {
        require(a.r_ == b.p_ && a.s_ == b.q_, ErrorKind::precondition, "supermatrix formats do not compose");
        SuperMatrix r(a.p_, a.q_, b.r_, b.s_, a.zero());
        r.m_ = multiply(a.m_, b.m_, a.zero());
        return r;
    }

    bool operator==(const SuperMatrix &) const = default;

private:
    const T &zero() const { return zero_; }

    int p_, q_, r_, s_;
    T zero_;
    Matrix<T> m_;
};

// D^{-1} for a square block whose scalar part D0 is invertible over Q and whose
// remainder is nilpotent: D = D0 (1 + N), D^{-1} = Σ (-N)^k D0^{-1}.
template <SuperAlgebraElement T>
Matrix<T> invert_nilpotent_perturbation(const Matrix<T> &d, const T &one)
{
    const std::size_t n = d.rows();
    T zero = one.constant_like(0);
    Matrix<Rational> d0(n, n, Rational(0));
    Matrix<T> nil(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            d0(i, j) = d(i, j).scalar_part();
            nil(i, j) = d(i, j) - one.constant_like(d0(i, j));
            require(nil(i, j).is_nilpotent(), ErrorKind::singular_block,
                    "block entry has a non-constant, non-nilpotent part");
        }
    auto d0inv = invert(d0);
    require(d0inv.has_value(), ErrorKind::singular_block, "block has a singular scalar part");
    Matrix<T> d0inv_t(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d0inv_t(i, j) = one.constant_like((*d0inv)(i, j));

    Matrix<T> neg_n = multiply(d0inv_t, nil, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) neg_n(i, j) = Rational(-1) * neg_n(i, j);

    Matrix<T> sum(n, n, zero), power(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) sum(i, i) = power(i, i) = one;
    auto is_zero_matrix = [&](const Matrix<T> &m) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!m(i, j).is_zero()) return false;
        return true;
    };
    for (int k = 1;; ++k) {
        require(k <= 4096, ErrorKind::limit_exceeded, "nilpotency order too large");
        power = multiply(power, neg_n, zero);
        if (is_zero_matrix(power)) break;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sum(i, j) = sum(i, j) + power(i, j);
    }
    return multiply(sum, d0inv_t, zero);
}

// Ber(M) = det(A - B D^{-1} C) · det(D^{-1}).
template <SuperAlgebraElement T>
T berezinian(const SuperMatrix<T> &m, const T &one)
{
    require(m.even_rows() == m.even_cols() && m.odd_rows() == m.odd_cols(), ErrorKind::precondition,
            "Berezinian needs a square supermatrix of format (p|q)x(p|q)");
    require(m.is_even(), ErrorKind::parity, "Berezinian needs even A, D blocks and odd B, C blocks");
    T zero = one.constant_like(0);
    Matrix<T> a = m.block(false, false), b = m.block(false, true), c = m.block(true, false), d = m.block(true, true);
    Matrix<T> dinv = invert_nilpotent_perturbation(d, one);
    Matrix<T> schur = a;
    if (a.rows() > 0 && d.rows() > 0) {
        Matrix<T> bdc = multiply(multiply(b, dinv, zero), c, zero);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) schur(i, j) = a(i, j) - bdc(i, j);
    }
    return determinant(schur, one) * determinant(dinv, one);
}

} // namespace supergeom
