#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"

namespace diffsym {

/// Dense row-major matrix over a ring element type.
template <RingElement T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& zero) : rows_(rows), cols_(cols), zero_(zero), data_(rows * cols, zero) {}

    static Matrix identity(std::size_t n, const T& like) {
        Matrix r(n, n, like.zero());
        for (std::size_t i = 0; i < n; ++i) r(i, i) = like.one();
        return r;
    }
    static Matrix diagonal(const std::vector<T>& d) {
        Matrix r(d.size(), d.size(), d.front().zero());
        for (std::size_t i = 0; i < d.size(); ++i) r(i, i) = d[i];
        return r;
    }
    /// Single nonzero entry 1 at (r, c).
    static Matrix unit(std::size_t n, std::size_t r, std::size_t c, const T& like) {
        Matrix out(n, n, like.zero());
        out(r, c) = like.one();
        return out;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const T& zero_element() const { return zero_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows_ == cols_; }
    bool is_diagonal() const {
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (r != c && !(*this)(r, c).is_zero()) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_shape(a, b);
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] + b.data_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_shape(a, b);
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] - b.data_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.data_) x = -x;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw MismatchError("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_, a.zero_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const T& y = b(k, j);
                    if (y.is_zero()) continue;
                    r(i, j) = r(i, j) + x * y;
                }
            }
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix scaled(const T& s) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x * s;
        return r;
    }

    template <class F>
    auto map(F&& f) const {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        std::vector<U> out;
        out.reserve(data_.size());
        for (const auto& x : data_) out.push_back(f(x));
        Matrix<U> r(rows_, cols_, out.empty() ? f(zero_) : out.front().zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = out[i * cols_ + j];
        return r;
    }

    Matrix pow(int e) const {
        Matrix r = identity(rows_, zero_), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    T trace() const {
        T acc = zero_;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc = acc + (*this)(i, i);
        return acc;
    }

private:
    static void check_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MismatchError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    T zero_{};
    std::vector<T> data_;
};

/// Reduced row echelon form with first-nonzero pivoting; returns the pivot columns.
template <FieldElement T>
std::vector<std::size_t> rref_in_place(Matrix<T>& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && a(p, col).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
        const T inv = a(row, col).inv();
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            const T f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                if (!a(row, j).is_zero()) a(i, j) = a(i, j) - f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <FieldElement T>
std::size_t rank(Matrix<T> a) {
    return rref_in_place(a).size();
}

/// Basis of {x : a x = 0}.
template <FieldElement T>
std::vector<std::vector<T>> kernel(Matrix<T> a) {
    const auto pivots = rref_in_place(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(a.cols(), a.zero_element());
        v[free] = a.zero_element().one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Affine solution set of a x = b: a particular solution (if any) and a kernel basis.
template <FieldElement T>
struct LinearSolution {
    std::optional<std::vector<T>> particular;
    std::vector<std::vector<T>> kernel;
};

template <FieldElement T>
LinearSolution<T> solve(const Matrix<T>& a, const std::vector<T>& b) {
    if (b.size() != a.rows()) throw MismatchError("right-hand side length mismatch");
    Matrix<T> aug(a.rows(), a.cols() + 1, a.zero_element());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto pivots = rref_in_place(aug);
    LinearSolution<T> out;
    out.kernel = kernel(a);
    if (!pivots.empty() && pivots.back() == a.cols()) return out;
    std::vector<T> x(a.cols(), a.zero_element());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    out.particular = std::move(x);
    return out;
}

/// Determinant by Gaussian elimination.
template <FieldElement T>
T determinant(Matrix<T> a) {
    if (!a.is_square()) throw MismatchError("determinant of a non-square matrix");
    T det = a.zero_element().one();
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a(p, col).is_zero()) ++p;
        if (p == n) return a.zero_element();
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(col, j));
            det = -det;
        }
        det = det * a(col, col);
        const T inv = a(col, col).inv();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col).is_zero()) continue;
            const T f = a(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) a(i, j) = a(i, j) - f * a(col, j);
        }
    }
    return det;
}

/// Determinant by cofactor expansion, for rings without division.
template <RingElement T>
T determinant_expand(const Matrix<T>& a) {
    if (!a.is_square()) throw MismatchError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return a.zero_element().one();
    if (n == 1) return a(0, 0);
    T acc = a.zero_element();
    for (std::size_t c = 0; c < n; ++c) {
        if (a(0, c).is_zero()) continue;
        Matrix<T> minor(n - 1, n - 1, a.zero_element());
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, jj++) = a(i, j);
            }
        const T term = a(0, c) * determinant_expand(minor);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace diffsym
