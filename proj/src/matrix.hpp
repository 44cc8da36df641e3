#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ql {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;

template <class T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init) {
        rows = init.size();
        cols = rows ? init.begin()->size() : 0;
        a.reserve(rows * cols);
        for (const auto& row : init) {
            for (long v : row) a.emplace_back(v);
            a.resize(a.size() + cols - row.size());
        }
    }

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool square() const { return rows == cols; }
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }
};

using IMat = Matrix<Int>;
using QMat = Matrix<Rat>;

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y);
template <class T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y);
template <class T>
Matrix<T> operator-(const Matrix<T>& x, const Matrix<T>& y);
template <class T>
Matrix<T> scaled(const Matrix<T>& x, const T& s);
template <class T>
std::vector<T> mul_vec(const Matrix<T>& m, const std::vector<T>& v);  // m·v
template <class T>
std::vector<T> vec_mul(const std::vector<T>& v, const Matrix<T>& m);  // v·m

IMat from_rows(const std::vector<std::vector<long>>& rows);
IMat rows_to_matrix(const std::vector<IVec>& rows, std::size_t cols);
IMat block_diag(const std::vector<IMat>& blocks);
IMat vstack(const IMat& top, const IMat& bottom);
IMat submatrix(const IMat& m, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc);
IMat matrix_power(const IMat& m, unsigned e);

QMat to_rational(const IMat& m);
bool is_integral(const QMat& m);
IMat to_integer(const QMat& m);  // throws NonIntegralResult

bool is_symmetric(const IMat& m);
bool is_zero(const IMat& m);

Int det(const IMat& m);  // Bareiss
Rat det(const QMat& m);
QMat inverse(const QMat& m);  // throws DegenerateForm
QMat inverse(const IMat& m);
std::size_t rank(const IMat& m);
std::size_t rank_mod_p(const IMat& m, long p);

struct Smith {
    IMat U, D, V;             // U·A·V = D
    std::vector<Int> diag;    // nonzero invariant factors d_1 | d_2 | ...
    std::size_t rank() const { return diag.size(); }
};

Smith smith_normal_form(const IMat& a);

// Basis (as rows) of {x in Z^n : A·x = 0}; always saturated.
IMat right_kernel(const IMat& a);
// Basis (as rows) of {x in Z^m : x·A = 0}.
IMat left_kernel(const IMat& a);
// Basis of (Q-span of rows) ∩ Z^n.
IMat saturate_rows(const IMat& rows);
// Basis of the Z-span of the rows.
IMat row_space_basis(const IMat& rows);

Int content(const IMat& m);  // gcd of all entries (0 for the zero matrix)
Int lcm_denominators(const QMat& m);

std::string to_string(const IMat& m);
std::string to_string(const QMat& m);

}  // namespace ql
