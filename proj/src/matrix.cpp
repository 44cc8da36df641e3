#include "matrix.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace ql {

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
    if (x.cols != y.rows) fail(Errc::InvalidArgument, "matrix product: dimension mismatch");
    Matrix<T> r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const T& xik = x(i, k);
            if (sgn(xik) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                const T& ykj = y(k, j);
                if (sgn(ykj) != 0) r(i, j) += xik * ykj;
            }
        }
    return r;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols) fail(Errc::InvalidArgument, "matrix sum: dimension mismatch");
    Matrix<T> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& x, const Matrix<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols) fail(Errc::InvalidArgument, "matrix difference: dimension mismatch");
    Matrix<T> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

template <class T>
Matrix<T> scaled(const Matrix<T>& x, const T& s) {
    Matrix<T> r = x;
    for (auto& v : r.a) v *= s;
    return r;
}

template <class T>
std::vector<T> mul_vec(const Matrix<T>& m, const std::vector<T>& v) {
    if (m.cols != v.size()) fail(Errc::InvalidArgument, "matrix-vector product: dimension mismatch");
    std::vector<T> r(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
    return r;
}

template <class T>
std::vector<T> vec_mul(const std::vector<T>& v, const Matrix<T>& m) {
    if (m.rows != v.size()) fail(Errc::InvalidArgument, "vector-matrix product: dimension mismatch");
    std::vector<T> r(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (sgn(v[i]) == 0) continue;
        for (std::size_t j = 0; j < m.cols; ++j) r[j] += v[i] * m(i, j);
    }
    return r;
}

template IMat operator*(const IMat&, const IMat&);
template QMat operator*(const QMat&, const QMat&);
template IMat operator+(const IMat&, const IMat&);
template QMat operator+(const QMat&, const QMat&);
template IMat operator-(const IMat&, const IMat&);
template QMat operator-(const QMat&, const QMat&);
template IMat scaled(const IMat&, const Int&);
template QMat scaled(const QMat&, const Rat&);
template IVec mul_vec(const IMat&, const IVec&);
template std::vector<Rat> mul_vec(const QMat&, const std::vector<Rat>&);
template IVec vec_mul(const IVec&, const IMat&);
template std::vector<Rat> vec_mul(const std::vector<Rat>&, const QMat&);

IMat from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    IMat m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) fail(Errc::InvalidArgument, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IMat rows_to_matrix(const std::vector<IVec>& rows, std::size_t cols) {
    IMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(Errc::InvalidArgument, "row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IMat block_diag(const std::vector<IMat>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows;
        c += b.cols;
    }
    IMat m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows; ++i)
            for (std::size_t j = 0; j < b.cols; ++j) m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows;
        c0 += b.cols;
    }
    return m;
}

IMat vstack(const IMat& top, const IMat& bottom) {
    if (top.rows == 0) return bottom;
    if (bottom.rows == 0) return top;
    if (top.cols != bottom.cols) fail(Errc::InvalidArgument, "vstack: column mismatch");
    IMat m(top.rows + bottom.rows, top.cols);
    std::copy(top.a.begin(), top.a.end(), m.a.begin());
    std::copy(bottom.a.begin(), bottom.a.end(), m.a.begin() + top.a.size());
    return m;
}

IMat submatrix(const IMat& m, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
    IMat s(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) s(i, j) = m(r0 + i, c0 + j);
    return s;
}

IMat matrix_power(const IMat& m, unsigned e) {
    IMat r = IMat::identity(m.rows);
    IMat b = m;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

QMat to_rational(const IMat& m) {
    QMat q(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) q.a[i] = m.a[i];
    return q;
}

bool is_integral(const QMat& m) {
    return std::all_of(m.a.begin(), m.a.end(), [](const Rat& v) { return v.get_den() == 1; });
}

IMat to_integer(const QMat& m) {
    IMat r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        if (m.a[i].get_den() != 1) fail(Errc::NonIntegralResult, "non-integral entry " + m.a[i].get_str());
        r.a[i] = m.a[i].get_num();
    }
    return r;
}

bool is_symmetric(const IMat& m) {
    if (!m.square()) return false;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i + 1; j < m.cols; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

bool is_zero(const IMat& m) {
    return std::all_of(m.a.begin(), m.a.end(), [](const Int& v) { return sgn(v) == 0; });
}

Int det(const IMat& m) {
    if (!m.square()) fail(Errc::InvalidArgument, "determinant of a non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    IMat w = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(w(k, k)) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && sgn(w(piv, k)) == 0) ++piv;
            if (piv == n) return 0;
            w.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w(i, j) = t;
            }
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    return sign * w(n - 1, n - 1);
}

Rat det(const QMat& m) {
    if (!m.square()) fail(Errc::InvalidArgument, "determinant of a non-square matrix");
    std::size_t n = m.rows;
    QMat w = m;
    Rat d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && sgn(w(piv, k)) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            w.swap_rows(k, piv);
            d = -d;
        }
        d *= w(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(w(i, k)) == 0) continue;
            Rat f = w(i, k) / w(k, k);
            for (std::size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
        }
    }
    return d;
}

QMat inverse(const QMat& m) {
    if (!m.square()) fail(Errc::InvalidArgument, "inverse of a non-square matrix");
    std::size_t n = m.rows;
    QMat w = m;
    QMat inv = QMat::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && sgn(w(piv, k)) == 0) ++piv;
        if (piv == n) fail(Errc::DegenerateForm, "matrix is singular");
        w.swap_rows(k, piv);
        inv.swap_rows(k, piv);
        Rat s = 1 / w(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            w(k, j) *= s;
            inv(k, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || sgn(w(i, k)) == 0) continue;
            Rat f = w(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

QMat inverse(const IMat& m) { return inverse(to_rational(m)); }

std::size_t rank(const IMat& m) {
    QMat w = to_rational(m);
    std::size_t r = 0;
    for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
        std::size_t piv = r;
        while (piv < w.rows && sgn(w(piv, c)) == 0) ++piv;
        if (piv == w.rows) continue;
        w.swap_rows(r, piv);
        for (std::size_t i = r + 1; i < w.rows; ++i) {
            if (sgn(w(i, c)) == 0) continue;
            Rat f = w(i, c) / w(r, c);
            for (std::size_t j = c; j < w.cols; ++j) w(i, j) -= f * w(r, j);
        }
        ++r;
    }
    return r;
}

namespace {

long mod_pos(const Int& v, long p) {
    Int r = v % p;
    long x = r.get_si();
    return x < 0 ? x + p : x;
}

long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a;
    while (nr) {
        long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    return t < 0 ? t + p : t;
}

}  // namespace

std::size_t rank_mod_p(const IMat& m, long p) {
    if (p < 2) fail(Errc::InvalidArgument, "rank_mod_p: modulus must be at least 2");
    std::vector<long> w(m.a.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = mod_pos(m.a[i], p);
    auto at = [&](std::size_t i, std::size_t j) -> long& { return w[i * m.cols + j]; };
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && at(piv, c) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(at(r, j), at(piv, j));
        long inv = inv_mod(at(r, c), p);
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            if (at(i, c) == 0) continue;
            long f = at(i, c) * inv % p;
            for (std::size_t j = c; j < m.cols; ++j) {
                at(i, j) = (at(i, j) - f * at(r, j)) % p;
                if (at(i, j) < 0) at(i, j) += p;
            }
        }
        ++r;
    }
    return r;
}

namespace {

// Floor division keeps remainders in [0, |pivot|).
Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

int cmp_abs(const Int& x, const Int& y) { return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()); }

void row_axpy(IMat& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < m.cols; ++j)
        if (sgn(m(src, j)) != 0) m(dst, j) += f * m(src, j);
}

void col_axpy(IMat& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < m.rows; ++i)
        if (sgn(m(i, src)) != 0) m(i, dst) += f * m(i, src);
}

}  // namespace

Smith smith_normal_form(const IMat& a) {
    Smith s;
    IMat& M = s.D;
    M = a;
    s.U = IMat::identity(a.rows);
    s.V = IMat::identity(a.cols);
    std::size_t lim = std::min(a.rows, a.cols);
    for (std::size_t t = 0; t < lim; ++t) {
        // smallest nonzero |entry| in the trailing block, row-major tie-break
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < M.rows; ++i)
            for (std::size_t j = t; j < M.cols; ++j) {
                if (sgn(M(i, j)) == 0) continue;
                if (!found || cmp_abs(M(i, j), M(pi, pj)) < 0) {
                    found = true;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        M.swap_rows(t, pi);
        s.U.swap_rows(t, pi);
        M.swap_cols(t, pj);
        s.V.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < M.rows; ++i) {
                if (sgn(M(i, t)) == 0) continue;
                Int q = -floor_div(M(i, t), M(t, t));
                row_axpy(M, i, t, q);
                row_axpy(s.U, i, t, q);
                if (sgn(M(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < M.cols; ++j) {
                if (sgn(M(t, j)) == 0) continue;
                Int q = -floor_div(M(t, j), M(t, t));
                col_axpy(M, j, t, q);
                col_axpy(s.V, j, t, q);
                if (sgn(M(t, j)) != 0) clean = false;
            }
            if (!clean) {
                // move the smallest remainder in row t / column t onto the pivot
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < M.rows; ++i)
                    if (sgn(M(i, t)) != 0 && cmp_abs(M(i, t), M(bi, bj)) < 0) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < M.cols; ++j)
                    if (sgn(M(t, j)) != 0 && cmp_abs(M(t, j), M(bi, bj)) < 0) {
                        bi = t;
                        bj = j;
                    }
                M.swap_rows(t, bi);
                s.U.swap_rows(t, bi);
                M.swap_cols(t, bj);
                s.V.swap_cols(t, bj);
                continue;
            }
            bool divisible = true;
            for (std::size_t i = t + 1; i < M.rows && divisible; ++i)
                for (std::size_t j = t + 1; j < M.cols; ++j)
                    if (!mpz_divisible_p(M(i, j).get_mpz_t(), M(t, t).get_mpz_t())) {
                        row_axpy(M, t, i, Int(1));
                        row_axpy(s.U, t, i, Int(1));
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (sgn(M(t, t)) < 0) {
            for (std::size_t j = 0; j < M.cols; ++j) M(t, j) = -M(t, j);
            for (std::size_t j = 0; j < s.U.cols; ++j) s.U(t, j) = -s.U(t, j);
        }
        s.diag.push_back(M(t, t));
    }
    return s;
}

IMat right_kernel(const IMat& a) {
    Smith s = smith_normal_form(a);
    std::size_t r = s.rank();
    IMat k(a.cols - r, a.cols);
    for (std::size_t c = r; c < a.cols; ++c)
        for (std::size_t i = 0; i < a.cols; ++i) k(c - r, i) = s.V(i, c);
    return k;
}

IMat left_kernel(const IMat& a) { return right_kernel(a.transpose()); }

namespace {

// Exact inverse of a unimodular integer matrix.
IMat unimodular_inverse(const IMat& m) { return to_integer(inverse(m)); }

}  // namespace

IMat saturate_rows(const IMat& rows) {
    if (rows.rows == 0) return IMat(0, rows.cols);
    Smith s = smith_normal_form(rows);
    IMat vinv = unimodular_inverse(s.V);
    return submatrix(vinv, 0, 0, s.rank(), rows.cols);
}

IMat row_space_basis(const IMat& rows) {
    if (rows.rows == 0) return IMat(0, rows.cols);
    Smith s = smith_normal_form(rows);
    IMat vinv = unimodular_inverse(s.V);
    IMat b(s.rank(), rows.cols);
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = 0; j < rows.cols; ++j) b(i, j) = s.diag[i] * vinv(i, j);
    return b;
}

Int content(const IMat& m) {
    Int g = 0;
    for (const auto& v : m.a) g = gcd(g, v);
    return g;
}

Int lcm_denominators(const QMat& m) {
    Int l = 1;
    for (const auto& v : m.a) l = lcm(l, v.get_den());
    return l;
}

namespace {

template <class T>
std::string mat_str(const Matrix<T>& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) os << ',';
            os << m(i, j).get_str();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace

std::string to_string(const IMat& m) { return mat_str(m); }
std::string to_string(const QMat& m) { return mat_str(m); }

}  // namespace ql
