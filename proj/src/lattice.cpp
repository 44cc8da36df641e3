#include "lattice.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace ql {

GramLattice::GramLattice(IMat g, std::string label) : gram(std::move(g)), name(std::move(label)) {
    if (!is_symmetric(gram)) fail(Errc::InvalidArgument, "Gram matrix is not symmetric");
    if (sgn(det(gram)) == 0) fail(Errc::DegenerateForm, "Gram matrix is degenerate");
}

Int GramLattice::pair(const IVec& x, const IVec& y) const {
    IVec gy = mul_vec(gram, y);
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * gy[i];
    return s;
}

Int DiscriminantGroup::order() const {
    Int o = 1;
    for (const auto& d : divisors) o *= d;
    return o;
}

bool DiscriminantGroup::is_p_elementary(long p) const {
    for (const auto& d : divisors)
        if (d != p) return false;
    return true;
}

std::string DiscriminantGroup::str() const {
    if (divisors.empty()) return "0";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < divisors.size()) {
        std::size_t j = i;
        while (j < divisors.size() && divisors[j] == divisors[i]) ++j;
        if (!first) os << " + ";
        first = false;
        os << "(Z/" << divisors[i].get_str() << ")";
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    return os.str();
}

DiscriminantGroup discriminant_group(const IMat& gram) {
    Smith s = smith_normal_form(gram);
    if (s.rank() != gram.rows) fail(Errc::DegenerateForm, "Gram matrix is degenerate");
    DiscriminantGroup g;
    for (const auto& d : s.diag)
        if (d > 1) g.divisors.push_back(d);
    return g;
}

Signature signature(const QMat& gram) {
    if (!gram.square()) fail(Errc::InvalidArgument, "signature of a non-square matrix");
    Signature sig;
    QMat a = gram;
    while (a.rows > 0) {
        std::size_t n = a.rows;
        std::vector<std::size_t> piv;
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(a(i, i)) != 0) {
                piv = {i};
                break;
            }
        if (piv.empty()) {
            for (std::size_t i = 0; i < n && piv.empty(); ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (sgn(a(i, j)) != 0) {
                        piv = {i, j};
                        break;
                    }
        }
        if (piv.empty()) fail(Errc::DegenerateForm, "form is degenerate");
        QMat p(piv.size(), piv.size());
        for (std::size_t i = 0; i < piv.size(); ++i)
            for (std::size_t j = 0; j < piv.size(); ++j) p(i, j) = a(piv[i], piv[j]);
        if (piv.size() == 1) {
            if (sgn(p(0, 0)) > 0) ++sig.pos;
            else ++sig.neg;
        } else {
            // [[0,c],[c,0]] is a hyperbolic plane
            ++sig.pos;
            ++sig.neg;
        }
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (std::find(piv.begin(), piv.end(), i) == piv.end()) rest.push_back(i);
        QMat pinv = inverse(p);
        QMat s(rest.size(), rest.size());
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t j = 0; j < rest.size(); ++j) {
                Rat v = a(rest[i], rest[j]);
                for (std::size_t k = 0; k < piv.size(); ++k)
                    for (std::size_t l = 0; l < piv.size(); ++l)
                        v -= a(rest[i], piv[k]) * pinv(k, l) * a(piv[l], rest[j]);
                s(i, j) = v;
            }
        a = std::move(s);
    }
    return sig;
}

Signature signature(const IMat& gram) { return signature(to_rational(gram)); }

InvariantSummary invariant_summary(const GramLattice& l) {
    InvariantSummary s;
    s.rank = l.rank();
    s.det = det(l.gram);
    if (sgn(s.det) == 0) fail(Errc::DegenerateForm, "Gram matrix is degenerate");
    s.signature = signature(l.gram);
    s.discriminant = discriminant_group(l.gram);
    return s;
}

GramLattice rescale(const GramLattice& l, const Int& m) {
    return GramLattice(scaled(l.gram, m), l.name.empty() ? std::string() : l.name + "(" + m.get_str() + ")");
}

GramLattice direct_sum(const std::vector<GramLattice>& parts, std::string label) {
    std::vector<IMat> blocks;
    for (const auto& p : parts) blocks.push_back(p.gram);
    return GramLattice(block_diag(blocks), std::move(label));
}

GramLattice dual_rescaled(const GramLattice& l, long p) {
    DiscriminantGroup g = discriminant_group(l.gram);
    if (!g.is_p_elementary(p))
        fail(Errc::NotPElementary, "discriminant group " + g.str() + " is not " + std::to_string(p) + "-elementary");
    QMat d = scaled(inverse(l.gram), Rat(p));
    return GramLattice(to_integer(d));
}

SublatticeEmbedding sublattice(const GramLattice& l, const IMat& t) {
    if (t.cols != l.rank()) fail(Errc::InvalidArgument, "sublattice rows have the wrong length");
    if (rank(t) != t.rows) fail(Errc::DependentRows, "sublattice rows are linearly dependent");
    SublatticeEmbedding e;
    e.ambient = l;
    e.basis = t;
    e.induced = t * l.gram * t.transpose();
    if (t.square()) e.index = abs(det(t));
    return e;
}

Overlattice overlattice_divide(const GramLattice& l, const std::vector<IVec>& vectors, long p) {
    std::size_t n = l.rank();
    for (const auto& v : vectors) {
        if (v.size() != n) fail(Errc::InvalidArgument, "glue vector has the wrong length");
        IVec vg = vec_mul(v, l.gram);
        for (const auto& x : vg)
            if (!mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p)))
                fail(Errc::NotInDual, "glue vector pairs with the lattice to " + x.get_str() + ", not divisible by " +
                                          std::to_string(p));
    }
    // generators of p·L' in source coordinates: p·e_i and each v
    IMat gens(n + vectors.size(), n);
    for (std::size_t i = 0; i < n; ++i) gens(i, i) = p;
    for (std::size_t k = 0; k < vectors.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) gens(n + k, j) = vectors[k][j];
    IMat b = row_space_basis(gens);
    Int db = abs(det(b));
    Int pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), n);
    Int index = pn / db;
    Int expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(p), vectors.size());
    if (index != expected)
        fail(Errc::DependentRows, "glue classes are dependent in the discriminant group (index " + index.get_str() +
                                      ", expected " + expected.get_str() + ")");
    QMat basis = scaled(to_rational(b), Rat(1, p));
    QMat g = basis * to_rational(l.gram) * basis.transpose();
    if (!is_integral(g)) fail(Errc::NonIntegralResult, "overlattice form is not integral");
    return Overlattice{GramLattice(to_integer(g)), basis, index};
}

IMat binary_reduce(const IMat& gram) {
    if (gram.rows != 2 || gram.cols != 2) fail(Errc::NotRank2, "binary_reduce needs a rank-2 form");
    if (!is_symmetric(gram)) fail(Errc::InvalidArgument, "Gram matrix is not symmetric");
    Int a = gram(0, 0), b = gram(0, 1), c = gram(1, 1);
    Int d = a * c - b * b;
    if (sgn(d) <= 0 || sgn(a) == 0) fail(Errc::NotDefinite, "binary form is not definite");
    int s = sgn(a) > 0 ? 1 : -1;
    a *= s;
    b *= s;
    c *= s;
    for (;;) {
        if (2 * abs(b) > a) {
            Int k;
            Int num = 2 * b + a;
            Int den = 2 * a;
            mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            c = c - 2 * k * b + k * k * a;
            b = b - k * a;
        }
        if (a > c) {
            std::swap(a, c);
            continue;
        }
        if (2 * abs(b) <= a) break;
    }
    b = abs(b);
    IMat r(2, 2);
    r(0, 0) = s * a;
    r(0, 1) = r(1, 0) = s * b;
    r(1, 1) = s * c;
    return r;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace ql
