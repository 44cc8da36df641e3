#include "gmodule.hpp"

#include <sstream>

#include "error.hpp"

namespace ql {

namespace {

constexpr long kMaxFormulaPrime = 19;

// Dense matrices over F_p for the Jordan rank sequence.
struct ModMat {
    std::size_t n;
    long p;
    std::vector<long> a;
    long& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    long operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

ModMat reduce(const IMat& m, long p) {
    ModMat r{m.rows, p, std::vector<long>(m.a.size())};
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = static_cast<long>(mpz_fdiv_ui(m.a[i].get_mpz_t(), p));
    return r;
}

ModMat mul(const ModMat& x, const ModMat& y) {
    ModMat r{x.n, x.p, std::vector<long>(x.a.size(), 0)};
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            long v = x(i, k);
            if (!v) continue;
            for (std::size_t j = 0; j < x.n; ++j) r(i, j) += v * y(k, j);
            if ((k & 63) == 63)
                for (std::size_t j = 0; j < x.n; ++j) r(i, j) %= x.p;
        }
    for (auto& v : r.a) v %= x.p;
    return r;
}

IMat lift(const ModMat& m) {
    IMat r(m.n, m.n);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i];
    return r;
}

IMat sigma_matrix(const PrimeOrderAction& a) {
    std::size_t n = a.phi.rows;
    IMat s(n, n);
    IMat pk = IMat::identity(n);
    for (long k = 0; k < a.p; ++k) {
        s = s + pk;
        pk = pk * a.phi;
    }
    return s;
}

IMat tau_matrix(const PrimeOrderAction& a) { return a.phi - IMat::identity(a.phi.rows); }

SublatticeEmbedding embed(const PrimeOrderAction& a, const IMat& basis) {
    SublatticeEmbedding e;
    e.basis = basis;
    if (a.gram) {
        e.ambient = a.gram;
        e.induced = basis * a.gram->gram * basis.transpose();
    }
    if (basis.square()) e.index = abs(det(basis));
    return e;
}

// Coordinates of the columns of gens in the saturated row basis k.
IMat coordinates(const IMat& k, const IMat& gens_as_rows) {
    if (k.rows == 0) return IMat(gens_as_rows.rows, 0);
    QMat kq = to_rational(k);
    QMat proj = kq.transpose() * inverse(kq * kq.transpose());
    QMat c = to_rational(gens_as_rows) * proj;
    if (!(c * kq == to_rational(gens_as_rows)))
        fail(Errc::ConsistencyError, "image does not lie in the kernel");
    return to_integer(c);
}

AbelianGroup quotient_group(const IMat& k, const IMat& gens_as_rows, std::vector<Int>& factors) {
    IMat c = coordinates(k, gens_as_rows);
    AbelianGroup g;
    if (k.rows == 0) return g;
    Smith s = smith_normal_form(c);
    g.free_rank = static_cast<long>(k.rows - s.rank());
    for (const auto& d : s.diag)
        if (d > 1) {
            factors.push_back(d);
            ++g.torsion_rank;
        }
    return g;
}

}  // namespace

PrimeOrderAction make_action(long p, IMat phi, std::optional<IMat> gram) {
    if (!is_prime(p)) fail(Errc::InvalidArgument, std::to_string(p) + " is not prime");
    if (!phi.square()) fail(Errc::InvalidArgument, "action matrix is not square");
    if (!(matrix_power(phi, static_cast<unsigned>(p)) == IMat::identity(phi.rows)))
        fail(Errc::NotOrderP, "action matrix does not satisfy phi^" + std::to_string(p) + " = I");
    PrimeOrderAction a{p, std::move(phi), std::nullopt};
    if (gram) {
        if (gram->rows != a.phi.rows) fail(Errc::InvalidArgument, "Gram and action sizes differ");
        if (!(a.phi.transpose() * *gram * a.phi == *gram))
            fail(Errc::InvalidArgument, "action does not preserve the form");
        a.gram = GramLattice(*gram);
    }
    return a;
}

long JordanProfile::rank() const {
    long r = 0;
    for (long q = 1; q <= p; ++q) r += q * count(q);
    return r;
}

long JordanProfile::l1() const {
    if (p != 2) return count(1);
    if (!l1_plus) fail(Errc::MissingData, "p = 2 profile lacks l_{1,+}");
    return *l1_plus;
}

long JordanProfile::lm() const {
    if (p != 2) return count(p - 1);
    if (!l1_minus) fail(Errc::MissingData, "p = 2 profile lacks l_{1,-}");
    return *l1_minus;
}

bool JordanProfile::middle_blocks() const {
    for (long q = 2; q <= p - 2; ++q)
        if (count(q) != 0) return true;
    return false;
}

bool JordanProfile::operator==(const JordanProfile& o) const {
    return p == o.p && l == o.l && l1_plus == o.l1_plus && l1_minus == o.l1_minus;
}

std::string JordanProfile::str() const {
    std::ostringstream os;
    bool first = true;
    auto item = [&](const std::string& k, long v) {
        if (!first) os << ", ";
        first = false;
        os << k << "=" << v;
    };
    for (long q = 1; q <= p; ++q)
        if (count(q) != 0 || q == 1 || q == p) item("l" + std::to_string(q), count(q));
    if (l1_plus) item("l1+", *l1_plus);
    if (l1_minus) item("l1-", *l1_minus);
    return os.str();
}

JordanProfile trivial_profile(long p, long rank) {
    JordanProfile j(p);
    j.at(1) = rank;
    if (p == 2) {
        j.l1_plus = rank;
        j.l1_minus = 0;
    }
    return j;
}

JordanProfile jordan_profile(const PrimeOrderAction& a) {
    long p = a.p;
    std::size_t n = a.phi.rows;
    if (!(matrix_power(a.phi, static_cast<unsigned>(p)) == IMat::identity(n)))
        fail(Errc::NotOrderP, "action matrix does not satisfy phi^p = I");
    std::vector<long> r(static_cast<std::size_t>(p) + 2, 0);
    r[0] = static_cast<long>(n);
    if (n > 0) {
        ModMat t = reduce(tau_matrix(a), p);
        ModMat pw = t;
        for (long j = 1; j <= p; ++j) {
            r[static_cast<std::size_t>(j)] = static_cast<long>(rank_mod_p(lift(pw), p));
            if (j < p) pw = mul(pw, t);
        }
    }
    JordanProfile jp(p);
    for (long q = 1; q <= p; ++q) {
        auto i = static_cast<std::size_t>(q);
        jp.at(q) = r[i - 1] - 2 * r[i] + r[i + 1];
    }
    if (p == 2) {
        long l2 = jp.count(2);
        long plus = static_cast<long>(right_kernel(tau_matrix(a)).rows) - l2;
        long minus = static_cast<long>(right_kernel(a.phi + IMat::identity(n)).rows) - l2;
        if (plus + minus != jp.count(1))
            fail(Errc::ConsistencyError, "eigenlattice ranks disagree with the F_2 Jordan profile");
        jp.l1_plus = plus;
        jp.l1_minus = minus;
    }
    return jp;
}

SublatticeEmbedding invariant_sublattice(const PrimeOrderAction& a) {
    return embed(a, right_kernel(tau_matrix(a)));
}

SublatticeEmbedding sigma_kernel(const PrimeOrderAction& a) {
    IMat ks = right_kernel(sigma_matrix(a));
    IMat kt = right_kernel(tau_matrix(a));
    if (rank(vstack(kt, ks)) != kt.rows + ks.rows)
        fail(Errc::ConsistencyError, "invariant and sigma-kernel sublattices intersect");
    return embed(a, ks);
}

long a_invariant(const PrimeOrderAction& a) {
    IMat kt = right_kernel(tau_matrix(a));
    IMat ks = right_kernel(sigma_matrix(a));
    IMat both = vstack(kt, ks);
    if (both.rows != a.phi.rows) fail(Errc::ConsistencyError, "kernels of tau and sigma do not span rationally");
    Int idx = both.rows ? abs(det(both)) : Int(1);
    long e = 0;
    while (idx > 1 && mpz_divisible_ui_p(idx.get_mpz_t(), static_cast<unsigned long>(a.p))) {
        idx /= a.p;
        ++e;
    }
    if (idx != 1) fail(Errc::ConsistencyError, "index of ker tau + ker sigma is not a power of p");
    long lp = jordan_profile(a).lp();
    if (e != lp)
        fail(Errc::ConsistencyError,
             "a_G = " + std::to_string(e) + " differs from l_p = " + std::to_string(lp));
    return e;
}

std::string AbelianGroup::str(long p) const {
    std::ostringstream os;
    if (free_rank == 0 && torsion_rank == 0) return "0";
    if (free_rank) os << "Z" << (free_rank > 1 ? "^" + std::to_string(free_rank) : "");
    if (torsion_rank) {
        if (free_rank) os << " + ";
        os << "(Z/" << p << ")" << (torsion_rank > 1 ? "^" + std::to_string(torsion_rank) : "");
    }
    return os.str();
}

GroupCohomology group_cohomology(const PrimeOrderAction& a, int degree) {
    if (degree < 0) fail(Errc::InvalidArgument, "negative cohomological degree");
    if (a.p > kMaxFormulaPrime)
        fail(Errc::UnsupportedPrime, "block structure is only classified for p <= 19");
    JordanProfile jp = jordan_profile(a);
    GroupCohomology g;
    IMat tau = tau_matrix(a);
    IMat sigma = sigma_matrix(a);
    if (degree == 0) {
        g.formula = AbelianGroup{jp.l1() + jp.lp(), 0};
        g.computed = AbelianGroup{static_cast<long>(right_kernel(tau).rows), 0};
    } else if (degree % 2 == 1) {
        g.formula = AbelianGroup{0, jp.lm()};
        // ker sigma / im tau; the image is spanned by the columns of tau
        g.computed = quotient_group(right_kernel(sigma), tau.transpose(), g.invariant_factors);
    } else {
        g.formula = AbelianGroup{0, jp.l1()};
        g.computed = quotient_group(right_kernel(tau), sigma.transpose(), g.invariant_factors);
    }
    for (const auto& d : g.invariant_factors)
        if (d != a.p) fail(Errc::ConsistencyError, "group cohomology has a non-p torsion factor " + d.get_str());
    return g;
}

JordanProfile sym2_profile(const JordanProfile& jp) {
    long p = jp.p;
    if (p < 3 || p > kMaxFormulaPrime) fail(Errc::UnsupportedPrime, "sym2_profile needs 3 <= p <= 19");
    if (jp.middle_blocks()) fail(Errc::MiddleBlocksPresent, "profile has blocks of size 2..p-2");
    long l1 = jp.count(1), lm = jp.count(p - 1), lp = jp.count(p);
    JordanProfile out(p);
    out.at(1) += l1 * (l1 + 1) / 2 + lm * (lm - 1) / 2;
    out.at(p - 1) += lm * l1;
    out.at(p) += (p + 1) / 2 * lp + p * (lp * (lp - 1) / 2) + (p - 1) / 2 * lm + (p - 1) * lp * lm + lp * l1 +
                 (p - 2) * (lm * (lm - 1) / 2);
    long n = jp.rank();
    if (out.rank() != n * (n + 1) / 2) fail(Errc::ConsistencyError, "Sym^2 profile has the wrong rank");
    return out;
}

PrimeOrderAction sym2_action(const PrimeOrderAction& a) {
    std::size_t n = a.phi.rows;
    std::vector<std::pair<std::size_t, std::size_t>> basis;
    std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            index[i][j] = index[j][i] = basis.size();
            basis.emplace_back(i, j);
        }
    std::size_t m = basis.size();
    IMat s(m, m);
    const IMat& f = a.phi;
    // image of e_i e_j is (Σ_k f_ki e_k)(Σ_l f_lj e_l)
    for (std::size_t c = 0; c < m; ++c) {
        auto [i, j] = basis[c];
        for (std::size_t k = 0; k < n; ++k) {
            if (sgn(f(k, i)) == 0) continue;
            for (std::size_t l = 0; l < n; ++l) {
                if (sgn(f(l, j)) == 0) continue;
                s(index[k][l], c) += f(k, i) * f(l, j);
            }
        }
    }
    PrimeOrderAction out{a.p, std::move(s), std::nullopt};
    return out;
}

JordanProfile CohomologyProfile::at(int degree) const {
    auto it = profiles.find(degree);
    if (it != profiles.end()) return it->second;
    if (degree < 0 || degree > 2 * dim) return JordanProfile(p);
    if (degree == 0 || degree == 2 * dim) return trivial_profile(p);
    if (odd_vanishes && degree % 2 == 1) {
        JordanProfile z(p);
        if (p == 2) {
            z.l1_plus = 0;
            z.l1_minus = 0;
        }
        return z;
    }
    fail(Errc::MissingData, "no Jordan profile for degree " + std::to_string(degree));
}

AbelianGroup free_quotient_cohomology(const CohomologyProfile& cp, int degree, bool e2_degenerate) {
    if (!cp.torsion_free) fail(Errc::TorsionPresent, "cohomology of X has torsion");
    if (cp.p > kMaxFormulaPrime) fail(Errc::UnsupportedPrime, "block structure is only classified for p <= 19");
    if (degree < 0 || degree > 2 * cp.dim) return AbelianGroup{};
    JordanProfile top = cp.at(degree);
    AbelianGroup g;
    g.free_rank = top.lp() + top.l1();
    int m = degree / 2;
    if (e2_degenerate) {
        if (degree % 2 == 0) {
            for (int i = 0; i < m; ++i) g.torsion_rank += cp.lm(2 * i + 1) + cp.l1(2 * i);
        } else {
            for (int i = 0; i <= m; ++i) g.torsion_rank += cp.lm(2 * i);
            for (int i = 0; i < m; ++i) g.torsion_rank += cp.l1(2 * i + 1);
        }
        return g;
    }
    auto vanishing = [&](int k) {
        for (int i = 1; i <= k; ++i)
            if (cp.lm(2 * i) != 0) return false;
        if (k > 1)
            for (int i = 0; i < k; ++i)
                if (cp.l1(2 * i + 1) != 0) return false;
        return true;
    };
    if (degree % 2 == 0) {
        if (!vanishing(m))
            fail(Errc::HypothesesNotMet, "vanishing conditions fail in degree " + std::to_string(degree));
        for (int i = 0; i < m; ++i) g.torsion_rank += cp.lm(2 * i + 1) + cp.l1(2 * i);
        return g;
    }
    // odd degree 2m+1 is torsion-free when the hypotheses hold for 2m or 2m+2
    if (!vanishing(m) && !vanishing(m + 1))
        fail(Errc::HypothesesNotMet, "vanishing conditions fail around degree " + std::to_string(degree));
    return g;
}

}  // namespace ql
