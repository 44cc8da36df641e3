#include "quotient.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "error.hpp"

namespace ql {

namespace {

Int p_power(long p, long e) {
    Int r = 1;
    for (long i = 0; i < e; ++i) r *= p;
    return r;
}

void check_prime(long p) {
    if (!is_prime(p)) fail(Errc::InvalidArgument, std::to_string(p) + " is not prime");
}

bool is_square(const Int& n, Int& root) {
    if (sgn(n) < 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root * root == n;
}

std::string block_str(const std::vector<IMat>& v) {
    std::string s;
    for (const auto& m : v) s += (s.empty() ? "" : " ") + to_string(m);
    return s.empty() ? "none" : s;
}

std::vector<IMat> reduced_binary_blocks(const IMat& g) {
    std::vector<IMat> out;
    for (const auto& b : orthogonal_blocks(g)) {
        if (b.rows != 2) continue;
        Int d = b(0, 0) * b(1, 1) - b(0, 1) * b(0, 1);
        if (sgn(d) > 0) out.push_back(binary_reduce(b));
    }
    std::sort(out.begin(), out.end(), [](const IMat& x, const IMat& y) {
        return std::lexicographical_compare(x.a.begin(), x.a.end(), y.a.begin(), y.a.end());
    });
    return out;
}

}  // namespace

GramLattice quotient_middle_lattice(const GramLattice& l, long p, std::optional<long> lp) {
    check_prime(p);
    DiscriminantGroup a = discriminant_group(l.gram);
    if (!a.is_p_elementary(p))
        fail(Errc::NotPElementary, "discriminant group " + a.str() + " is not " + std::to_string(p) + "-elementary");
    if (lp && a.order() != p_power(p, *lp))
        fail(Errc::DiscrMismatch, "|A_L| = " + a.order().get_str() + " but l_p = " + std::to_string(*lp));
    GramLattice out = dual_rescaled(l, p);
    out.name = l.name.empty() ? std::string() : l.name + "^v(" + std::to_string(p) + ")";
    return out;
}

std::size_t GlueSpec::divided_count() const {
    return static_cast<std::size_t>(std::count(divided.begin(), divided.end(), true));
}

GlueSpec identity_glue(std::size_t n) {
    return GlueSpec{IMat::identity(n), std::vector<bool>(n, false), "identity"};
}

GlueSpec auto_glue(const GramLattice& l, long p) {
    check_prime(p);
    std::size_t n = l.rank();
    // x with x·G ≡ 0 mod p, lifted to integers
    Smith s = smith_normal_form(l.gram);
    // U·G·V = D: x·G ≡ 0 mod p iff x·U^{-1} vanishes mod p outside the rows with p | D_ii
    std::vector<IVec> kernel;
    for (std::size_t i = 0; i < n; ++i) {
        Int d = i < s.diag.size() ? s.diag[i] : Int(0);
        if (sgn(d) == 0 || mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) kernel.push_back(s.U.row(i));
    }
    if (kernel.empty()) {
        GlueSpec g = identity_glue(n);
        g.note = "p-part of A_L is trivial";
        return g;
    }
    IMat glued = row_space_basis(vstack(scaled(IMat::identity(n), Int(p)), rows_to_matrix(kernel, n)));
    // L inside the glued lattice Λ = glued/p has coordinates X = p·glued^{-1}
    IMat x = to_integer(scaled(inverse(glued), Rat(p)));
    Smith t = smith_normal_form(x);
    // U·X·V = D: rows of U span L, and (row i of U)/d_i span Λ
    GlueSpec g;
    g.transform = t.U;
    g.divided.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (t.diag[i] == p)
            g.divided[i] = true;
        else if (t.diag[i] != 1)
            fail(Errc::ConsistencyError, "glue index is not p-elementary");
    }
    g.note = "auto: " + std::to_string(g.divided_count()) + " classes of order " + std::to_string(p);
    return g;
}

FujikiScale fujiki_scale(long p, const QMat& q) {
    Int den = lcm_denominators(q);
    IMat m = to_integer(scaled(q, Rat(den)));
    Int c = content(m);
    if (sgn(c) == 0) fail(Errc::DegenerateForm, "zero form has no normalization");
    FujikiScale f;
    f.lambda = Rat(den, c);
    f.lambda.canonicalize();
    f.fujiki = Rat(3 * p * p * p) / (f.lambda * f.lambda);
    f.fujiki.canonicalize();
    return f;
}

QuotientResult bb_quotient(const GramLattice& l, long p, const GlueSpec& glue, std::optional<Rat> expected_fujiki) {
    check_prime(p);
    std::size_t n = l.rank();
    const IMat& t = glue.transform;
    if (t.rows != n || t.cols != n || glue.divided.size() != n)
        fail(Errc::InvalidArgument, "glue transform must be " + std::to_string(n) + "x" + std::to_string(n));
    Int dt = det(t);
    if (sgn(dt) == 0) fail(Errc::DependentRows, "glue transform is singular");

    IMat tg = t * l.gram;
    for (std::size_t i = 0; i < n; ++i) {
        if (!glue.divided[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!mpz_divisible_ui_p(tg(i, j).get_mpz_t(), static_cast<unsigned long>(p)))
                fail(Errc::GlueNotInDual, "glue row " + std::to_string(i) + " pairs to " + tg(i, j).get_str() +
                                              ", not divisible by " + std::to_string(p));
    }
    // L must sit inside the glued lattice: T^{-1}·diag(p^{d_i}) integral
    QMat tinv = inverse(t);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (glue.divided[j]) tinv(i, j) *= p;
    if (!is_integral(tinv)) fail(Errc::GlueNotOverlattice, "glued basis does not span a lattice containing L");

    IMat gt = tg * t.transpose();
    QMat q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat v(gt(i, j));
            if (glue.divided[i]) v /= p;
            if (glue.divided[j]) v /= p;
            v.canonicalize();
            q(i, j) = v;
        }

    QuotientResult r;
    r.raw = q;
    r.glue = glue;
    r.index = p_power(p, static_cast<long>(glue.divided_count())) / abs(dt);
    if (expected_fujiki) {
        if (sgn(*expected_fujiki) <= 0) fail(Errc::InvalidArgument, "Fujiki constant must be positive");
        Rat sq = Rat(3 * p * p * p) / *expected_fujiki;
        sq.canonicalize();
        Int a, b;
        if (!is_square(sq.get_num(), a) || !is_square(sq.get_den(), b))
            fail(Errc::NoIntegralScale, "sqrt(3p^3/C) is irrational for C = " + expected_fujiki->get_str());
        r.scale = Rat(a, b);
        r.fujiki = *expected_fujiki;
        QMat s = scaled(q, r.scale);
        if (!is_integral(s)) fail(Errc::NoIntegralScale, "C = " + expected_fujiki->get_str() + " gives a non-integral form");
        r.lattice = GramLattice(to_integer(s));
    } else {
        FujikiScale f = fujiki_scale(p, q);
        r.scale = f.lambda;
        r.fujiki = f.fujiki;
        r.lattice = GramLattice(to_integer(scaled(q, f.lambda)));
    }
    return r;
}

std::vector<IMat> orthogonal_blocks(const IMat& g) {
    std::size_t n = g.rows;
    std::vector<std::size_t> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (sgn(g(i, j)) != 0) comp[find(i)] = find(j);
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    std::vector<IMat> out;
    for (const auto& idx : groups) {
        IMat b(idx.size(), idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = g(idx[i], idx[j]);
        out.push_back(b);
    }
    return out;
}

bool LatticeComparison::pass() const {
    return rank && det && signature && discriminant && binary_blocks && exact.value_or(true);
}

LatticeComparison compare_lattices(const GramLattice& got, const GramLattice& want, bool exact) {
    LatticeComparison c;
    InvariantSummary a = invariant_summary(got), b = invariant_summary(want);
    c.rank = a.rank == b.rank;
    if (!c.rank) c.mismatches.push_back("rank " + std::to_string(a.rank) + " vs " + std::to_string(b.rank));
    c.det = abs(a.det) == abs(b.det);
    if (!c.det) c.mismatches.push_back("|det| " + Int(abs(a.det)).get_str() + " vs " + Int(abs(b.det)).get_str());
    c.signature = a.signature == b.signature;
    if (!c.signature)
        c.mismatches.push_back("signature (" + std::to_string(a.signature.pos) + "," + std::to_string(a.signature.neg) +
                               ") vs (" + std::to_string(b.signature.pos) + "," + std::to_string(b.signature.neg) + ")");
    c.discriminant = a.discriminant == b.discriminant;
    if (!c.discriminant)
        c.mismatches.push_back("discriminant " + a.discriminant.str() + " vs " + b.discriminant.str());
    auto ba = reduced_binary_blocks(got.gram), bb = reduced_binary_blocks(want.gram);
    c.binary_blocks = ba == bb;
    if (!c.binary_blocks) c.mismatches.push_back("binary blocks " + block_str(ba) + " vs " + block_str(bb));
    if (exact) {
        c.exact = got.gram == want.gram;
        if (!*c.exact) c.mismatches.push_back("Gram " + to_string(got.gram) + " vs " + to_string(want.gram));
    }
    return c;
}

}  // namespace ql
