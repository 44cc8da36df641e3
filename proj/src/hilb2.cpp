#include "hilb2.hpp"

#include "error.hpp"
#include "lattice.hpp"
#include "lattice_expr.hpp"

namespace ql {

namespace {

bool even(const Int& v) { return mpz_even_p(v.get_mpz_t()) != 0; }

// x ↦ q1(x)² and q1(x)q1(y) for x, y in H^2(S), expanded in the H^4 basis.
void add_q1q1(IVec& out, const H4Basis& b, std::size_t i, std::size_t j, const Int& c) {
    if (i != j) {
        out[b.q11(i, j)] += c;
        return;
    }
    // q1(α)^2 = 2 m11(α) + q2(α)
    out[b.m11(i)] += 2 * c;
    out[b.q2(i)] += c;
}

}  // namespace

K3Form::K3Form(IMat g) : gram(std::move(g)) {
    if (gram.rows != gram.cols || !is_symmetric(gram)) fail(Errc::InvalidArgument, "K3 form must be symmetric");
    if (abs(det(gram)) != 1) fail(Errc::InvalidArgument, "K3 form must be unimodular");
    mu = to_integer(inverse(gram));
}

bool K3Form::is_k3() const {
    Signature s = signature(gram);
    return rank() == 22 && s.pos == 3 && s.neg == 19;
}

K3Form standard_k3_form() { return K3Form(parse_lattice_expr("U^3+E8(-1)^2").gram); }

H2Class H2Class::gamma_basis(std::size_t r, std::size_t k) {
    H2Class c;
    c.gamma.assign(r, 0);
    c.gamma.at(k) = 1;
    return c;
}

H2Class H2Class::delta_class(std::size_t r) {
    H2Class c;
    c.gamma.assign(r, 0);
    c.delta = 1;
    return c;
}

H2Class operator+(const H2Class& x, const H2Class& y) {
    H2Class z = x;
    for (std::size_t i = 0; i < z.gamma.size(); ++i) z.gamma[i] += y.gamma[i];
    z.delta += y.delta;
    return z;
}

H2Class operator*(const Int& c, const H2Class& x) {
    H2Class z = x;
    for (auto& v : z.gamma) v *= c;
    z.delta *= c;
    return z;
}

Int bb_form(const H2Class& x, const H2Class& y, const K3Form& k) {
    if (x.gamma.size() != k.rank() || y.gamma.size() != k.rank())
        fail(Errc::InvalidArgument, "H^2 class has the wrong rank");
    Int s = 0;
    for (std::size_t i = 0; i < k.rank(); ++i) {
        if (sgn(x.gamma[i]) == 0) continue;
        for (std::size_t j = 0; j < k.rank(); ++j) s += x.gamma[i] * k.gram(i, j) * y.gamma[j];
    }
    return s - 2 * x.delta * y.delta;
}

std::size_t H4Basis::q11(std::size_t k, std::size_t m) const {
    if (k == m || k >= r || m >= r) fail(Errc::InvalidArgument, "q1q1 needs two distinct indices");
    if (k > m) std::swap(k, m);
    // pairs (k, m) with k < m in lexicographic order
    return 1 + r + k * (2 * r - k - 1) / 2 + (m - k - 1);
}

std::string H4Basis::label(std::size_t i) const {
    if (i == 0) return "sigma";
    if (i <= r) return "q2(" + std::to_string(i) + ")";
    if (i >= m11(0)) return "m11(" + std::to_string(i - m11(0) + 1) + ")";
    std::size_t idx = i - 1 - r;
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t row = r - k - 1;
        if (idx < row) return "q1q1(" + std::to_string(k + 1) + "," + std::to_string(k + idx + 2) + ")";
        idx -= row;
    }
    return "?";
}

H4Class cup_h2(const H2Class& x, const H2Class& y, const K3Form& k) {
    std::size_t r = k.rank();
    if (x.gamma.size() != r || y.gamma.size() != r) fail(Errc::InvalidArgument, "H^2 class has the wrong rank");
    H4Basis b{r};
    IVec out(b.size());
    // γγ part: (α·β)σ + q1(α)q1(β)
    for (std::size_t i = 0; i < r; ++i) {
        if (sgn(x.gamma[i]) == 0) continue;
        for (std::size_t j = 0; j < r; ++j) {
            if (sgn(y.gamma[j]) == 0) continue;
            Int c = x.gamma[i] * y.gamma[j];
            out[b.sigma()] += c * k.gram(i, j);
            add_q1q1(out, b, i, j, c);
        }
    }
    // δγ = q2
    for (std::size_t i = 0; i < r; ++i) out[b.q2(i)] += x.delta * y.gamma[i] + y.delta * x.gamma[i];
    // δ² = Σ_{i<j} μ_ij q1q1 + ½ Σ μ_ii q1(α_i)² + σ
    Int dd = x.delta * y.delta;
    if (sgn(dd) != 0) {
        out[b.sigma()] += dd;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = i + 1; j < r; ++j) out[b.q11(i, j)] += dd * k.mu(i, j);
            if (!even(k.mu(i, i)))
                fail(Errc::NonIntegralExpansion, "mu_" + std::to_string(i + 1) + std::to_string(i + 1) + " is odd");
            Int half = dd * k.mu(i, i) / 2;
            out[b.m11(i)] += 2 * half;
            out[b.q2(i)] += half;
        }
    }
    return H4Class{out};
}

Int quadruple_product(const H2Class& x1, const H2Class& x2, const H2Class& x3, const H2Class& x4, const K3Form& k) {
    return bb_form(x1, x2, k) * bb_form(x3, x4, k) + bb_form(x1, x3, k) * bb_form(x2, x4, k) +
           bb_form(x1, x4, k) * bb_form(x2, x3, k);
}

H4Span H4Span::product(const H2Class& x, const H2Class& y) {
    H4Span s;
    s.products.push_back({Int(1), x, y});
    return s;
}

H4Span H4Span::sigma_class() {
    H4Span s;
    s.sigma = 1;
    return s;
}

Int pair_h4(const H4Span& a, const H4Span& b, const K3Form& k) {
    Int s = a.sigma * b.sigma;
    for (const auto& t : a.products) {
        for (const auto& u : b.products) s += t.coeff * u.coeff * quadruple_product(t.x, t.y, u.x, u.y, k);
        if (sgn(b.sigma) != 0) s += t.coeff * b.sigma * cup_h2(t.x, t.y, k).coords[0];
    }
    if (sgn(a.sigma) != 0)
        for (const auto& u : b.products) s += u.coeff * a.sigma * cup_h2(u.x, u.y, k).coords[0];
    return s;
}

H4Span to_span(const H4Class& c, const K3Form& k) {
    std::size_t r = k.rank();
    H4Basis b{r};
    if (c.coords.size() != b.size()) fail(Errc::InvalidArgument, "H^4 class has the wrong size");
    H4Span s;
    s.sigma = c.coords[b.sigma()];
    H2Class d = H2Class::delta_class(r);
    auto add = [&](const Int& coeff, const H2Class& x, const H2Class& y) {
        if (sgn(coeff) != 0) s.products.push_back({coeff, x, y});
    };
    for (std::size_t i = 0; i < r; ++i) {
        H2Class g = H2Class::gamma_basis(r, i);
        const Int& m = c.coords[b.m11(i)];
        if (!even(m))
            fail(Errc::OutsideSupportedSpan, b.label(b.m11(i)) + " has an odd coefficient; the class is not an "
                                                                 "integral combination of products and sigma");
        Int h = m / 2;
        // m11 = (γ² - δγ - α²σ)/2
        add(h, g, g);
        add(c.coords[b.q2(i)] - h, d, g);
        s.sigma -= h * k.gram(i, i);
        for (std::size_t j = i + 1; j < r; ++j) {
            const Int& q = c.coords[b.q11(i, j)];
            add(q, g, H2Class::gamma_basis(r, j));
            s.sigma -= q * k.gram(i, j);
        }
    }
    return s;
}

SLattice s_lattice_gram(const std::vector<H4Span>& basis, const K3Form& k) {
    SLattice s;
    s.gram = IMat(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) s.gram(i, j) = s.gram(j, i) = pair_h4(basis[i], basis[j], k);
    s.det = det(s.gram);
    return s;
}

std::vector<H4Span> s_lattice_basis(const K3Form& k) {
    std::size_t r = k.rank();
    if (r < 2 || k.gram(0, 0) != 0 || k.gram(1, 1) != 0 || k.gram(0, 1) != 1)
        fail(Errc::InvalidArgument, "the form must start with a hyperbolic plane");
    H2Class u1 = H2Class::gamma_basis(r, 0), u2 = H2Class::gamma_basis(r, 1), d = H2Class::delta_class(r);
    return {H4Span::product(u1, u1), H4Span::product(u2, u2), H4Span::product(d, d), H4Span::product(u1, u2),
            H4Span::product(u1, d),  H4Span::product(u2, d),  H4Span::sigma_class()};
}

IMat h4_action(const IMat& psi, const K3Form& k) {
    std::size_t r = k.rank();
    if (psi.rows != r || psi.cols != r) fail(Errc::InvalidArgument, "action must be square of the form's rank");
    H4Basis b{r};
    IMat out(b.size(), b.size());
    out(b.sigma(), b.sigma()) = 1;
    for (std::size_t k2 = 0; k2 < r; ++k2) {
        // q2(ψα_k) = Σ_j ψ_jk q2(α_j)
        for (std::size_t j = 0; j < r; ++j) out(b.q2(j), b.q2(k2)) = psi(j, k2);
        // m11(Σ c_j α_j) = Σ c_j² m11_j + Σ (c_j² - c_j)/2 q2_j + Σ_{j<l} c_j c_l q1q1_jl
        std::size_t col = b.m11(k2);
        for (std::size_t j = 0; j < r; ++j) {
            const Int& c = psi(j, k2);
            out(b.m11(j), col) += c * c;
            out(b.q2(j), col) += (c * c - c) / 2;
            for (std::size_t l = j + 1; l < r; ++l) out(b.q11(j, l), col) += c * psi(l, k2);
        }
    }
    for (std::size_t k1 = 0; k1 < r; ++k1)
        for (std::size_t m = k1 + 1; m < r; ++m) {
            std::size_t col = b.q11(k1, m);
            IVec v(b.size());
            for (std::size_t j = 0; j < r; ++j) {
                if (sgn(psi(j, k1)) == 0) continue;
                for (std::size_t l = 0; l < r; ++l)
                    if (sgn(psi(l, m)) != 0) add_q1q1(v, b, j, l, psi(j, k1) * psi(l, m));
            }
            for (std::size_t i = 0; i < b.size(); ++i) out(i, col) = v[i];
        }
    return out;
}

}  // namespace ql
