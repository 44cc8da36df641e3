#pragma once

#include <vector>

#include "gmodule.hpp"
#include "matrix.hpp"

namespace ql {

// H^2(S) with μ = gram^{-1}.  Any even unimodular Gram is accepted; is_k3()
// checks rank 22 and signature (3,19).
struct K3Form {
    IMat gram;
    IMat mu;

    explicit K3Form(IMat g);
    std::size_t rank() const { return gram.rows; }
    bool is_k3() const;
};

K3Form standard_k3_form();  // U^3 + E8(-1)^2

struct H2Class {
    IVec gamma;  // coordinates on j(α_k)
    Int delta = 0;

    static H2Class gamma_basis(std::size_t r, std::size_t k);
    static H2Class delta_class(std::size_t r);
    bool operator==(const H2Class& o) const { return gamma == o.gamma && delta == o.delta; }
};

H2Class operator+(const H2Class& x, const H2Class& y);
H2Class operator*(const Int& c, const H2Class& x);

// Beauville–Bogomolov form on S^[2]: j isometric, B(δ,δ) = -2, δ ⊥ j(H^2).
Int bb_form(const H2Class& x, const H2Class& y, const K3Form& k);

// Coordinates over σ, q2(α_k), q1(α_k)q1(α_m) (k < m), m11(α_k).
struct H4Basis {
    std::size_t r = 0;
    std::size_t size() const { return 1 + 2 * r + r * (r - 1) / 2; }
    std::size_t sigma() const { return 0; }
    std::size_t q2(std::size_t k) const { return 1 + k; }
    std::size_t q11(std::size_t k, std::size_t m) const;  // k != m, either order
    std::size_t m11(std::size_t k) const { return 1 + r + r * (r - 1) / 2 + k; }
    std::string label(std::size_t i) const;
};

struct H4Class {
    IVec coords;
};

H4Class cup_h2(const H2Class& x, const H2Class& y, const K3Form& k);

Int quadruple_product(const H2Class& x1, const H2Class& x2, const H2Class& x3, const H2Class& x4, const K3Form& k);

// Integral combinations of cup products x·y and σ; pairings follow the product
// rule and σ·σ = 1, σ·(x·y) = σ-coordinate of x·y.
struct H4Span {
    struct Term {
        Int coeff;
        H2Class x, y;
    };
    std::vector<Term> products;
    Int sigma = 0;

    static H4Span product(const H2Class& x, const H2Class& y);
    static H4Span sigma_class();
};

Int pair_h4(const H4Span& a, const H4Span& b, const K3Form& k);

// Rewrites basis coordinates through q2 = δγ, q1q1 = γγ - (α·α)σ and
// m11 = (γ² - δγ - α²σ)/2.  OutsideSupportedSpan when a half-integer is needed.
H4Span to_span(const H4Class& c, const K3Form& k);

struct SLattice {
    IMat gram;
    Int det;
};

SLattice s_lattice_gram(const std::vector<H4Span>& basis, const K3Form& k);

// Sym^2(U + (-2)) + Zσ with U the first hyperbolic plane of the form:
// u1², u2², δ², u1u2, u1δ, u2δ, σ.
std::vector<H4Span> s_lattice_basis(const K3Form& k);

// Action on the H^4 basis induced by ψ on H^2(S) (column convention).
IMat h4_action(const IMat& psi, const K3Form& k);

}  // namespace ql
