#pragma once

// Hand-rolled random generators for property tests.

#include <random>
#include <vector>

#include "matrix.hpp"

namespace testgen {

using ql::IMat;
using ql::Int;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline IMat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi, double zero_prob) {
    IMat m(r, c);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : m.a) v = (u(rng) < zero_prob) ? 0 : uniform(rng, lo, hi);
    return m;
}

inline IMat random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 0, long coef = 2) {
    IMat u = IMat::identity(n);
    if (n < 2) {
        if (n == 1 && rng() % 2) u(0, 0) = -1;
        return u;
    }
    if (steps == 0) steps = static_cast<int>(3 * n);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        long f = uniform(rng, -coef, coef);
        for (std::size_t k = 0; k < n; ++k) u(i, k) += f * u(j, k);
    }
    for (std::size_t i = n; i > 1; --i) u.swap_rows(i - 1, rng() % i);
    if (rng() % 2)
        for (std::size_t k = 0; k < n; ++k) u(0, k) = -u(0, k);
    return u;
}

inline IMat random_symmetric(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    IMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = uniform(rng, lo, hi);
    return m;
}

inline IMat random_nondegenerate_symmetric(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    for (;;) {
        IMat m = random_symmetric(rng, n, lo, hi);
        if (sgn(ql::det(m)) != 0) return m;
    }
}

// Companion matrix of 1 + x + ... + x^{p-1}.
inline IMat cyclotomic_companion(long p) {
    std::size_t n = static_cast<std::size_t>(p - 1);
    IMat c(n, n);
    for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -1;
    return c;
}

// Companion of Φ_p with a glue column onto a trivial summand.
inline IMat glued_block(long p) {
    std::size_t n = static_cast<std::size_t>(p);
    IMat c = cyclotomic_companion(p);
    IMat b(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) b(i, j) = c(i, j);
    b(0, n - 1) = 1;
    b(n - 1, n - 1) = 1;
    return b;
}

inline IMat permutation_cycle(long p) {
    std::size_t n = static_cast<std::size_t>(p);
    IMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m((i + 1) % n, i) = 1;
    return m;
}

struct BlockCounts {
    int trivial = 0;
    int cyclotomic = 0;
    int glued = 0;
};

// Direct sum of Reiner building blocks, conjugated by a random unimodular matrix.
inline IMat reiner_action(std::mt19937_64& rng, long p, const BlockCounts& counts, bool conjugate = true) {
    std::vector<IMat> blocks;
    for (int i = 0; i < counts.trivial; ++i) blocks.push_back(IMat::identity(1));
    for (int i = 0; i < counts.cyclotomic; ++i) blocks.push_back(cyclotomic_companion(p));
    for (int i = 0; i < counts.glued; ++i) blocks.push_back(glued_block(p));
    for (std::size_t i = blocks.size(); i > 1; --i) std::swap(blocks[i - 1], blocks[rng() % i]);
    IMat phi = ql::block_diag(blocks);
    if (!conjugate || phi.rows == 0) return phi;
    IMat u = random_unimodular(rng, phi.rows);
    IMat uinv = ql::to_integer(ql::inverse(u));
    return u * phi * uinv;
}

// Σ (φ^k)ᵀ φ^k is positive definite and φ-invariant.
inline IMat invariant_form(const IMat& phi, long p) {
    IMat g(phi.rows, phi.cols);
    IMat pk = IMat::identity(phi.rows);
    for (long k = 0; k < p; ++k) {
        g = g + pk.transpose() * pk;
        pk = pk * phi;
    }
    return g;
}

}  // namespace testgen
