#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace ql {

struct GramLattice {
    IMat gram;
    std::string name;

    GramLattice() = default;
    // Validates symmetry and nondegeneracy.
    explicit GramLattice(IMat g, std::string label = {});

    std::size_t rank() const { return gram.rows; }
    Int pair(const IVec& x, const IVec& y) const;
};

struct DiscriminantGroup {
    std::vector<Int> divisors;  // d_1 | d_2 | ..., each > 1

    Int order() const;
    bool trivial() const { return divisors.empty(); }
    bool is_p_elementary(long p) const;
    std::string str() const;
    bool operator==(const DiscriminantGroup& o) const { return divisors == o.divisors; }
};

struct Signature {
    std::size_t pos = 0;
    std::size_t neg = 0;
    bool operator==(const Signature& o) const { return pos == o.pos && neg == o.neg; }
};

struct InvariantSummary {
    std::size_t rank = 0;
    Int det;
    Signature signature;
    DiscriminantGroup discriminant;
};

DiscriminantGroup discriminant_group(const IMat& gram);
Signature signature(const IMat& gram);
Signature signature(const QMat& gram);
InvariantSummary invariant_summary(const GramLattice& l);

GramLattice rescale(const GramLattice& l, const Int& m);
GramLattice direct_sum(const std::vector<GramLattice>& parts, std::string label = {});

// p·G^{-1} in the dual basis.
GramLattice dual_rescaled(const GramLattice& l, long p);

struct SublatticeEmbedding {
    std::optional<GramLattice> ambient;
    IMat basis;   // rows in ambient coordinates
    IMat induced; // T·G·Tᵀ
    std::optional<Int> index;  // |det T| when T is square
};

SublatticeEmbedding sublattice(const GramLattice& l, const IMat& t);

struct Overlattice {
    GramLattice lattice;
    QMat basis;  // rows in coordinates of the source lattice
    Int index;   // [overlattice : source]
};

Overlattice overlattice_divide(const GramLattice& l, const std::vector<IVec>& vectors, long p);

// Reduced representative [[a,b],[b,c]] with 0 <= 2b <= |a| <= |c|.
IMat binary_reduce(const IMat& gram);

bool is_prime(long n);

}  // namespace ql
