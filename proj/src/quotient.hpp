#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "matrix.hpp"

namespace ql {

// L^∨(p).  When lp is given, |A_L| must equal p^lp.
GramLattice quotient_middle_lattice(const GramLattice& l, long p, std::optional<long> lp = std::nullopt);

struct GlueSpec {
    IMat transform;             // rows: new basis in invariant-lattice coordinates
    std::vector<bool> divided;  // row i is divided by p
    std::string note;

    std::size_t divided_count() const;
};

GlueSpec identity_glue(std::size_t n);

// Divides the whole p-part of A_L.  The transform is unimodular: rows come from
// the Smith form of L inside L + (1/p)·ker(G mod p).
GlueSpec auto_glue(const GramLattice& l, long p);

struct FujikiScale {
    Rat lambda;
    Rat fujiki;  // 3p^3/λ^2
};

FujikiScale fujiki_scale(long p, const QMat& q);

struct QuotientResult {
    GramLattice lattice;
    QMat raw;  // Gram of the glued basis before scaling
    Rat scale;
    Rat fujiki;
    Int index;  // [glued lattice : L]
    GlueSpec glue;
};

// With expected_fujiki the scale is forced to sqrt(3p^3/C) and must give an
// integral form; otherwise the indivisible normalization is used.
QuotientResult bb_quotient(const GramLattice& l, long p, const GlueSpec& glue,
                           std::optional<Rat> expected_fujiki = std::nullopt);

// Comparator used by the catalog: invariants always, reduced definite binary
// blocks when present, entrywise equality on request.
struct LatticeComparison {
    bool rank = false, det = false, signature = false, discriminant = false, binary_blocks = true;
    std::optional<bool> exact;
    std::vector<std::string> mismatches;

    bool pass() const;
};

LatticeComparison compare_lattices(const GramLattice& got, const GramLattice& want, bool exact = false);

// Diagonal blocks of the zero pattern, in order of first index.
std::vector<IMat> orthogonal_blocks(const IMat& gram);

}  // namespace ql
