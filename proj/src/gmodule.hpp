#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace ql {

struct PrimeOrderAction {
    long p = 0;
    IMat phi;  // acts on column coordinate vectors
    std::optional<GramLattice> gram;
};

// Checks primality, phi^p = I and phiᵀ·G·phi = G.
PrimeOrderAction make_action(long p, IMat phi, std::optional<IMat> gram = std::nullopt);

struct JordanProfile {
    long p = 0;
    std::vector<long> l;  // l[q] for q = 1..p; l[0] unused
    std::optional<long> l1_plus, l1_minus;  // p = 2 only

    JordanProfile() = default;
    explicit JordanProfile(long prime) : p(prime), l(static_cast<std::size_t>(prime) + 1, 0) {}

    long count(long q) const { return (q >= 1 && q <= p) ? l[static_cast<std::size_t>(q)] : 0; }
    long& at(long q) { return l.at(static_cast<std::size_t>(q)); }
    long rank() const;
    long l1() const;  // l_1, or l_{1,+} when p = 2
    long lm() const;  // l_{p-1}, or l_{1,-} when p = 2
    long lp() const { return count(p); }
    bool middle_blocks() const;  // some l_q != 0 with 2 <= q <= p-2
    bool operator==(const JordanProfile& o) const;
    std::string str() const;
};

JordanProfile trivial_profile(long p, long rank = 1);

JordanProfile jordan_profile(const PrimeOrderAction& a);
SublatticeEmbedding invariant_sublattice(const PrimeOrderAction& a);
SublatticeEmbedding sigma_kernel(const PrimeOrderAction& a);
long a_invariant(const PrimeOrderAction& a);

struct AbelianGroup {
    long free_rank = 0;
    long torsion_rank = 0;  // number of Z/p summands
    bool operator==(const AbelianGroup& o) const {
        return free_rank == o.free_rank && torsion_rank == o.torsion_rank;
    }
    std::string str(long p) const;
};

struct GroupCohomology {
    AbelianGroup formula;
    AbelianGroup computed;
    std::vector<Int> invariant_factors;  // of the explicit quotient
    bool agree() const { return formula == computed; }
};

GroupCohomology group_cohomology(const PrimeOrderAction& a, int degree);

JordanProfile sym2_profile(const JordanProfile& jp);
PrimeOrderAction sym2_action(const PrimeOrderAction& a);

struct CohomologyProfile {
    long p = 0;
    int dim = 0;  // complex dimension
    std::map<int, JordanProfile> profiles;
    bool torsion_free = true;
    bool odd_vanishes = false;

    // Degrees 0 and 2·dim default to the trivial line; odd degrees to zero
    // when odd_vanishes is set.  Anything else missing throws MissingData.
    JordanProfile at(int degree) const;
    long l1(int degree) const { return at(degree).l1(); }
    long lm(int degree) const { return at(degree).lm(); }
};

AbelianGroup free_quotient_cohomology(const CohomologyProfile& cp, int degree, bool e2_degenerate);

}  // namespace ql
