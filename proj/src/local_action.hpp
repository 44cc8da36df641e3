#pragma once

#include <string>
#include <vector>

namespace ql {

// Diagonal action diag(ξ^k_1, ..., ξ^k_n) at a fixed point.
struct FixedPointLocal {
    long p = 0;
    std::vector<long> k;  // sorted ascending, entries in [0, p-1], not all zero

    std::size_t dim() const { return k.size(); }
    bool isolated() const;  // no zero exponent
    std::string str() const;
    bool operator==(const FixedPointLocal& o) const { return p == o.p && k == o.k; }
};

// Validates and sorts; exponents are reduced mod p first.
FixedPointLocal make_fixed_point(long p, std::vector<long> exponents);

// Same group, generator ξ^c: the lexicographically least sorted multiple.
FixedPointLocal canonical_generator(const FixedPointLocal& fp);

enum class PointType { Zero, One, Two, Other };

const char* point_type_name(PointType t);

struct PointClassification {
    PointType type;
    bool quotient_smooth;
};

PointClassification classify_fixed_point(const FixedPointLocal& fp);

// w ∈ {0,1,2}; lo < hi encodes an interval.
struct WeightValue {
    int lo = 0;
    int hi = 2;

    static WeightValue exact(int w) { return {w, w}; }
    static WeightValue unknown() { return {0, 2}; }
    bool known() const { return lo == hi; }
    std::string str() const;
    bool operator==(const WeightValue& o) const { return lo == o.lo && hi == o.hi; }
};

}  // namespace ql
