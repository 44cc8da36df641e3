#include "local_action.hpp"

#include <algorithm>

#include "error.hpp"
#include "lattice.hpp"

namespace ql {

bool FixedPointLocal::isolated() const {
    return std::none_of(k.begin(), k.end(), [](long v) { return v == 0; });
}

std::string FixedPointLocal::str() const {
    std::string s = "1/" + std::to_string(p) + "(";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

FixedPointLocal make_fixed_point(long p, std::vector<long> exponents) {
    if (!is_prime(p)) fail(Errc::InvalidArgument, std::to_string(p) + " is not prime");
    if (exponents.empty()) fail(Errc::InvalidArgument, "empty exponent list");
    for (auto& e : exponents) e = ((e % p) + p) % p;
    if (std::all_of(exponents.begin(), exponents.end(), [](long v) { return v == 0; }))
        fail(Errc::InvalidArgument, "all exponents vanish: the point is not fixed by a nontrivial element");
    std::sort(exponents.begin(), exponents.end());
    return FixedPointLocal{p, std::move(exponents)};
}

FixedPointLocal canonical_generator(const FixedPointLocal& fp) {
    FixedPointLocal best = fp;
    for (long c = 2; c < fp.p; ++c) {
        std::vector<long> m(fp.k.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = fp.k[i] * c % fp.p;
        std::sort(m.begin(), m.end());
        if (m < best.k) best.k = m;
    }
    return best;
}

const char* point_type_name(PointType t) {
    switch (t) {
        case PointType::Zero: return "0";
        case PointType::One: return "1";
        case PointType::Two: return "2";
        case PointType::Other: return "other";
    }
    return "?";
}

PointClassification classify_fixed_point(const FixedPointLocal& fp) {
    const auto& k = fp.k;
    std::size_t n = k.size();
    // sorted, so the zeros form a prefix
    std::size_t zeros = static_cast<std::size_t>(std::count(k.begin(), k.end(), 0L));
    if (zeros + 1 == n) return {PointType::Zero, true};
    bool constant_tail = std::all_of(k.begin() + static_cast<long>(zeros), k.end(),
                                     [&](long v) { return v == k.back(); });
    if (constant_tail) return {PointType::One, false};
    if (fp.p == 3) return {PointType::Two, false};
    return {PointType::Other, false};
}

std::string WeightValue::str() const {
    if (known()) return std::to_string(lo);
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

}  // namespace ql
