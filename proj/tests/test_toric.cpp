#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "error.hpp"
#include "lattice.hpp"
#include "toric.hpp"

using namespace ql;

namespace {

template <class F>
Errc error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::InvalidArgument;
}

// Greedy ceiling expansion on exact rationals, independent of the integer loop.
std::vector<long> hj_oracle(long n, long q) {
    std::vector<long> out;
    Rat x(n, q);
    x.canonicalize();
    for (;;) {
        Int c = x.get_num() / x.get_den();
        if (c * x.get_den() != x.get_num()) c += 1;
        out.push_back(c.get_si());
        Rat rest = Rat(c) - x;
        if (rest == 0) break;
        x = 1 / rest;
    }
    return out;
}

long inverse_mod(long a, long p) {
    for (long b = 1; b < p; ++b)
        if (a * b % p == 1) return b;
    return 0;
}

const std::vector<long> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

TEST_CASE("hj_expand examples") {
    CHECK(hj_expand(3, 1) == std::vector<long>{3});
    CHECK(hj_expand(5, 2) == std::vector<long>{3, 2});
    CHECK(hj_expand(5, 3) == std::vector<long>{2, 3});
    for (long n = 2; n < 12; ++n) CHECK(hj_expand(n, 1) == std::vector<long>{n});
    CHECK(error_of([] { hj_expand(6, 4); }) == Errc::NotCoprime);
    CHECK(error_of([] { hj_expand(5, 5); }) == Errc::InvalidArgument);
}

TEST_CASE("hj_expand agrees with the rational oracle and reconstructs n/q") {
    for (long n = 2; n <= 60; ++n)
        for (long q = 1; q < n; ++q) {
            if (std::gcd(n, q) != 1) continue;
            auto a = hj_expand(n, q);
            CHECK(a == hj_oracle(n, q));
            CHECK(hj_value(a) == Rat(n, q));
            for (long v : a) CHECK(v >= 2);
        }
}

TEST_CASE("resolve_2d examples") {
    auto r31 = resolve_2d(3, 1);
    CHECK(r31.exceptional == std::vector<long>{3});
    auto r52 = resolve_2d(5, 2);
    CHECK(r52.exceptional == std::vector<long>{3, 2});
    CHECK(r52.fan.rays == std::vector<Ray>{{5, -2}, {3, -1}, {1, 0}, {0, 1}});
    auto r21 = resolve_2d(2, 1);
    CHECK(r21.exceptional == std::vector<long>{2});
    CHECK(error_of([] { resolve_2d(5, 0); }) == Errc::InvalidArgument);
    CHECK(error_of([] { resolve_2d(9, 2); }) == Errc::InvalidArgument);
}

TEST_CASE("resolution fans are regular and match the HJ expansion") {
    for (long p : kPrimes)
        for (long q = 1; q < p; ++q) {
            auto r = resolve_2d(p, q);
            CHECK(r.exceptional == hj_expand(p, q));
            const auto& rays = r.fan.rays;
            REQUIRE(rays.size() == r.exceptional.size() + 2);
            for (std::size_t i = 0; i + 1 < rays.size(); ++i)
                CHECK(rays[i].first * rays[i + 1].second - rays[i].second * rays[i + 1].first == 1);
        }
}

TEST_CASE("weight_case_2d for 1/5(1,2)") {
    auto wc = weight_case_2d(5, 2, Compactification::PaperChoice);
    CHECK(wc.label == "v)");
    CHECK(wc.log_discr_im_g == 1);
    CHECK(wc.discr_boundary == 5);
    CHECK(wc.rktor_h2_u == 0);
    CHECK(wc.rktor_h2_res == 0);
    CHECK(wc.weight == 1);
    CHECK(wc.complete_fan.complete);
    auto alt = weight_case_2d(5, 2, Compactification::ThreeRays);
    CHECK(alt.weight == 1);
}

TEST_CASE("weight_dim2 examples") {
    CHECK(weight_dim2(3, 1) == WeightValue::exact(1));
    CHECK(weight_dim2(5, 2) == WeightValue::exact(1));
    CHECK(weight_dim2(19, 7) == WeightValue::exact(1));
}

TEST_CASE("weight_dim2 is 1 for every p <= 19 and both compactifications") {
    int cases = 0;
    for (long p : kPrimes)
        for (long q = 1; q < p; ++q) {
            for (auto c : {Compactification::PaperChoice, Compactification::ThreeRays}) {
                auto wc = weight_case_2d(p, q, c);
                CHECK(wc.weight == 1);
                // complete fans: every cone regular, closing the cycle
                const auto& rays = wc.complete_fan.rays;
                for (std::size_t i = 0; i < rays.size(); ++i) {
                    Ray a = rays[i], b = rays[(i + 1) % rays.size()];
                    CHECK(a.first * b.second - a.second * b.first == 1);
                }
            }
            CHECK(weight_dim2(p, q) == weight_dim2(p, inverse_mod(q, p)));
            ++cases;
        }
    CHECK(cases == 69);
}

TEST_CASE("weight_lookup table") {
    CHECK(weight_lookup(make_fixed_point(5, {1, 2, 3, 4})) == WeightValue::exact(1));
    CHECK(weight_lookup(make_fixed_point(3, {1, 1, 2, 2})) == WeightValue::exact(1));
    CHECK(weight_lookup(make_fixed_point(7, {1, 3, 5, 6})) == WeightValue::unknown());
    CHECK(weight_lookup(make_fixed_point(5, {1, 1, 4, 4})) == WeightValue::exact(1));
    CHECK(weight_lookup(make_fixed_point(5, {2, 2, 2, 4})) == WeightValue::exact(1));
    CHECK(weight_lookup(make_fixed_point(5, {3, 3, 3, 3})) == WeightValue::exact(1));
    CHECK(weight_lookup(make_fixed_point(7, {2, 4, 6, 1, 3, 5})) == WeightValue::exact(1));
    CHECK(weight_lookup(make_fixed_point(7, {3, 5})) == WeightValue::exact(1));
    CHECK(weight_lookup(make_fixed_point(3, {0, 1, 2})) == WeightValue::unknown());
    CHECK(weight_lookup(make_fixed_point(3, {1, 1, 2})) == WeightValue::unknown());
}

TEST_CASE("weight values stay in {0,1,2}") {
    for (long p : {3L, 5L, 7L})
        for (long a = 0; a < p; ++a)
            for (long b = 0; b < p; ++b)
                for (long c = 1; c < p; ++c)
                    for (long d = 1; d < p; ++d) {
                        auto w = weight_lookup(make_fixed_point(p, {a, b, c, d}));
                        CHECK(w.lo >= 0);
                        CHECK(w.hi <= 2);
                        CHECK((w.known() || w == WeightValue::unknown()));
                    }
}

TEST_CASE("fixed point classification") {
    CHECK(classify_fixed_point(make_fixed_point(3, {0, 0, 0, 1})).type == PointType::Zero);
    CHECK(classify_fixed_point(make_fixed_point(3, {0, 0, 2, 2})).type == PointType::One);
    CHECK(classify_fixed_point(make_fixed_point(5, {1, 1, 1, 1})).type == PointType::One);
    CHECK(classify_fixed_point(make_fixed_point(3, {1, 1, 2, 2})).type == PointType::Two);
    CHECK(classify_fixed_point(make_fixed_point(5, {1, 1, 4, 4})).type == PointType::Other);
    CHECK(classify_fixed_point(make_fixed_point(3, {0, 0, 0, 1})).quotient_smooth);
    CHECK(make_fixed_point(5, {7, -1, 3}).k == std::vector<long>{2, 3, 4});
    CHECK(canonical_generator(make_fixed_point(5, {2, 2, 2, 4})).k == std::vector<long>{1, 1, 1, 2});
    CHECK(make_fixed_point(3, {1, 2}).str() == "1/3(1,2)");
    CHECK(error_of([] { make_fixed_point(3, {0, 3}); }) == Errc::InvalidArgument);
    CHECK(error_of([] { make_fixed_point(4, {1, 1}); }) == Errc::InvalidArgument);
}
