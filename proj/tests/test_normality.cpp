#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "error.hpp"
#include "normality.hpp"
#include "scenarios.hpp"
#include "testgen.hpp"

using namespace ql;
using namespace scen;

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

void check_chain(const NormalityReport& r, long l, long m, long rt) {
    REQUIRE(r.chain.has_value());
    CHECK(r.chain->left == l);
    CHECK(r.chain->middle == m);
    CHECK(r.chain->right == rt);
}

}  // namespace

TEST_CASE("classify_fixed_point examples") {
    auto a = classify_fixed_point(make_fixed_point(5, {0, 0, 0, 1}));
    CHECK(a.type == PointType::Zero);
    CHECK(a.quotient_smooth);
    auto b = classify_fixed_point(make_fixed_point(3, {0, 2, 2}));
    CHECK(b.type == PointType::One);
    CHECK_FALSE(b.quotient_smooth);
    CHECK(classify_fixed_point(make_fixed_point(3, {1, 1, 2, 2})).type == PointType::Two);
}

TEST_CASE("for p = 2 every point is of type 0 or 1") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng() % 6;
        std::vector<long> k(n);
        for (auto& v : k) v = static_cast<long>(rng() % 2);
        if (std::all_of(k.begin(), k.end(), [](long v) { return v == 0; })) k[rng() % n] = 1;
        auto t = classify_fixed_point(make_fixed_point(2, k)).type;
        CHECK((t == PointType::Zero || t == PointType::One));
    }
}

TEST_CASE("pushforward_discriminant") {
    auto k3 = surface(7, prof(7, 1, 0, 3), 3);
    auto a = pushforward_discriminant(k3.cohomology, 2);
    CHECK(a.log_discr == 1);
    CHECK(a.alpha_upper == 0);
    auto z = surface(11, prof(11, 0, 0, 2), 2);
    CHECK(pushforward_discriminant(z.cohomology, 2).log_discr == 0);
    auto m = pushforward_discriminant(m3().cohomology, 4);
    CHECK(m.log_discr == 15);
    CHECK(m.alpha_upper == 7);
    auto tors = k3;
    tors.cohomology.torsion_free = false;
    CHECK(error_of([&] { pushforward_discriminant(tors.cohomology, 2); }) == Errc::TorsionPresent);
    auto big = surface(23, prof(23, 1, 0, 0), 3);
    CHECK(error_of([&] { pushforward_discriminant(big.cohomology, 2); }) == Errc::UnsupportedPrime);
}

TEST_CASE("check_simple_criteria") {
    auto z11 = check_simple_criteria(surface(11, prof(11, 0, 0, 2), 2).cohomology, 2);
    CHECK(z11.verdict == Verdict::Normal);
    CHECK(z11.criterion == "simple:l1=0");
    CHECK(*z11.alpha_hi == 0);

    PairData m11 = hilb2(11, prof(11, 1, 0, 2));
    CHECK(m11.cohomology.l1(4) == 1);
    auto r = check_simple_criteria(m11.cohomology, 4);
    CHECK(r.verdict == Verdict::Normal);
    CHECK(r.criterion == "simple:l1=1");

    auto y7 = check_simple_criteria(surface(7, prof(7, 1, 0, 3), 3).cohomology, 2);
    CHECK(y7.criterion == "simple:l1=1");

    auto two = check_simple_criteria(surface(5, prof(5, 2, 0, 4), 4).cohomology, 2);
    CHECK(two.verdict == Verdict::Unknown);
    CHECK(two.alpha_lo == 0);
    CHECK(*two.alpha_hi == 1);
    // l_1 = 1 outside the middle degree does not count
    CHECK(check_simple_criteria(m11.cohomology, 2).verdict == Verdict::Unknown);
}

TEST_CASE("check_theorem_main") {
    auto t = check_theorem_main(torus());
    CHECK(t.verdict == Verdict::Normal);
    check_chain(t, 16, 16, 10);
    CHECK(t.parity_ok);

    // Natural order-3 data with declared type-1 points also satisfies the chain.
    PairData nat = natural3();
    nat.fixed.points = {points(3, {1, 1, 1, 1}, 9)};
    auto n = check_theorem_main(nat);
    CHECK(n.verdict == Verdict::Normal);
    check_chain(n, 9, 9, 6);

    // Without exponents the type hypothesis cannot be checked.
    CHECK(error_of([] { check_theorem_main(natural3()); }) == Errc::HypothesisFailed);
    // Type-2 points fail hypothesis iii).
    CHECK(error_of([] { check_theorem_main(m3()); }) == Errc::HypothesisFailed);

    // left - right = l1 in the middle degree, so only corrupt data reaches left < right
    PairData bad = torus();
    bad.cohomology.profiles[2] = prof2(-2, 0, 0);
    CHECK(error_of([&] { check_theorem_main(bad); }) == Errc::ConsistencyError);

    PairData l = nat;
    l.cohomology.profiles[2] = prof(3, 2, 1, 7);
    auto rep = check_normality(l, Criterion::Auto);
    CHECK(rep.verdict == Verdict::Unknown);
    CHECK(error_of([&] { check_theorem_main(l); }) == Errc::HypothesisFailed);
}

TEST_CASE("almost negligible fixed locus") {
    PairData d = hilb2(3, prof(3, 2, 0, 7));
    FixedComponent s;
    s.dim = 2;
    s.even_betti = 24;
    s.label = "Sigma";
    s.normal = make_fixed_point(3, {0, 0, 1, 1});
    s.simply_connected = true;
    s.primitive_class = true;
    d.fixed.components.push_back(s);
    auto r = check_normality(d, Criterion::Main);
    REQUIRE(r.hypotheses.size() >= 3);
    CHECK(r.hypotheses[2].holds);
    CHECK(r.hypotheses[2].detail.find("almost negligible") != std::string::npos);
    d.fixed.components[0].primitive_class = false;
    CHECK(error_of([&] { check_theorem_main(d); }) == Errc::HypothesisFailed);
}

TEST_CASE("odd-dimensional variant of the main chain") {
    PairData d;
    d.cohomology.p = 3;
    d.cohomology.dim = 3;
    d.cohomology.profiles[1] = prof(3, 0, 0, 0);
    d.cohomology.profiles[2] = prof(3, 0, 1, 0);
    d.cohomology.profiles[3] = prof(3, 2, 0, 0);
    d.cohomology.profiles[4] = prof(3, 0, 1, 0);
    d.cohomology.profiles[5] = prof(3, 0, 0, 0);
    d.fixed.points.push_back(points(3, {1, 1, 1}, 4));
    CHECK(error_of([&] { check_theorem_main(d); }) == Errc::HypothesisFailed);
    d.e2_degenerate = true;
    d.rktor_resolution = 2;
    auto r = check_theorem_main(d);
    check_chain(r, 4, 4, 2);
    CHECK(r.verdict == Verdict::Normal);
}

TEST_CASE("blowup_update") {
    auto b = blowup_update(m3().cohomology, 27, 0, 0);
    CHECK(b.cohomology.l1(2) == 32);
    CHECK(b.cohomology.l1(4) == 42);
    CHECK(b.cohomology.l1(6) == 32);
    CHECK(b.cohomology.l1(8) == 1);
    CHECK(b.h2star_delta == 81);
    CHECK(b.cohomology.at(2).count(3) == 6);

    auto id = blowup_update(m3().cohomology, 0, 0, 0);
    CHECK(id.h2star_delta == 0);
    for (int k = 0; k <= 8; ++k) CHECK(id.cohomology.at(k) == m3().cohomology.at(k));

    // dimension 8: edge degrees gain n2 + eps + eta, the others n2 + eps + 2 eta
    PairData big;
    big.cohomology.p = 3;
    big.cohomology.dim = 8;
    big.cohomology.odd_vanishes = true;
    for (int k = 2; k <= 14; k += 2) big.cohomology.profiles[k] = prof(3, 1, 0, 0);
    auto e = blowup_update(big.cohomology, 2, 1, 1);
    CHECK(e.cohomology.l1(2) == 1 + 4);
    CHECK(e.cohomology.l1(14) == 1 + 4);
    for (int k = 4; k <= 12; k += 2) CHECK(e.cohomology.l1(k) == 1 + 5);
    CHECK(e.cohomology.l1(0) == 1);
    CHECK(e.cohomology.l1(16) == 1);
    CHECK(e.h2star_delta == 7 * 2 + 7 * 1 + 12 * 1);

    CHECK(error_of([] { blowup_update(m5().cohomology, 1, 0, 0); }) == Errc::NotOrder3);
}

TEST_CASE("check_th3") {
    auto r = check_th3(m3());
    CHECK(r.verdict == Verdict::Normal);
    check_chain(r, 27, 27, 12 - 27);
    CHECK(r.parity_ok);

    PairData more = m3();
    FixedComponent c;
    c.dim = 1;
    c.even_betti = 2;
    c.label = "curve";
    c.normal = make_fixed_point(3, {0, 1, 1, 1});
    c.simply_connected = true;
    more.fixed.components.push_back(c);
    auto u = check_th3(more);
    CHECK(u.chain->middle == 29);
    CHECK(u.verdict == Verdict::Unknown);

    PairData bad = m3();
    FixedComponent s;
    s.dim = 2;
    s.even_betti = 4;
    s.odd_betti = 2;
    s.label = "surface";
    s.normal = make_fixed_point(3, {0, 0, 1, 1});
    s.simply_connected = false;
    s.primitive_class = true;
    bad.fixed.components.push_back(s);
    CHECK(error_of([&] { check_th3(bad); }) == Errc::NotStable);
    CHECK(error_of([] { check_th3(m5()); }) == Errc::NotOrder3);
}

TEST_CASE("stability with almost stable members in dimension 8") {
    PairData d;
    d.cohomology.p = 3;
    d.cohomology.dim = 8;
    d.fixed.points.push_back(points(3, {1, 1, 1, 1, 2, 2, 2, 2}, 3));
    CHECK(stability(d).n2 == 3);
    d.fixed.points.push_back(points(3, {1, 1, 1, 1, 1, 2, 2, 2}, 1));
    auto st = stability(d);
    CHECK(st.eps == 1);
    FixedComponent c;
    c.dim = 1;
    c.even_betti = 2;
    c.label = "curve";
    c.simply_connected = true;
    c.normal = make_fixed_point(3, {0, 1, 1, 1, 2, 2, 2, 2});
    d.fixed.components.push_back(c);
    CHECK(error_of([&] { stability(d); }) == Errc::NotStable);
    d.fixed.points.pop_back();
    CHECK(stability(d).eta == 1);
    d.fixed.points.push_back(points(3, {1, 1, 2, 2, 2, 2, 2, 2}, 1));
    CHECK(error_of([&] { stability(d); }) == Errc::NotStable);
}

TEST_CASE("Th3 agrees with the type-1 chain on the blow-up (eta = 0)") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        PairData d;
        d.cohomology.p = 3;
        d.cohomology.dim = 2 * n;
        d.cohomology.odd_vanishes = true;
        for (int k = 1; k < 2 * n; ++k) {
            d.cohomology.profiles[2 * k] = prof(3, testgen::uniform(rng, 0, 12), 0, testgen::uniform(rng, 0, 5));
        }
        for (int k = 0; k < n; ++k)
            d.cohomology.profiles[2 * k + 1] = prof(3, 0, testgen::uniform(rng, 0, 3), testgen::uniform(rng, 0, 2));
        d.cohomology.odd_vanishes = false;
        for (int k = n; k < 2 * n; ++k) d.cohomology.profiles[2 * k + 1] = d.cohomology.profiles[2 * (2 * n - k) - 1];
        long n2 = testgen::uniform(rng, 1, 30);
        std::vector<long> stable(static_cast<std::size_t>(n), 1);
        stable.insert(stable.end(), static_cast<std::size_t>(n), 2);
        d.fixed.points.push_back(points(3, stable, n2));
        long extra = testgen::uniform(rng, 0, 20);
        if (extra) {
            std::vector<long> one(static_cast<std::size_t>(2 * n), 2);
            d.fixed.points.push_back(points(3, one, extra));
        }
        NormalityReport th3;
        try {
            th3 = check_th3(d);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ConsistencyError);
            continue;
        }
        auto b = blowup_update(d.cohomology, n2, 0, 0);
        long t1 = 0;
        for (int i = 0; i < n; ++i) t1 += b.cohomology.lm(2 * i + 1) + b.cohomology.l1(2 * i);
        long left1 = b.cohomology.l1(2 * n) + 2 * t1;
        long mid1 = d.fixed.h2star(0) + b.h2star_delta;
        CHECK((th3.chain->left == th3.chain->middle) == (left1 == mid1));
        CHECK(th3.chain->left - th3.chain->middle == left1 - mid1);
    }
}

TEST_CASE("M3 blow-up reproduces the chain equality") {
    auto b = blowup_update(m3().cohomology, 27, 0, 0);
    long left1 = b.cohomology.l1(4) + 2 * (1 + b.cohomology.l1(2));
    CHECK(left1 == 108);
    CHECK(27 + b.h2star_delta == 108);
}

TEST_CASE("resolve_weights and check_maintori") {
    auto w = resolve_weights(m5());
    REQUIRE(w.size() == 3);
    for (const auto& v : w) CHECK(v == WeightValue::exact(1));
    auto r = check_maintori(m5());
    CHECK(r.verdict == Verdict::Normal);
    check_chain(r, 14, 14, 8);

    auto k3 = surface(3, prof(3, 4, 0, 6), 6);
    auto s = check_maintori(k3);
    CHECK(s.verdict == Verdict::Normal);
    check_chain(s, 6, 6, 2);

    auto nat = check_maintori(natural3());
    CHECK(nat.verdict == Verdict::Normal);
    check_chain(nat, 9, 9, 6);

    PairData two = m5();
    two.fixed.points[2].weight = WeightValue::exact(2);
    CHECK(error_of([&] { check_maintori(two); }) == Errc::WeightTwoPresent);
    PairData unk = m5();
    unk.fixed.points.push_back(points(5, {1, 2, 2, 4}, 1));
    CHECK(error_of([&] { check_maintori(unk); }) == Errc::WeightUnknown);
}

TEST_CASE("weight_solve") {
    auto s = weight_solve(m5());
    CHECK(s.unique());
    for (const auto& v : s.per_class) CHECK(v == WeightValue::exact(1));

    for (long p : {3L, 5L, 7L}) {
        auto sol = weight_solve(projective(p));
        CHECK(sol.unique());
        CHECK(sol.per_class[0] == WeightValue::exact(1));
    }

    PairData wide = surface(3, prof(3, 10, 0, 4), 2);
    wide.fixed.points = {bare_points(1, "x"), bare_points(1, "y")};
    auto free = weight_solve(wide);
    CHECK(free.solutions == 4);
    CHECK(free.per_class[0] == WeightValue::unknown());
    CHECK(free.per_class[1] == WeightValue::unknown());

    PairData none = m5();
    none.fixed.points[0].weight = WeightValue::exact(0);
    none.fixed.points[1].weight = WeightValue::exact(0);
    CHECK(error_of([&] { weight_solve(none); }) == Errc::Infeasible);
}

TEST_CASE("weight_solve stays inside {0,1,2}") {
    std::mt19937_64 rng(43);
    int solved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        PairData d;
        d.cohomology.p = 5;
        d.cohomology.dim = 2 * static_cast<int>(1 + rng() % 2);
        d.cohomology.odd_vanishes = true;
        for (int k = 2; k < 2 * d.cohomology.dim; k += 2) d.cohomology.profiles[k] = prof(5, testgen::uniform(rng, 0, 9), 0, 1);
        std::size_t classes = 1 + rng() % 4;
        for (std::size_t i = 0; i < classes; ++i) d.fixed.points.push_back(bare_points(testgen::uniform(rng, 1, 6), "c"));
        try {
            auto sol = weight_solve(d);
            ++solved;
            for (const auto& v : sol.per_class) {
                CHECK(v.lo >= 0);
                CHECK(v.hi <= 2);
                CHECK(v.lo <= v.hi);
            }
        } catch (const Error& e) {
            CHECK(e.code() == Errc::Infeasible);
        }
    }
    CHECK(solved > 0);
}

TEST_CASE("check_surface") {
    auto y3 = check_surface(surface(3, prof(3, 4, 0, 6), 6));
    CHECK(y3.verdict == Verdict::Normal);
    CHECK(y3.parity_ok);
    auto y2 = check_surface(surface(2, prof2(6, 0, 8), 8));
    CHECK(y2.verdict == Verdict::Normal);
    CHECK(error_of([] { check_surface(surface(3, prof(3, 4, 0, 6), 7)); }) == Errc::FixedCountMismatch);
    JordanProfile mid(5);
    mid.at(2) = 1;
    mid.at(1) = 2;
    CHECK(error_of([&] { check_surface(surface(5, mid, 4)); }) == Errc::MiddleBlocksPresent);
    CHECK(error_of([] { check_surface(surface(3, prof(3, 4, 1, 6), 7)); }) == Errc::HypothesisFailed);
}

TEST_CASE("betti_quotient") {
    CHECK(betti_quotient(11, 3) == BettiNumbers{11, 0, 102, 126});
    CHECK(betti_quotient(3, 11) == BettiNumbers{3, 0, 26, 34});
    CHECK(betti_quotient(7, 5) == BettiNumbers{7, 0, 60, 76});
    CHECK(error_of([] { betti_quotient(10, 3); }) == Errc::NonIntegralResult);
    CHECK(error_of([] { betti_quotient(7, 2); }) == Errc::UnsupportedPrime);
    CHECK(error_of([] { betti_quotient(7, 23); }) == Errc::UnsupportedPrime);
}

TEST_CASE("betti_quotient integrality sweep") {
    int computed = 0;
    for (long p : {3L, 7L, 11L, 13L, 17L, 19L})
        for (long r = 1; r <= 23; ++r) {
            bool divisible = ((23 - r) * (23 - r)) % (2 * (p - 1)) == 0;
            if (divisible) {
                auto b = betti_quotient(r, p);
                CHECK(b.euler - 2 - 2 * r - b.b4 == 0);
                CHECK(b.b3 == 0);
                ++computed;
            } else {
                CHECK(error_of([&] { betti_quotient(r, p); }) == Errc::NonIntegralResult);
            }
        }
    CHECK(computed > 6);
}

TEST_CASE("propagate_power") {
    auto h4 = check_th3(m3());
    auto h2 = propagate_power(h4, 2, true, true);
    CHECK(h2.verdict == Verdict::Normal);
    CHECK(h2.degree == 2);
    CHECK(propagate_power(h4, 2, false, false).verdict == Verdict::Unknown);
    NormalityReport unk;
    CHECK(propagate_power(unk, 2, true, true).verdict == Verdict::Unknown);
}

TEST_CASE("witness of non-normality") {
    // H^2 of the blow-up: U^3, two swapped copies of E8(-1), delta', Sigma'
    std::size_t n = 24;
    IMat phi = IMat::identity(n);
    for (std::size_t i = 0; i < 8; ++i) {
        phi(6 + i, 6 + i) = 0;
        phi(14 + i, 14 + i) = 0;
        phi(6 + i, 14 + i) = 1;
        phi(14 + i, 6 + i) = 1;
    }
    PairData d;
    d.cohomology.p = 2;
    d.cohomology.dim = 4;
    d.cohomology.profiles[2] = jordan_profile(make_action(2, phi));
    CHECK(*d.cohomology.at(2).l1_plus == 8);
    CHECK(d.cohomology.at(2).count(2) == 8);
    Witness w;
    w.action = phi;
    w.vector = IVec(n);
    w.vector[22] = 1;
    w.vector[23] = 1;
    w.pushforward_divisible = true;
    w.alpha_upper = 1;
    d.witness = w;
    auto r = check_witness(d);
    CHECK(r.verdict == Verdict::NotNormal);
    CHECK(r.alpha_lo == 1);
    CHECK(*r.alpha_hi == 1);
    CHECK(check_normality(d).verdict == Verdict::NotNormal);

    // a norm is not a witness: (e_6 + e_14) = (1 + φ) e_6
    PairData norm = d;
    norm.witness->vector = IVec(n);
    norm.witness->vector[6] = 1;
    norm.witness->vector[14] = 1;
    CHECK(error_of([&] { check_witness(norm); }) == Errc::HypothesisFailed);
    PairData moving = d;
    moving.witness->vector[6] = 1;
    CHECK(error_of([&] { check_witness(moving); }) == Errc::HypothesisFailed);
}

TEST_CASE("auto dispatch") {
    auto y7 = check_normality(surface(7, prof(7, 1, 0, 3), 3));
    CHECK(y7.verdict == Verdict::Normal);
    CHECK(y7.criterion == "simple:l1=1");
    auto y3 = check_normality(surface(3, prof(3, 4, 0, 6), 6));
    CHECK(y3.criterion == "surface");
    CHECK(check_normality(torus()).criterion == "main");
    CHECK(check_normality(m3()).criterion == "th3");
    CHECK(check_normality(m5()).criterion == "maintori");
    auto nat = check_normality(natural3());
    CHECK(nat.criterion == "maintori");
    CHECK_FALSE(nat.notes.empty());
    CHECK(check_normality(m3(), Criterion::Simple).verdict == Verdict::Unknown);
    CHECK(parse_criterion("th3") == Criterion::Th3);
    CHECK(error_of([] { parse_criterion("nope"); }) == Errc::InvalidArgument);
    CHECK(to_string(nat).find("verdict: Normal") != std::string::npos);
}

TEST_CASE("Unknown verdicts carry the alpha bound") {
    PairData d = natural3();
    d.fixed.points = {bare_points(7, "isolated")};
    auto r = check_normality(d);
    CHECK(r.verdict == Verdict::Unknown);
    REQUIRE(r.alpha_hi.has_value());
    CHECK(*r.alpha_hi == 1);
}
