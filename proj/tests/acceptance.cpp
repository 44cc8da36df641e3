// One PASS/FAIL line per acceptance criterion.  With an argument N only
// criterion N runs; the exit status is nonzero when any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "error.hpp"
#include "gmodule.hpp"
#include "hilb2.hpp"
#include "lattice_expr.hpp"
#include "normality.hpp"
#include "quotient.hpp"
#include "scenarios.hpp"
#include "testgen.hpp"
#include "toric.hpp"

using namespace ql;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

const std::vector<Scenario>& catalog() {
    static const std::vector<Scenario> all = load_catalog();
    return all;
}

const Scenario& entry(const std::string& name) {
    for (const auto& s : catalog())
        if (s.name == name) return s;
    fail(Errc::NotFound, "catalog entry " + name);
}

GramLattice lat(const std::string& e) { return parse_lattice_expr(e); }

testgen::BlockCounts random_counts(std::mt19937_64& rng, long p, long max_rank) {
    for (;;) {
        testgen::BlockCounts c;
        c.trivial = static_cast<int>(rng() % 4);
        c.cyclotomic = static_cast<int>(rng() % 3);
        c.glued = static_cast<int>(rng() % 3);
        long r = c.trivial + (p - 1) * c.cyclotomic + p * c.glued;
        if (r >= 1 && r <= max_rank) return c;
    }
}

Outcome surface_table() {
    Outcome o;
    int rows = 0;
    for (const char* name : {"Y2", "Y3", "Y5", "Y7", "Z3", "Z5", "Z7", "Z11", "Z17", "Z19", "Abar"}) {
        const Scenario& s = entry(name);
        GramLattice q = quotient_middle_lattice(*s.invariant, s.pair.p(), s.pair.cohomology.at(2).lp());
        LatticeComparison c = compare_lattices(q, lat(*s.expected.quotient_lattice));
        o.expect(c.pass(), std::string(name) + " comparator");
        std::string tag = name;
        if (tag == "Y3") o.expect(abs(det(q.gram)) == 81, "Y3 |det| = 81");
        if (tag == "Y7" || tag == "Z7") {
            int definite = 0;
            for (const IMat& b : orthogonal_blocks(q.gram)) {
                if (b.rows != 2 || det(b) <= 0) continue;
                o.expect(det(binary_reduce(b)) == 7, tag + " rank-2 block |det| = 7");
                ++definite;
            }
            o.expect(definite == 1, tag + " has one definite rank-2 block");
        }
        if (tag == "Z11") o.expect(q.gram == lat("U").gram, "Z11 quotient is U");
        ++rows;
    }
    o.detail = std::to_string(rows) + " rows";
    return o;
}

Outcome fourfolds() {
    Outcome o;
    struct Row {
        const char* name;
        long fujiki;
    };
    for (const Row& r : {Row{"M3", 9}, Row{"M5", 15}, Row{"M11a", 33}, Row{"M11b", 33}}) {
        const Scenario& s = entry(r.name);
        QuotientResult q = bb_quotient(*s.invariant, s.pair.p(), *s.quotient.glue);
        o.expect(q.lattice.gram == lat(*s.expected.quotient_lattice).gram, std::string(r.name) + " exact Gram");
        o.expect(q.fujiki == r.fujiki, std::string(r.name) + " C = " + std::to_string(r.fujiki));
        o.expect(content(q.lattice.gram) == 1, std::string(r.name) + " indivisible");
    }
    o.detail = "M3 M5 M11a M11b, C = 9 15 33 33";
    return o;
}

Outcome betti_table() {
    Outcome o;
    o.expect(betti_quotient(11, 3) == BettiNumbers{11, 0, 102, 126}, "(11,3)");
    o.expect(betti_quotient(7, 5) == BettiNumbers{7, 0, 60, 76}, "(7,5)");
    o.expect(betti_quotient(3, 11) == BettiNumbers{3, 0, 26, 34}, "(3,11)");
    o.detail = "(11,102,126) (7,60,76) (3,26,34)";
    return o;
}

bool chain_equal(const NormalityReport& r, long v) {
    return r.chain && r.chain->left == v && r.chain->middle == v;
}

Outcome verdicts() {
    Outcome o;
    int normal = 0;
    for (const char* name : {"Y2", "Y3", "Y5", "Y7", "Z3", "Z5", "Z7", "Z11", "Z17", "Z19", "Abar"}) {
        NormalityReport r = check_normality(entry(name).pair);
        o.expect(r.verdict == Verdict::Normal, std::string(name) + " Normal");
        normal += r.verdict == Verdict::Normal;
    }
    NormalityReport m3 = check_normality(entry("M3").pair);
    o.expect(m3.verdict == Verdict::Normal && m3.criterion == "th3" && m3.degree == 4 && chain_equal(m3, 27),
             "M3 Normal in H^4 via th3 with equality 27");
    NormalityReport m5 = check_normality(entry("M5").pair);
    o.expect(m5.verdict == Verdict::Normal && m5.criterion == "maintori" && m5.degree == 4 && chain_equal(m5, 14),
             "M5 Normal in H^4 via the weight chain with equality 14");
    for (const char* name : {"M11a", "M11b"}) {
        NormalityReport r = check_normality(entry(name).pair);
        o.expect(r.verdict == Verdict::Normal && r.criterion == "simple:l1=1",
                 std::string(name) + " Normal via l_1 = 1");
    }
    NormalityReport nat = check_normality(entry("Natural3").pair);
    o.expect(nat.verdict == Verdict::Normal && chain_equal(nat, 9), "natural order 3 Normal with equality 9");
    NormalityReport ce = check_normality(entry("Counterexample").pair);
    o.expect(ce.verdict == Verdict::NotNormal && ce.degree == 2 && ce.alpha_lo == 1 && ce.alpha_hi == 1L,
             "counterexample NotNormal with alpha_2 = 1");
    o.detail = std::to_string(normal) + "/11 surfaces, M3 M5 M11a M11b natural, counterexample";
    return o;
}

Outcome weights() {
    Outcome o;
    int cases = 0;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L})
        for (long q = 1; q < p; ++q) {
            WeightCase a = weight_case_2d(p, q, Compactification::PaperChoice);
            WeightCase b = weight_case_2d(p, q, Compactification::ThreeRays);
            std::string tag = "1/" + std::to_string(p) + "(1," + std::to_string(q) + ")";
            o.expect(a.weight == b.weight, tag + " compactification independence");
            o.expect(weight_dim2(p, q) == WeightValue::exact(1), tag + " weight 1");
            ++cases;
        }
    WeightSolution m5 = weight_solve(entry("M5").pair);
    bool ones = m5.unique();
    for (const auto& w : m5.per_class) ones = ones && w == WeightValue::exact(1);
    o.expect(ones, "M5 weight_solve unique all-ones");
    for (long p : {3L, 5L, 7L}) {
        WeightSolution s = weight_solve(scen::projective(p));
        o.expect(s.unique() && s.per_class.size() == 1 && s.per_class[0] == WeightValue::exact(1),
                 "P^" + std::to_string(p - 1) + " weight_solve all-ones");
    }
    o.detail = std::to_string(cases) + " dimension-2 cases, M5, P^2 P^4 P^6";
    return o;
}

Outcome properties() {
    Outcome o;
    std::mt19937_64 rng(8001);
    int glue = 0;
    while (glue < 500) {
        long p = std::vector<long>{2, 3, 5, 7, 11}[rng() % 5];
        std::size_t n = 1 + rng() % 6;
        std::size_t m = rng() % (n + 1);
        IMat gm = testgen::random_nondegenerate_symmetric(rng, n, -12, 12);
        IMat t = testgen::random_unimodular(rng, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) t(i, j) *= p;
        IMat r = testgen::random_unimodular(rng, n);
        IMat tl = r * t;
        GramLattice l(tl * gm * tl.transpose());
        IMat rinv = to_integer(inverse(r));
        std::vector<IVec> vs;
        for (std::size_t i = 0; i < m; ++i) {
            IVec v = rinv.row(i);
            for (auto& x : v) x += p * testgen::uniform(rng, -2, 2);
            vs.push_back(v);
        }
        Overlattice ov = overlattice_divide(l, vs, p);
        Int pm;
        mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), 2 * m);
        o.expect(abs(det(ov.lattice.gram)) * pm == abs(det(l.gram)) && ov.index * ov.index * abs(det(ov.lattice.gram)) ==
                                                                             abs(det(l.gram)),
                 "(a) overlattice discriminant law");
        ++glue;
    }
    for (int trial = 0; trial < 200; ++trial) {
        long p = std::vector<long>{3, 5, 7, 11}[rng() % 4];
        auto c = random_counts(rng, p, 36);
        auto a = make_action(p, testgen::reiner_action(rng, p, c));
        o.expect(a_invariant(a) == jordan_profile(a).lp() && a_invariant(a) == c.glued, "(b) a_G = l_p");
    }
    for (int trial = 0; trial < 200; ++trial) {
        long p = std::vector<long>{3, 5, 7}[rng() % 3];
        auto c = random_counts(rng, p, 8);
        IMat phi = testgen::reiner_action(rng, p, c);
        auto a = make_action(p, phi, testgen::invariant_form(phi, p));
        o.expect(jordan_profile(sym2_action(a)) == sym2_profile(jordan_profile(a)), "(c) sym2 profile");
    }
    for (int trial = 0; trial < 200; ++trial) {
        long p = std::vector<long>{2, 3, 5, 7}[rng() % 4];
        auto c = random_counts(rng, p, 24);
        auto a = make_action(p, testgen::reiner_action(rng, p, c));
        o.expect(group_cohomology(a, static_cast<int>(rng() % 5)).agree(), "(d) group cohomology");
    }
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        IMat a = testgen::random_matrix(rng, r, c, -20, 20, trial % 3 == 0 ? 0.4 : 0.0);
        Smith s = smith_normal_form(a);
        bool ok = s.U * a * s.V == s.D && abs(det(s.U)) == 1 && abs(det(s.V)) == 1;
        for (std::size_t i = 0; i < s.D.rows; ++i)
            for (std::size_t j = 0; j < s.D.cols; ++j) ok = ok && (i == j || sgn(s.D(i, j)) == 0);
        o.expect(ok, "(e) SNF identity");
    }
    o.detail = "(a) 500 (b) 200 (c) 200 (d) 200 (e) 200";
    return o;
}

Outcome hilb2_suite() {
    Outcome o;
    K3Form k = standard_k3_form();
    o.expect(pair_h4(H4Span::sigma_class(), H4Span::sigma_class(), k) == 1, "sigma.sigma = 1");
    auto basis = s_lattice_basis(k);
    auto block = s_lattice_gram({basis[2], basis[3], basis[6]}, k);
    o.expect(block.gram == from_rows({{12, -2, 1}, {-2, 2, 1}, {1, 1, 1}}), "(delta^2, u1u2, sigma) block");
    auto full = s_lattice_gram(basis, k);
    Int g;
    mpz_gcd_ui(g.get_mpz_t(), full.det.get_mpz_t(), 5);
    o.expect(g == 1, "det coprime to 5");
    std::ostringstream d;
    d << "S-lattice det " << full.det.get_str() << " (stated 48, not asserted)";
    o.detail = d.str();
    return o;
}

Outcome consistency() {
    Outcome o;
    int k3 = 0, parity = 0;
    for (const auto& s : catalog()) {
        if (s.family == "k3") {
            long f = k3_fixed_count(s.pair.cohomology.at(2));
            o.expect(f == *s.expected.fixed_count && f == s.pair.fixed.point_count(), s.name + " #Fix identity");
            ++k3;
        }
        if (s.reference_only || !s.fixed_locus_declared || s.pair.cohomology.profiles.empty()) continue;
        NormalityReport r;
        try {
            r = check_theorem_main(s.pair);
        } catch (const Error& e) {
            if (e.code() == Errc::ConsistencyError) o.expect(false, s.name + ": " + e.what());
            continue;
        }
        long diff = s.pair.cohomology.l1(s.pair.dim()) - s.pair.fixed.h2star(0);
        o.expect(diff % 2 == 0 && r.parity_ok, s.name + " parity");
        ++parity;
    }
    o.expect(k3 == 10, "ten K3 scenarios");
    o.expect(parity > 0, "some scenario passes the type-1 hypotheses");
    o.detail = std::to_string(k3) + " K3 identities, " + std::to_string(parity) + " parity checks";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"surface quotient table", surface_table},
        {"fourfold quotients", fourfolds},
        {"Betti/Euler table", betti_table},
        {"normality verdicts", verdicts},
        {"weight computations", weights},
        {"property suites", properties},
        {"Hilbert square suite", hilb2_suite},
        {"consistency identities", consistency},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all_pass = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<std::size_t>(only) != i + 1) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        all_pass = all_pass && o.pass;
        std::printf("ACCEPTANCE %zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
        std::size_t shown = 0;
        for (const auto& f : o.failures)
            if (shown++ < 10) std::printf("    failed: %s\n", f.c_str());
    }
    return all_pass ? 0 : 1;
}
