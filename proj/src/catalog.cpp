#include "catalog.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "json.hpp"
#include "lattice_expr.hpp"

namespace ql {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string str(const Rat& r) { return r.get_str(); }

std::string str(const Chain& c) {
    return "(" + std::to_string(c.left) + ", " + std::to_string(c.middle) + ", " + std::to_string(c.right) + ")";
}

std::string str(const BettiNumbers& b) {
    return "(" + std::to_string(b.b2) + ", " + std::to_string(b.b3) + ", " + std::to_string(b.b4) + ", " +
           std::to_string(b.euler) + ")";
}

std::string alpha_str(long lo, std::optional<long> hi) {
    return "[" + std::to_string(lo) + ", " + (hi ? std::to_string(*hi) : std::string("?")) + "]";
}

template <class T>
void compare_row(ScenarioReport& r, const std::string& name, const T& got, const T& want, std::string g,
                 std::string w) {
    r.checks.push_back({name, got == want, std::move(g), std::move(w), {}});
}

void lattice_rows(ScenarioReport& r, const GramLattice& got, const Scenario& s) {
    const Expected& e = s.expected;
    r.quotient = summary_string(invariant_summary(got));
    if (!e.quotient_lattice) return;
    GramLattice want = parse_lattice_expr(*e.quotient_lattice);
    LatticeComparison c = compare_lattices(got, want, e.exact);
    std::string detail;
    for (const auto& m : c.mismatches) detail += (detail.empty() ? "" : "; ") + m;
    r.checks.push_back({"quotient", c.pass(), to_string(got.gram), *e.quotient_lattice, detail});
}

void quotient_rows(ScenarioReport& r, const Scenario& s) {
    const QuotientSpec& q = s.quotient;
    long p = s.pair.p();
    if (q.form == QuotientForm::Middle) {
        std::optional<long> lp;
        if (s.pair.cohomology.profiles.count(2)) lp = s.pair.cohomology.at(2).lp();
        lattice_rows(r, quotient_middle_lattice(*s.invariant, p, lp), s);
    } else if (q.form == QuotientForm::BeauvilleBogomolov) {
        GlueSpec glue = q.glue ? *q.glue : auto_glue(*s.invariant, p);
        QuotientResult res = bb_quotient(*s.invariant, p, glue, q.fujiki);
        lattice_rows(r, res.lattice, s);
        r.fujiki = str(res.fujiki);
        r.checks.push_back({"indivisible", content(res.lattice.gram) == 1, content(res.lattice.gram).get_str(), "1",
                            {}});
        if (s.expected.fujiki) compare_row(r, "fujiki", res.fujiki, *s.expected.fujiki, str(res.fujiki), str(*s.expected.fujiki));
    }
}

void normality_rows(ScenarioReport& r, const Scenario& s) {
    const Expected& e = s.expected;
    NormalityReport rep = check_normality(s.pair);
    r.verdict = verdict_name(rep.verdict);
    r.criterion = rep.criterion;
    if (!e.verdict) return;
    compare_row(r, "verdict", rep.verdict, *e.verdict, verdict_name(rep.verdict), verdict_name(*e.verdict));
    if (e.criterion) compare_row(r, "criterion", rep.criterion, *e.criterion, rep.criterion, *e.criterion);
    if (e.degree) compare_row(r, "degree", rep.degree, *e.degree, std::to_string(rep.degree), std::to_string(*e.degree));
    if (e.alpha_lo) {
        bool ok = rep.alpha_lo == *e.alpha_lo && rep.alpha_hi == e.alpha_hi;
        r.checks.push_back({"alpha", ok, alpha_str(rep.alpha_lo, rep.alpha_hi), alpha_str(*e.alpha_lo, e.alpha_hi), {}});
    }
    if (e.chain) {
        bool ok = rep.chain && rep.chain->left == e.chain->left && rep.chain->middle == e.chain->middle &&
                  rep.chain->right == e.chain->right;
        r.checks.push_back({"chain", ok, rep.chain ? str(*rep.chain) : "none", str(*e.chain), {}});
    }
}

// Parity of l_1 in the middle degree against h^{2*}(Fix), whenever the
// type-1 chain applies.
void parity_row(ScenarioReport& r, const Scenario& s) {
    if (!s.fixed_locus_declared) return;
    NormalityReport rep;
    try {
        rep = check_theorem_main(s.pair);
    } catch (const Error& e) {
        if (e.code() == Errc::ConsistencyError) r.checks.push_back({"main-parity", false, "", "", e.what()});
        return;
    }
    long l1 = s.pair.cohomology.l1(s.pair.dim());
    long h = s.pair.fixed.h2star(0);
    bool even = (l1 - h) % 2 == 0;
    r.checks.push_back({"main-parity", even && rep.parity_ok, std::to_string(l1) + " - " + std::to_string(h),
                        "even", {}});
}

void fixed_rows(ScenarioReport& r, const Scenario& s) {
    const Expected& e = s.expected;
    if (!e.fixed_count) return;
    if (s.family == "k3" && s.pair.cohomology.profiles.count(2)) {
        long f = k3_fixed_count(s.pair.cohomology.at(2));
        compare_row(r, "fix-identity", f, *e.fixed_count, std::to_string(f), std::to_string(*e.fixed_count));
    }
    if (s.pair.fixed.finite() && !s.pair.fixed.points.empty()) {
        long n = s.pair.fixed.point_count();
        compare_row(r, "fixed-count", n, *e.fixed_count, std::to_string(n), std::to_string(*e.fixed_count));
    }
}

void weight_rows(ScenarioReport& r, const Scenario& s) {
    if (!s.expected.weights) return;
    WeightSolution sol = weight_solve(s.pair);
    std::vector<long> got;
    bool exact = true;
    for (const auto& w : sol.per_class) {
        exact = exact && w.known();
        got.push_back(w.lo);
    }
    auto join = [](const std::vector<long>& v) {
        std::string out;
        for (long x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
        return out;
    };
    bool ok = sol.unique() && exact && got == *s.expected.weights;
    r.checks.push_back({"weights", ok, join(got) + " (" + std::to_string(sol.solutions) + " solutions)",
                        join(*s.expected.weights) + " (unique)", {}});
}

template <class F>
void guarded(ScenarioReport& r, const char* stage, F&& f) {
    try {
        f();
    } catch (const Error& e) {
        r.checks.push_back({stage, false, std::string("error ") + errc_name(e.code()), "", e.what()});
    } catch (const std::exception& e) {
        r.checks.push_back({stage, false, "error", "", e.what()});
    }
}

}  // namespace

bool ScenarioReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRow& c) { return c.pass; });
}

const CheckRow* ScenarioReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

std::string summary_string(const InvariantSummary& s) {
    return "rk " + std::to_string(s.rank) + ", |det| " + Int(abs(s.det)).get_str() + ", sig (" +
           std::to_string(s.signature.pos) + "," + std::to_string(s.signature.neg) + "), A " + s.discriminant.str();
}

long k3_fixed_count(const JordanProfile& h2) {
    if (h2.p == 2) return 2 + h2.l1();
    return 2 + h2.l1() + h2.lm();
}

ScenarioReport verify_scenario(const Scenario& s) {
    ScenarioReport r;
    r.name = s.name;
    r.p = s.pair.p();
    r.dim = s.pair.dim();
    r.reference_only = s.reference_only;
    if (s.reference_only) {
        // carried as data; only the recorded lattice is validated
        guarded(r, "reference", [&] {
            std::string want = s.expected.quotient_lattice.value_or("");
            GramLattice l = parse_lattice_expr(want);
            r.quotient = summary_string(invariant_summary(l));
            if (s.expected.fujiki) r.fujiki = str(*s.expected.fujiki);
            r.checks.push_back({"reference", true, "not recomputed", want, "reference data"});
        });
        return r;
    }
    if (s.quotient.form != QuotientForm::None) guarded(r, "quotient", [&] { quotient_rows(r, s); });
    if (s.expected.betti) {
        guarded(r, "betti", [&] {
            BettiNumbers b = betti_quotient(static_cast<long>(s.invariant->rank()), s.pair.p());
            compare_row(r, "betti", b, *s.expected.betti, str(b), str(*s.expected.betti));
        });
    }
    if (!s.pair.cohomology.profiles.empty()) {
        guarded(r, "normality", [&] { normality_rows(r, s); });
        guarded(r, "main-parity", [&] { parity_row(r, s); });
    }
    guarded(r, "fixed-count", [&] { fixed_rows(r, s); });
    guarded(r, "weights", [&] { weight_rows(r, s); });
    return r;
}

std::vector<Scenario> filter_catalog(const std::vector<Scenario>& all, const std::string& filter) {
    if (filter.empty()) return all;
    std::string f = lower(filter);
    std::vector<Scenario> out;
    for (const auto& s : all) {
        bool hit = lower(s.name).find(f) != std::string::npos;
        for (const auto& a : s.aliases) hit = hit || lower(a).find(f) != std::string::npos;
        if (hit) out.push_back(s);
    }
    return out;
}

std::vector<ScenarioReport> verify_all(const std::vector<Scenario>& scenarios, unsigned threads) {
    std::vector<ScenarioReport> out(scenarios.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, scenarios.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < scenarios.size(); i = next++) out[i] = verify_scenario(scenarios[i]);
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    return out;
}

std::string render_table(const std::vector<ScenarioReport>& reports) {
    std::vector<std::vector<std::string>> rows{{"name", "p", "dim", "quotient", "C", "verdict", "criterion", "checks",
                                                "result"}};
    for (const auto& r : reports) {
        std::size_t ok = static_cast<std::size_t>(
            std::count_if(r.checks.begin(), r.checks.end(), [](const CheckRow& c) { return c.pass; }));
        rows.push_back({r.name, std::to_string(r.p), std::to_string(r.dim), r.quotient.empty() ? "-" : r.quotient,
                        r.fujiki.empty() ? "-" : r.fujiki, r.verdict.empty() ? "-" : r.verdict,
                        r.criterion.empty() ? "-" : r.criterion,
                        std::to_string(ok) + "/" + std::to_string(r.checks.size()),
                        r.reference_only ? "REF" : (r.pass() ? "PASS" : "FAIL")});
    }
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    std::ostringstream os;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << line << '\n';
    }
    std::size_t failed = 0;
    for (const auto& r : reports) {
        if (r.pass()) continue;
        ++failed;
        for (const auto& c : r.checks)
            if (!c.pass)
                os << "  " << r.name << " " << c.name << ": got " << c.got << ", want " << c.want
                   << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
    }
    os << reports.size() << " scenarios, " << failed << " failed\n";
    return os.str();
}

std::string render_json(const std::vector<ScenarioReport>& reports) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::size_t failed = 0;
    for (const auto& r : reports) {
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"got", c.got}, {"want", c.want}, {"detail", c.detail}});
        failed += r.pass() ? 0 : 1;
        rows.push_back({{"name", r.name},
                        {"prime", r.p},
                        {"dimension", r.dim},
                        {"reference_only", r.reference_only},
                        {"quotient", r.quotient},
                        {"fujiki", r.fujiki},
                        {"verdict", r.verdict},
                        {"criterion", r.criterion},
                        {"pass", r.pass()},
                        {"checks", checks}});
    }
    nlohmann::ordered_json doc = {{"scenarios", rows}, {"total", reports.size()}, {"failed", failed}};
    return doc.dump(2) + "\n";
}

}  // namespace ql
