#include "normality.hpp"

#include <algorithm>
#include <sstream>

#include "lattice.hpp"
#include "toric.hpp"

namespace ql {

namespace {

constexpr long kMaxPrime = 19;

bool prime_in_range(long p, long lo) { return p >= lo && p <= kMaxPrime && is_prime(p); }

void add(NormalityReport& r, std::string name, bool holds, std::string detail = {},
         Errc code = Errc::HypothesisFailed) {
    r.hypotheses.push_back(HypothesisCheck{std::move(name), holds, std::move(detail), code});
}

[[noreturn]] void raise(const HypothesisCheck& h) {
    fail(h.code, h.name + (h.detail.empty() ? "" : ": " + h.detail));
}

NormalityReport enforce(NormalityReport r) {
    if (const auto* h = r.first_failure()) raise(*h);
    return r;
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
}

// T = Σ_{i<n} l_{p-1}^{2i+1} + Σ_{i<n} l_1^{2i}
long torsion_sum(const CohomologyProfile& cp, int n) {
    long t = 0;
    for (int i = 0; i < n; ++i) t += cp.lm(2 * i + 1) + cp.l1(2 * i);
    return t;
}

void vanishing_hypotheses(NormalityReport& r, const CohomologyProfile& cp, int n) {
    std::vector<std::string> bad;
    for (int k = 1; k <= n; ++k)
        if (cp.lm(2 * k) != 0) bad.push_back("degree " + std::to_string(2 * k));
    add(r, cp.p == 2 ? "l_{1,-}^{2k} = 0 for 1 <= k <= n" : "l_{p-1}^{2k} = 0 for 1 <= k <= n", bad.empty(),
        join(bad));
    bad.clear();
    if (n > 1)
        for (int k = 0; k < n; ++k)
            if (cp.l1(2 * k + 1) != 0) bad.push_back("degree " + std::to_string(2 * k + 1));
    add(r, cp.p == 2 ? "l_{1,+}^{2k+1} = 0 for 0 <= k < n" : "l_1^{2k+1} = 0 for 0 <= k < n", bad.empty(),
        n > 1 ? join(bad) : "vacuous for n = 1");
}

struct Negligibility {
    bool negligible = false;
    bool almost = false;
    std::string detail;
};

Negligibility negligibility(const FixedLocus& f, int N) {
    Negligibility out;
    bool tf = std::all_of(f.components.begin(), f.components.end(), [](const auto& c) { return c.torsion_free; });
    int min_codim = f.points.empty() ? N + 1 : N;
    for (const auto& c : f.components) min_codim = std::min(min_codim, N - c.dim);
    if (f.points.empty() && f.components.empty()) {
        out.negligible = true;
        out.detail = "empty";
        return out;
    }
    if (!tf) {
        out.detail = "cohomology of the fixed locus has torsion";
        return out;
    }
    out.negligible = 2 * min_codim >= N + 2;
    if (out.negligible) {
        out.detail = "codim " + std::to_string(min_codim);
        return out;
    }
    if (N % 2 != 0 || N < 4 || 2 * min_codim != N) {
        out.detail = "codim " + std::to_string(min_codim) + " is too small";
        return out;
    }
    std::vector<const FixedComponent*> middle;
    long middle_count = 0;
    for (const auto& c : f.components)
        if (2 * c.dim == N) {
            middle.push_back(&c);
            middle_count += c.multiplicity;
        }
    if (middle_count != 1) {
        out.detail = "half-dimensional part is not connected";
        return out;
    }
    const auto& s = *middle.front();
    if (!s.connected || !s.simply_connected) {
        out.detail = "half-dimensional component " + s.label + " is not connected and simply connected";
        return out;
    }
    if (!s.primitive_class) {
        out.detail = "class of " + s.label + " is not primitive";
        return out;
    }
    out.almost = true;
    out.detail = "almost negligible via " + s.label;
    return out;
}

// All points of Fix G are type 1; p = 2 forces it away from codimension 1.
bool all_type_one(const PairData& d, std::string& detail) {
    std::vector<std::string> bad;
    int N = d.dim();
    for (const auto& pc : d.fixed.points) {
        if (d.p() == 2) continue;
        if (!pc.local)
            bad.push_back(pc.label + " (exponents not declared)");
        else if (classify_fixed_point(*pc.local).type != PointType::One)
            bad.push_back(pc.label == pc.local->str() ? pc.label : pc.label + " " + pc.local->str());
    }
    for (const auto& c : d.fixed.components) {
        if (d.p() == 2) {
            if (N - c.dim < 2) bad.push_back(c.label + " (codimension 1)");
            continue;
        }
        if (!c.normal)
            bad.push_back(c.label + " (normal exponents not declared)");
        else if (classify_fixed_point(*c.normal).type != PointType::One)
            bad.push_back(c.label + " " + c.normal->str());
    }
    detail = join(bad);
    return bad.empty();
}

void set_alpha(NormalityReport& r, const CohomologyProfile& cp) {
    if (r.verdict == Verdict::Normal) {
        r.alpha_lo = 0;
        r.alpha_hi = 0;
        return;
    }
    if (r.verdict == Verdict::NotNormal) return;
    r.alpha_lo = 0;
    r.alpha_hi.reset();
    if (r.degree != cp.dim) return;
    try {
        r.alpha_hi = pushforward_discriminant(cp, r.degree).alpha_upper;
    } catch (const Error&) {
    }
}

// Chain evaluation shared by the three chain theorems.
void conclude_chain(NormalityReport& r, const CohomologyProfile& cp, long l1n, long middle, Chain c) {
    r.chain = c;
    r.parity_ok = (l1n - middle) % 2 == 0;
    if (!r.parity_ok) {
        r.verdict = Verdict::Unknown;
        r.notes.push_back("parity fails: the declared data are inconsistent with the hypotheses");
    } else {
        if (c.left < c.right)
            fail(Errc::ConsistencyError, r.criterion + " chain has left " + std::to_string(c.left) + " < right " +
                                             std::to_string(c.right) + ": the declared data contradict the theorem");
        if (!c.ordered()) {
            r.verdict = Verdict::Unknown;
            r.notes.push_back("middle term " + std::to_string(c.middle) + " lies outside [" + std::to_string(c.right) +
                              ", " + std::to_string(c.left) + "]: the declared data are inconsistent");
        } else {
            r.verdict = c.left == c.middle ? Verdict::Normal : Verdict::Unknown;
        }
    }
    set_alpha(r, cp);
}

NormalityReport eval_main(const PairData& d) {
    const auto& cp = d.cohomology;
    int N = d.dim();
    NormalityReport r;
    r.criterion = "main";
    r.degree = N;
    add(r, "H^*(X) torsion-free", cp.torsion_free);
    add(r, "2 <= p <= 19", prime_in_range(cp.p, 2), "p = " + std::to_string(cp.p));
    Negligibility neg = negligibility(d.fixed, N);
    if (N % 2 == 0)
        add(r, "Fix G negligible or almost negligible", neg.negligible || neg.almost, neg.detail);
    else
        add(r, "Fix G negligible", neg.negligible, neg.detail);
    std::string detail;
    bool t1 = all_type_one(d, detail);
    add(r, "all points of Fix G of type 1", t1, detail);
    if (N % 2 == 0) {
        if (r.hypotheses_hold()) vanishing_hypotheses(r, cp, N / 2);
    } else {
        add(r, "E2-degenerate", d.e2_degenerate);
        add(r, "rktor H^n of the resolution declared", d.rktor_resolution.has_value());
    }
    if (!r.hypotheses_hold()) {
        set_alpha(r, cp);
        return r;
    }
    if (N % 2 == 0) {
        int n = N / 2;
        long t = torsion_sum(cp, n);
        long l1n = cp.l1(N);
        long mid = d.fixed.h2star(0);
        conclude_chain(r, cp, l1n, mid, Chain{l1n + 2 * t, mid, 2 * t});
    } else {
        int m = (N - 1) / 2;
        long tu = 0;
        for (int i = 0; i <= m; ++i) tu += cp.lm(2 * i);
        for (int i = 0; i < m; ++i) tu += cp.l1(2 * i + 1);
        long l1n = cp.l1(N);
        long odd = d.fixed.h2star(1);
        long mid = odd + 2 * *d.rktor_resolution;
        r.chain = Chain{l1n + 2 * tu, mid, 2 * tu};
        // parity is on l_1^n - h^{2*+1}(Fix G)
        conclude_chain(r, cp, l1n, odd, *r.chain);
    }
    return r;
}

bool all_equal_run(const std::vector<long>& k, std::size_t from, std::size_t count, long v) {
    if (from + count > k.size()) return false;
    for (std::size_t i = from; i < from + count; ++i)
        if (k[i] != v) return false;
    return true;
}

// Sorted exponents made of `zeros` zeros, `ones` ones and `twos` twos.
bool pattern(const FixedPointLocal& fp, std::size_t zeros, std::size_t ones, std::size_t twos) {
    return fp.k.size() == zeros + ones + twos && all_equal_run(fp.k, 0, zeros, 0) &&
           all_equal_run(fp.k, zeros, ones, 1) && all_equal_run(fp.k, zeros + ones, twos, 2);
}

NormalityReport eval_th3(const PairData& d) {
    const auto& cp = d.cohomology;
    int N = d.dim();
    NormalityReport r;
    r.criterion = "th3";
    r.degree = N;
    add(r, "p = 3", cp.p == 3, "p = " + std::to_string(cp.p), Errc::NotOrder3);
    add(r, "even dimension", N % 2 == 0, "dimension " + std::to_string(N));
    add(r, "H^*(X) torsion-free", cp.torsion_free);
    StabilityData st;
    if (r.hypotheses_hold()) {
        try {
            st = stability(d);
            add(r, "Fix G stable", true, st.detail);
        } catch (const Error& e) {
            if (e.code() != Errc::NotStable) throw;
            add(r, "Fix G stable", false, e.what(), Errc::NotStable);
        }
    }
    if (r.hypotheses_hold()) vanishing_hypotheses(r, cp, N / 2);
    if (!r.hypotheses_hold()) {
        set_alpha(r, cp);
        return r;
    }
    int n = N / 2;
    long t = torsion_sum(cp, n);
    long l1n = cp.l1(N);
    long mid = d.fixed.h2star(0);
    r.notes.push_back("n2 = " + std::to_string(st.n2) + ", eps = " + std::to_string(st.eps) +
                      ", eta = " + std::to_string(st.eta));
    conclude_chain(r, cp, l1n, mid, Chain{l1n + 2 * t, mid, 2 * t - (st.n2 + st.eps + 2 * st.eta)});
    return r;
}

NormalityReport eval_maintori(const PairData& d) {
    const auto& cp = d.cohomology;
    int N = d.dim();
    NormalityReport r;
    r.criterion = "maintori";
    r.degree = N;
    add(r, "H^*(X) torsion-free", cp.torsion_free);
    add(r, "2 <= p <= 19", prime_in_range(cp.p, 2), "p = " + std::to_string(cp.p));
    add(r, "even dimension", N % 2 == 0, "dimension " + std::to_string(N));
    add(r, "Fix G finite", d.fixed.finite(),
        d.fixed.finite() ? "" : std::to_string(d.fixed.components.size()) + " positive-dimensional components");
    if (!r.hypotheses_hold()) {
        set_alpha(r, cp);
        return r;
    }
    auto w = resolve_weights(d);
    std::vector<std::string> unknown, two;
    long sum = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& pc = d.fixed.points[i];
        std::string name = pc.label.empty() ? (pc.local ? pc.local->str() : "class " + std::to_string(i)) : pc.label;
        if (!w[i].known())
            unknown.push_back(name);
        else if (w[i].lo == 2)
            two.push_back(name);
        else
            sum += pc.multiplicity * w[i].lo;
    }
    add(r, "all weights known", unknown.empty(), join(unknown), Errc::WeightUnknown);
    add(r, "no point of weight 2", two.empty(), join(two), Errc::WeightTwoPresent);
    if (r.hypotheses_hold()) vanishing_hypotheses(r, cp, N / 2);
    if (!r.hypotheses_hold()) {
        set_alpha(r, cp);
        return r;
    }
    int n = N / 2;
    long t = torsion_sum(cp, n);
    long l1n = cp.l1(N);
    conclude_chain(r, cp, l1n, sum, Chain{l1n + 2 * t, sum, 2 * t});
    return r;
}

NormalityReport eval_surface(const PairData& d) {
    const auto& cp = d.cohomology;
    NormalityReport r;
    r.criterion = "surface";
    r.degree = 2;
    add(r, "simply connected", d.simply_connected);
    add(r, "complex dimension 2", d.dim() == 2, "dimension " + std::to_string(d.dim()));
    add(r, "2 <= p <= 19", prime_in_range(cp.p, 2), "p = " + std::to_string(cp.p));
    long count = d.fixed.point_count();
    add(r, "Fix G finite and nonempty", d.fixed.finite() && count > 0,
        "#Fix = " + std::to_string(count) + ", " + std::to_string(d.fixed.components.size()) + " components");
    if (!r.hypotheses_hold()) {
        set_alpha(r, cp);
        return r;
    }
    JordanProfile h2 = cp.at(2);
    if (h2.middle_blocks()) {
        add(r, "no middle Jordan blocks", false, h2.str(), Errc::MiddleBlocksPresent);
        set_alpha(r, cp);
        return r;
    }
    long lm = h2.lm(), l1 = h2.l1();
    add(r, cp.p == 2 ? "l_{1,-}^2 = 0" : "l_{p-1}^2 = 0", lm == 0, "value " + std::to_string(lm));
    long expected = cp.p == 2 ? 2 + h2.count(1) : 2 + l1 + lm;
    add(r, "#Fix = 2 + l_1^2 + l_{p-1}^2", expected == count,
        "expected " + std::to_string(expected) + ", declared " + std::to_string(count), Errc::FixedCountMismatch);
    if (!r.hypotheses_hold()) {
        set_alpha(r, cp);
        return r;
    }
    // every isolated point of a surface has weight 1; H^1 = 0
    r.chain = Chain{l1 + 2, count, 2};
    r.parity_ok = (l1 - count) % 2 == 0;
    r.verdict = Verdict::Normal;
    set_alpha(r, cp);
    return r;
}

NormalityReport eval_witness(const PairData& d) {
    const auto& cp = d.cohomology;
    NormalityReport r;
    r.criterion = "witness";
    add(r, "witness present", d.witness.has_value());
    if (!d.witness) return r;
    const Witness& w = *d.witness;
    r.degree = w.degree;
    bool order_ok = true;
    std::string order_detail;
    try {
        make_action(cp.p, w.action);
    } catch (const Error& e) {
        order_ok = false;
        order_detail = e.what();
    }
    add(r, "action of order p", order_ok, order_detail);
    bool shape = w.action.square() && w.vector.size() == w.action.rows;
    add(r, "witness dimensions agree", shape);
    if (!r.hypotheses_hold()) return r;
    add(r, "witness is invariant", mul_vec(w.action, w.vector) == w.vector);
    // norm map σ = 1 + φ + ... + φ^{p-1}
    IMat sigma = IMat::identity(w.action.rows), power = IMat::identity(w.action.rows);
    for (long i = 1; i < cp.p; ++i) {
        power = w.action * power;
        sigma = sigma + power;
    }
    Smith s = smith_normal_form(sigma);
    IVec uv = mul_vec(s.U, w.vector);
    bool is_norm = true;
    for (std::size_t i = 0; i < uv.size(); ++i) {
        if (i < s.diag.size()) {
            if (!mpz_divisible_p(uv[i].get_mpz_t(), s.diag[i].get_mpz_t())) is_norm = false;
        } else if (sgn(uv[i]) != 0) {
            is_norm = false;
        }
    }
    add(r, "witness is not a norm y + φy + ... + φ^{p-1}y", !is_norm);
    add(r, "π_*(witness) divisible by p (declared)", w.pushforward_divisible);
    if (!r.hypotheses_hold()) return r;
    r.verdict = Verdict::NotNormal;
    r.alpha_lo = 1;
    if (w.alpha_upper) {
        r.alpha_hi = *w.alpha_upper;
        r.notes.push_back("upper bound for alpha is declared");
    } else if (w.degree == cp.dim) {
        try {
            r.alpha_hi = pushforward_discriminant(cp, w.degree).alpha_upper;
        } catch (const Error&) {
        }
    }
    if (!w.note.empty()) r.notes.push_back(w.note);
    return r;
}

}  // namespace

long FixedLocus::point_count() const {
    long n = 0;
    for (const auto& p : points) n += p.multiplicity;
    return n;
}

long FixedLocus::h2star(int eps) const {
    long h = eps == 0 ? point_count() : 0;
    for (const auto& c : components) h += c.multiplicity * (eps == 0 ? c.even_betti : c.odd_betti);
    return h;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Normal: return "Normal";
        case Verdict::NotNormal: return "NotNormal";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::Auto: return "auto";
        case Criterion::Simple: return "simple";
        case Criterion::Surface: return "surface";
        case Criterion::Main: return "main";
        case Criterion::Th3: return "th3";
        case Criterion::Maintori: return "maintori";
        case Criterion::Witness: return "witness";
    }
    return "?";
}

Criterion parse_criterion(const std::string& s) {
    for (auto c : {Criterion::Auto, Criterion::Simple, Criterion::Surface, Criterion::Main, Criterion::Th3,
                   Criterion::Maintori, Criterion::Witness})
        if (s == criterion_name(c)) return c;
    fail(Errc::InvalidArgument, "unknown criterion '" + s + "'");
}

bool NormalityReport::hypotheses_hold() const { return first_failure() == nullptr; }

const HypothesisCheck* NormalityReport::first_failure() const {
    for (const auto& h : hypotheses)
        if (!h.holds) return &h;
    return nullptr;
}

PushforwardDiscriminant pushforward_discriminant(const CohomologyProfile& cp, int n) {
    if (!cp.torsion_free) fail(Errc::TorsionPresent, "H^*(X) has torsion");
    if (!prime_in_range(cp.p, 2)) fail(Errc::UnsupportedPrime, "needs a prime 2 <= p <= 19");
    long l = cp.l1(n);
    return {l, l / 2};
}

NormalityReport check_simple_criteria(const CohomologyProfile& cp, int k) {
    NormalityReport r;
    r.criterion = "simple";
    r.degree = k;
    add(r, "H^*(X) torsion-free", cp.torsion_free);
    add(r, "2 <= p <= 19", prime_in_range(cp.p, 2), "p = " + std::to_string(cp.p));
    if (r.hypotheses_hold()) {
        long l1 = cp.l1(k);
        std::string name = cp.p == 2 ? "l_{1,+}" : "l_1";
        if (l1 == 0) {
            r.verdict = Verdict::Normal;
            r.criterion = "simple:l1=0";
            r.notes.push_back(name + "^" + std::to_string(k) + " = 0");
        } else if (k == cp.dim && l1 == 1) {
            r.verdict = Verdict::Normal;
            r.criterion = "simple:l1=1";
            r.notes.push_back(name + "^" + std::to_string(k) + " = 1 in the middle degree");
        } else {
            r.notes.push_back(name + "^" + std::to_string(k) + " = " + std::to_string(l1) + ": no simple criterion applies");
        }
    }
    set_alpha(r, cp);
    return r;
}

NormalityReport check_theorem_main(const PairData& d) { return enforce(eval_main(d)); }

BlowupResult blowup_update(const CohomologyProfile& cp, long n2, long eps, long eta) {
    if (cp.p != 3) fail(Errc::NotOrder3, "blow-up update needs p = 3");
    if (cp.dim % 2 != 0 || cp.dim < 2) fail(Errc::InvalidArgument, "blow-up update needs even dimension");
    if (n2 < 0 || eps < 0 || eps > 1 || eta < 0 || eta > 1) fail(Errc::InvalidArgument, "need n2 >= 0, eps and eta in {0,1}");
    long n = cp.dim / 2;
    BlowupResult out;
    out.cohomology = cp;
    for (long j = 1; j <= 2 * n - 1; ++j) {
        long gain = (j == 1 || j == 2 * n - 1) ? n2 + eps + eta : n2 + eps + 2 * eta;
        int deg = static_cast<int>(2 * j);
        JordanProfile jp = cp.at(deg);
        jp.at(1) += gain;
        out.cohomology.profiles[deg] = jp;
    }
    out.h2star_delta = (2 * n - 1) * n2 + (2 * n - 1) * eps + 4 * (n - 1) * eta;
    return out;
}

StabilityData stability(const PairData& d) {
    if (d.p() != 3) fail(Errc::NotOrder3, "stability is defined for p = 3");
    int N = d.dim();
    if (N % 2 != 0) fail(Errc::NotStable, "odd dimension");
    std::size_t n = static_cast<std::size_t>(N / 2);
    StabilityData st;
    FixedLocus f1;
    for (const auto& pc : d.fixed.points) {
        if (!pc.local) fail(Errc::NotStable, "exponents of " + pc.label + " not declared");
        const auto& fp = *pc.local;
        auto t = classify_fixed_point(fp).type;
        if (t == PointType::One) {
            f1.points.push_back(pc);
        } else if (pattern(fp, 0, n, n)) {
            st.n2 += pc.multiplicity;
        } else if (n >= 4 && (pattern(fp, 0, n + 1, n - 1) || pattern(fp, 0, n - 1, n + 1))) {
            st.eps += pc.multiplicity;
        } else {
            fail(Errc::NotStable, "type-2 point " + fp.str() + " is neither stable nor almost stable");
        }
    }
    for (const auto& c : d.fixed.components) {
        if (!c.normal) fail(Errc::NotStable, "normal exponents of " + c.label + " not declared");
        const auto& fp = *c.normal;
        auto t = classify_fixed_point(fp).type;
        if (t == PointType::One) {
            f1.components.push_back(c);
        } else if (t == PointType::Two && c.dim == 1 && n >= 4 && c.simply_connected &&
                   (pattern(fp, 1, n - 1, n) || pattern(fp, 1, n, n - 1))) {
            st.eta += c.multiplicity;
        } else {
            fail(Errc::NotStable, "component " + c.label + " " + fp.str() + " is not allowed in a stable locus");
        }
    }
    if (st.eps + st.eta > 1) fail(Errc::NotStable, "more than one almost stable point or curve");
    Negligibility neg = negligibility(f1, N);
    if (st.eps + st.eta == 0) {
        if (!neg.negligible && !neg.almost)
            fail(Errc::NotStable, "type-1 part is neither negligible nor almost negligible: " + neg.detail);
    } else if (!neg.negligible) {
        fail(Errc::NotStable, "an almost stable member needs a negligible type-1 part: " + neg.detail);
    }
    st.detail = "type-1 part " + std::string(neg.negligible ? "negligible" : "almost negligible") + ", " +
                std::to_string(st.n2) + " stable type-2 points";
    return st;
}

NormalityReport check_th3(const PairData& d) { return enforce(eval_th3(d)); }

std::vector<WeightValue> resolve_weights(const PairData& d) {
    std::vector<WeightValue> out;
    int N = d.dim();
    for (const auto& pc : d.fixed.points) {
        WeightValue w = WeightValue::unknown();
        if (pc.weight) {
            w = *pc.weight;
        } else if (pc.local) {
            auto t = classify_fixed_point(*pc.local).type;
            // type-based values hold on Kähler manifolds only
            bool type_rule = N != 2 && (t == PointType::One || t == PointType::Two);
            if (!type_rule || d.kahler) w = weight_lookup(*pc.local);
        }
        if (!w.known() && !pc.weight && N == 2) w = WeightValue::exact(1);
        // for p = 3 every isolated point is of type 1 or 2
        if (!w.known() && !pc.weight && d.p() == 3 && N % 2 == 0 && d.kahler) w = WeightValue::exact(1);
        out.push_back(w);
    }
    return out;
}

NormalityReport check_maintori(const PairData& d) { return enforce(eval_maintori(d)); }

WeightSolution weight_solve(const PairData& d, bool use_lookup) {
    const auto& cp = d.cohomology;
    int N = d.dim();
    NormalityReport r;
    add(r, "H^*(X) torsion-free", cp.torsion_free);
    add(r, "2 <= p <= 19", prime_in_range(cp.p, 2));
    add(r, "even dimension", N % 2 == 0);
    add(r, "Fix G finite", d.fixed.finite());
    if (r.hypotheses_hold()) vanishing_hypotheses(r, cp, N / 2);
    enforce(r);

    std::vector<WeightValue> fixed;
    if (use_lookup) {
        fixed = resolve_weights(d);
    } else {
        for (const auto& pc : d.fixed.points) fixed.push_back(pc.weight.value_or(WeightValue::unknown()));
    }
    std::vector<std::size_t> free_idx;
    long base = 0;
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (fixed[i].known())
            base += d.fixed.points[i].multiplicity * fixed[i].lo;
        else
            free_idx.push_back(i);
    }
    if (free_idx.size() > 16) fail(Errc::InvalidArgument, "too many unknown weight classes");

    int n = N / 2;
    long t = torsion_sum(cp, n);
    long l1n = cp.l1(N);
    long left = l1n + 2 * t, right = 2 * t;

    WeightSolution sol;
    sol.per_class = fixed;
    std::vector<int> lo(fixed.size(), 3), hi(fixed.size(), -1);
    std::vector<int> w(free_idx.size(), 0);
    for (;;) {
        // range of each unknown: restricted to its declared interval
        bool in_range = true;
        long sum = base;
        for (std::size_t j = 0; j < free_idx.size(); ++j) {
            const auto& iv = fixed[free_idx[j]];
            if (w[j] < iv.lo || w[j] > iv.hi) in_range = false;
            sum += d.fixed.points[free_idx[j]].multiplicity * w[j];
        }
        if (in_range && (l1n - sum) % 2 == 0 && sum <= left && sum >= right) {
            ++sol.solutions;
            for (std::size_t j = 0; j < free_idx.size(); ++j) {
                lo[free_idx[j]] = std::min(lo[free_idx[j]], w[j]);
                hi[free_idx[j]] = std::max(hi[free_idx[j]], w[j]);
            }
        }
        std::size_t j = 0;
        while (j < w.size() && w[j] == 2) w[j++] = 0;
        if (j == w.size()) break;
        ++w[j];
    }
    if (sol.solutions == 0) fail(Errc::Infeasible, "no weight assignment satisfies parity and the chain bounds");
    for (std::size_t i : free_idx) sol.per_class[i] = WeightValue{lo[i], hi[i]};
    return sol;
}

NormalityReport check_surface(const PairData& d) { return enforce(eval_surface(d)); }

NormalityReport check_witness(const PairData& d) { return enforce(eval_witness(d)); }

BettiNumbers betti_quotient(long r, long p) {
    if (!prime_in_range(p, 3)) fail(Errc::UnsupportedPrime, "needs a prime 3 <= p <= 19");
    if (r < 0 || r > 23) fail(Errc::InvalidArgument, "invariant rank must lie in [0, 23]");
    BettiNumbers b;
    b.b2 = r;
    if (p == 5) {
        if ((23 - r) % 4 != 0) fail(Errc::NonIntegralResult, "23 - r is not divisible by 4");
        long l5 = (23 - r) / 4, l1 = r - l5;
        if (l1 < 0) fail(Errc::NonIntegralResult, "negative l_1");
        long l1_4 = l1 * (l1 + 1) / 2;
        if ((276 - l1_4) % 5 != 0 || l1_4 > 276) fail(Errc::NonIntegralResult, "276 - l_1^4 is not divisible by 5");
        b.b4 = l1_4 + (276 - l1_4) / 5;
    } else {
        long num = (23 - r) * (23 - r), den = 2 * (p - 1);
        if (num % den != 0 || (r * (r + 1)) % 2 != 0)
            fail(Errc::NonIntegralResult, "(23 - r)^2 is not divisible by 2(p - 1)");
        b.b4 = r * (r + 1) / 2 + num / den;
    }
    b.euler = 2 + 2 * r + b.b4;
    return b;
}

NormalityReport propagate_power(const NormalityReport& report_kt, int k, bool sym_injective,
                                bool complement_stable) {
    NormalityReport r;
    r.criterion = "power";
    r.degree = k;
    add(r, "normal in degree " + std::to_string(report_kt.degree), report_kt.verdict == Verdict::Normal,
        verdict_name(report_kt.verdict));
    add(r, "symmetric power map injective mod p", sym_injective);
    add(r, "image has a G-stable complement", complement_stable);
    if (r.hypotheses_hold()) {
        r.verdict = Verdict::Normal;
        r.alpha_hi = 0;
    }
    return r;
}

NormalityReport check_normality(const PairData& d, Criterion c) {
    switch (c) {
        case Criterion::Simple: return check_simple_criteria(d.cohomology, d.dim());
        case Criterion::Surface: return check_surface(d);
        case Criterion::Main: return check_theorem_main(d);
        case Criterion::Th3: return check_th3(d);
        case Criterion::Maintori: return check_maintori(d);
        case Criterion::Witness: return check_witness(d);
        case Criterion::Auto: break;
    }
    std::vector<std::string> tried;
    std::optional<NormalityReport> fallback;
    auto attempt = [&](const char* name, auto&& fn) -> std::optional<NormalityReport> {
        try {
            NormalityReport r = fn();
            if (r.verdict != Verdict::Unknown) return r;
            if (const auto* h = r.first_failure())
                tried.push_back(std::string(name) + ": " + h->name + (h->detail.empty() ? "" : " (" + h->detail + ")"));
            else
                tried.push_back(std::string(name) + ": hypotheses hold, verdict Unknown");
            if (r.hypotheses_hold() && !fallback) fallback = r;
        } catch (const Error& e) {
            if (e.code() == Errc::ConsistencyError) throw;
            tried.push_back(std::string(name) + ": " + errc_name(e.code()) + " " + e.what());
        }
        return std::nullopt;
    };
    auto finish = [&](NormalityReport r) {
        for (const auto& t : tried) r.notes.push_back("tried " + t);
        return r;
    };
    if (d.witness)
        if (auto r = attempt("witness", [&] { return eval_witness(d); })) return finish(*r);
    if (auto r = attempt("simple", [&] { return check_simple_criteria(d.cohomology, d.dim()); })) return finish(*r);
    if (auto r = attempt("surface", [&] { return eval_surface(d); })) return finish(*r);
    if (auto r = attempt("main", [&] { return eval_main(d); })) return finish(*r);
    if (d.p() == 3)
        if (auto r = attempt("th3", [&] { return eval_th3(d); })) return finish(*r);
    if (auto r = attempt("maintori", [&] { return eval_maintori(d); })) return finish(*r);
    NormalityReport r = fallback ? *fallback : check_simple_criteria(d.cohomology, d.dim());
    r.criterion = "auto/" + r.criterion;
    return finish(r);
}

std::string to_string(const NormalityReport& r) {
    std::ostringstream os;
    os << "verdict: " << verdict_name(r.verdict) << "\n";
    os << "criterion: " << r.criterion << "\n";
    os << "degree: " << r.degree << "\n";
    os << "alpha: [" << r.alpha_lo << ", " << (r.alpha_hi ? std::to_string(*r.alpha_hi) : "?") << "]\n";
    if (r.chain)
        os << "chain: " << r.chain->left << " >= " << r.chain->middle << " >= " << r.chain->right
           << (r.parity_ok ? "" : " (parity fails)") << "\n";
    for (const auto& h : r.hypotheses)
        os << "  [" << (h.holds ? "ok" : "FAIL") << "] " << h.name << (h.detail.empty() ? "" : ": " + h.detail)
           << "\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
    return os.str();
}

}  // namespace ql
