#pragma once

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "gmodule.hpp"
#include "local_action.hpp"
#include "matrix.hpp"

namespace ql {

// A class of isolated fixed points sharing local data.
struct IsolatedClass {
    std::optional<FixedPointLocal> local;  // exponents, when known
    long multiplicity = 1;
    std::optional<WeightValue> weight;  // declared
    std::string label;
};

// A positive-dimensional component of Fix G.
struct FixedComponent {
    int dim = 0;  // complex dimension
    long even_betti = 0;
    long odd_betti = 0;
    std::string label;
    long multiplicity = 1;
    bool connected = true;
    bool simply_connected = false;
    bool primitive_class = false;
    bool torsion_free = true;
    std::optional<FixedPointLocal> normal;  // exponents at a point, zeros along the component
};

struct FixedLocus {
    std::vector<IsolatedClass> points;
    std::vector<FixedComponent> components;

    bool finite() const { return components.empty(); }
    long point_count() const;
    // Sum of even (eps = 0) or odd (eps = 1) Betti numbers over Fix G.
    long h2star(int eps) const;
};

// Explicit non-normality data: an invariant class that is not a norm.
struct Witness {
    int degree = 2;
    IMat action;  // on H^degree(X), column convention
    IVec vector;
    bool pushforward_divisible = false;  // declared: π_*(vector) is divisible by p
    std::optional<long> alpha_upper;     // declared upper bound for α
    std::string note;
};

// Everything the checkers know about a pair (X, G).
struct PairData {
    CohomologyProfile cohomology;  // carries p and the complex dimension
    FixedLocus fixed;
    bool simply_connected = false;
    bool kahler = true;
    bool e2_degenerate = false;
    std::optional<long> rktor_resolution;  // rktor H^n of the resolution, odd n only
    std::optional<Witness> witness;

    long p() const { return cohomology.p; }
    int dim() const { return cohomology.dim; }
};

enum class Verdict { Normal, NotNormal, Unknown };
const char* verdict_name(Verdict v);

enum class Criterion { Auto, Simple, Surface, Main, Th3, Maintori, Witness };
const char* criterion_name(Criterion c);
Criterion parse_criterion(const std::string& s);

struct HypothesisCheck {
    std::string name;
    bool holds = false;
    std::string detail;
    Errc code = Errc::HypothesisFailed;  // raised by direct checker calls on failure
};

struct Chain {
    long left = 0, middle = 0, right = 0;
    bool ordered() const { return left >= middle && middle >= right; }
};

struct NormalityReport {
    Verdict verdict = Verdict::Unknown;
    int degree = 0;
    long alpha_lo = 0;
    std::optional<long> alpha_hi;  // nullopt: no bound available
    bool parity_ok = true;
    std::optional<Chain> chain;
    std::string criterion;
    std::vector<HypothesisCheck> hypotheses;
    std::vector<std::string> notes;

    bool hypotheses_hold() const;
    const HypothesisCheck* first_failure() const;
};

struct PushforwardDiscriminant {
    long log_discr = 0;    // log_p discr π_*(H^n)
    long alpha_upper = 0;  // floor(log_discr / 2)
};

PushforwardDiscriminant pushforward_discriminant(const CohomologyProfile& cp, int n);

NormalityReport check_simple_criteria(const CohomologyProfile& cp, int k);

// Type-1 chain (torsion via the free-quotient formulas).  Throws HypothesisFailed.
NormalityReport check_theorem_main(const PairData& d);

struct BlowupResult {
    CohomologyProfile cohomology;
    long h2star_delta = 0;
};

// Blow-up of the type-2 points for p = 3; n is half the complex dimension.
BlowupResult blowup_update(const CohomologyProfile& cp, long n2, long eps, long eta);

struct StabilityData {
    long n2 = 0, eps = 0, eta = 0;
    std::string detail;
};

// Throws NotStable when the order-3 fixed locus is not stable.
StabilityData stability(const PairData& d);

NormalityReport check_th3(const PairData& d);

// Per isolated class: declared weight, then the proved table, then the
// dimension-2 and order-3 rules.
std::vector<WeightValue> resolve_weights(const PairData& d);

// Weight chain over a finite fixed locus.  Throws WeightUnknown / WeightTwoPresent.
NormalityReport check_maintori(const PairData& d);

struct WeightSolution {
    std::vector<WeightValue> per_class;
    long solutions = 0;
    bool unique() const { return solutions == 1; }
};

// Enumerates weights in {0,1,2} per class subject to parity and the two-sided
// bound.  Only declared weights are fixed unless use_lookup is set.
WeightSolution weight_solve(const PairData& d, bool use_lookup = false);

NormalityReport check_surface(const PairData& d);

NormalityReport check_witness(const PairData& d);

struct BettiNumbers {
    long b2 = 0, b3 = 0, b4 = 0, euler = 0;
    bool operator==(const BettiNumbers& o) const {
        return b2 == o.b2 && b3 == o.b3 && b4 == o.b4 && euler == o.euler;
    }
};

BettiNumbers betti_quotient(long r, long p);

NormalityReport propagate_power(const NormalityReport& report_kt, int k, bool sym_injective,
                                bool complement_stable);

// Auto tries simple, surface, main, th3, maintori in that order (witness first
// when one is present) and returns the first Normal report.
NormalityReport check_normality(const PairData& d, Criterion c = Criterion::Auto);

std::string to_string(const NormalityReport& r);

}  // namespace ql
