#include "quotlat/quotlat.h"

#include <cstring>
#include <new>
#include <string>

#include "catalog.hpp"
#include "error.hpp"
#include "gmodule.hpp"
#include "hilb2.hpp"
#include "json.hpp"
#include "lattice_expr.hpp"
#include "normality.hpp"
#include "quotient.hpp"
#include "scenario.hpp"
#include "toric.hpp"

struct ql_lattice {
    ql::GramLattice lattice;
};

struct ql_scenario {
    ql::Scenario scenario;
};

namespace {

using json = nlohmann::ordered_json;
using namespace ql;

static_assert(static_cast<int>(Errc::NotFound) + 1 == QL_NOT_FOUND, "status codes follow Errc");

thread_local std::string g_last_error;

ql_status status_of(Errc e) { return static_cast<ql_status>(static_cast<int>(e) + 1); }

template <class F>
ql_status guard(F&& f) {
    try {
        f();
        g_last_error.clear();
        return QL_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    }
    return QL_INTERNAL;
}

void need(const void* p, const char* what) {
    if (!p) fail(Errc::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** out, const json& j) { *out = dup(j.dump(2) + "\n"); }

json num(const Int& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json num(const Rat& v) {
    if (v.get_den() == 1) return num(Int(v.get_num()));
    return v.get_str();
}

json mat(const IMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(num(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json qmat(const QMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(num(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Int parse_int(const nlohmann::json& v) {
    if (v.is_number_integer()) return Int(v.get<long>());
    if (v.is_string()) {
        Int out;
        if (out.set_str(v.get<std::string>(), 10) == 0) return out;
    }
    fail(Errc::ParseError, "matrix entries must be integers or decimal strings");
}

IVec parse_vector(const nlohmann::json& j) {
    if (!j.is_array()) fail(Errc::ParseError, "expected a JSON array");
    IVec v;
    for (const auto& x : j) v.push_back(parse_int(x));
    return v;
}

nlohmann::json parse_text(const char* text) {
    need(text, "input");
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::ParseError, e.what());
    }
}

IMat parse_matrix(const char* text) {
    nlohmann::json j = parse_text(text);
    if (!j.is_array() || j.empty()) fail(Errc::ParseError, "expected a nonempty array of rows");
    std::vector<IVec> rows;
    for (const auto& r : j) {
        rows.push_back(parse_vector(r));
        if (rows.back().size() != rows.front().size()) fail(Errc::ParseError, "ragged matrix");
    }
    return rows_to_matrix(rows, rows.front().size());
}

json invariants(const GramLattice& l) {
    InvariantSummary s = invariant_summary(l);
    json divisors = json::array();
    for (const auto& d : s.discriminant.divisors) divisors.push_back(num(d));
    json blocks = json::array();
    for (const IMat& b : orthogonal_blocks(l.gram)) {
        json entry = {{"gram", mat(b)}};
        if (b.rows == 2 && det(b) > 0) entry["reduced"] = mat(binary_reduce(b));
        blocks.push_back(entry);
    }
    return {{"rank", s.rank},
            {"det", num(s.det)},
            {"signature", {s.signature.pos, s.signature.neg}},
            {"discriminant", s.discriminant.str()},
            {"discriminant_divisors", divisors},
            {"blocks", blocks},
            {"summary", summary_string(s)}};
}

json profile(const JordanProfile& jp) {
    json blocks = json::object();
    for (long q = 1; q <= jp.p; ++q)
        if (jp.count(q) != 0) blocks[std::to_string(q)] = jp.count(q);
    json j = {{"p", jp.p}, {"blocks", blocks}, {"rank", jp.rank()}, {"str", jp.str()}};
    if (jp.l1_plus) j["l1+"] = *jp.l1_plus;
    if (jp.l1_minus) j["l1-"] = *jp.l1_minus;
    return j;
}

json weight(const WeightValue& w) {
    if (w.known()) return w.lo;
    return {w.lo, w.hi};
}

json report(const NormalityReport& r) {
    json hyps = json::array();
    for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
    json j = {{"verdict", verdict_name(r.verdict)},
              {"criterion", r.criterion},
              {"degree", r.degree},
              {"alpha", {r.alpha_lo, r.alpha_hi ? json(*r.alpha_hi) : json(nullptr)}},
              {"parity_ok", r.parity_ok}};
    j["chain"] = r.chain ? json{r.chain->left, r.chain->middle, r.chain->right} : json(nullptr);
    j["hypotheses"] = hyps;
    j["notes"] = r.notes;
    return j;
}

K3Form k3_form(const char* gram_json) { return gram_json ? K3Form(parse_matrix(gram_json)) : standard_k3_form(); }

H2Class h2_class(const char* text, std::size_t r) {
    IVec v = parse_vector(parse_text(text));
    if (v.size() != r + 1) fail(Errc::InvalidArgument, "a class needs " + std::to_string(r + 1) + " coordinates");
    H2Class c;
    c.delta = v.back();
    v.pop_back();
    c.gamma = v;
    return c;
}

json h4_coords(const H4Class& c, const H4Basis& b) {
    json terms = json::array();
    for (std::size_t i = 0; i < c.coords.size(); ++i)
        if (sgn(c.coords[i]) != 0) terms.push_back({{"basis", b.label(i)}, {"coeff", num(c.coords[i])}});
    return terms;
}

}  // namespace

extern "C" {

const char* ql_version(void) { return "1.0.0"; }

const char* ql_status_name(ql_status s) {
    if (s == QL_OK) return "Ok";
    if (s == QL_INTERNAL) return "Internal";
    if (s < QL_OK || s > QL_NOT_FOUND) return "Unknown";
    return errc_name(static_cast<Errc>(static_cast<int>(s) - 1));
}

const char* ql_last_error(void) { return g_last_error.c_str(); }

void ql_string_free(char* s) { std::free(s); }

ql_status ql_lattice_parse(const char* expr, ql_lattice** out) {
    return guard([&] {
        need(expr, "expr");
        need(out, "out");
        *out = new ql_lattice{parse_lattice_expr(expr)};
    });
}

ql_status ql_lattice_from_gram(const char* gram_json, ql_lattice** out) {
    return guard([&] {
        need(out, "out");
        *out = new ql_lattice{GramLattice(parse_matrix(gram_json))};
    });
}

void ql_lattice_free(ql_lattice* l) { delete l; }

ql_status ql_lattice_rank(const ql_lattice* l, size_t* out) {
    return guard([&] {
        need(l, "lattice");
        need(out, "out");
        *out = l->lattice.rank();
    });
}

ql_status ql_lattice_gram_json(const ql_lattice* l, char** out) {
    return guard([&] {
        need(l, "lattice");
        need(out, "out");
        emit(out, mat(l->lattice.gram));
    });
}

ql_status ql_lattice_invariants_json(const ql_lattice* l, char** out) {
    return guard([&] {
        need(l, "lattice");
        need(out, "out");
        json j = invariants(l->lattice);
        j["gram"] = mat(l->lattice.gram);
        emit(out, j);
    });
}

ql_status ql_lattice_quotient_middle(const ql_lattice* l, long p, ql_lattice** out) {
    return guard([&] {
        need(l, "lattice");
        need(out, "out");
        *out = new ql_lattice{quotient_middle_lattice(l->lattice, p)};
    });
}

ql_status ql_snf_json(const char* matrix_json, char** out) {
    return guard([&] {
        need(out, "out");
        IMat a = parse_matrix(matrix_json);
        Smith s = smith_normal_form(a);
        json diag = json::array();
        for (const auto& d : s.diag) diag.push_back(num(d));
        emit(out, {{"rank", s.rank()}, {"diag", diag}, {"D", mat(s.D)}, {"U", mat(s.U)}, {"V", mat(s.V)}});
    });
}

ql_status ql_jordan_json(const char* matrix_json, long p, const char* gram_json, char** out) {
    return guard([&] {
        need(out, "out");
        std::optional<IMat> gram;
        if (gram_json) gram = parse_matrix(gram_json);
        PrimeOrderAction a = make_action(p, parse_matrix(matrix_json), gram);
        JordanProfile jp = jordan_profile(a);
        json j = profile(jp);
        if (gram) {
            auto inv = invariant_sublattice(a);
            auto ker = sigma_kernel(a);
            j["invariant"] = {{"basis", mat(inv.basis)}, {"gram", mat(inv.induced)}};
            j["sigma_kernel"] = {{"basis", mat(ker.basis)}, {"gram", mat(ker.induced)}};
            j["a_invariant"] = a_invariant(a);
        }
        emit(out, j);
    });
}

ql_status ql_weight_json(long p, const long* exponents, size_t n, char** out) {
    return guard([&] {
        need(out, "out");
        if (n > 0) need(exponents, "exponents");
        FixedPointLocal fp = make_fixed_point(p, std::vector<long>(exponents, exponents + n));
        PointClassification c = classify_fixed_point(fp);
        WeightValue w = weight_lookup(fp);
        emit(out, {{"point", fp.str()},
                   {"canonical", canonical_generator(fp).str()},
                   {"type", point_type_name(c.type)},
                   {"quotient_smooth", c.quotient_smooth},
                   {"weight", weight(w)},
                   {"known", w.known()}});
    });
}

ql_status ql_weight2d_json(long p, long q, char** out) {
    return guard([&] {
        need(out, "out");
        Resolution2D res = resolve_2d(p, q);
        WeightCase wc = weight_case_2d(p, q, Compactification::PaperChoice);
        WeightCase alt = weight_case_2d(p, q, Compactification::ThreeRays);
        WeightValue w = weight_dim2(p, q);
        json rays = json::array();
        for (const auto& r : res.fan.rays) rays.push_back({r.first, r.second});
        json complete = json::array();
        for (const auto& r : wc.complete_fan.rays) complete.push_back({r.first, r.second});
        emit(out, {{"p", p},
                   {"q", q},
                   {"hj", hj_expand(p, q)},
                   {"resolution_rays", rays},
                   {"exceptional", res.exceptional},
                   {"complete_fan", complete},
                   {"self_intersection", wc.complete_fan.self_intersection},
                   {"case", wc.label},
                   {"log_discr_im_g", wc.log_discr_im_g},
                   {"rktor_h3_rel", wc.rktor_h3_rel},
                   {"rktor_h2_u", wc.rktor_h2_u},
                   {"rktor_h2_res", wc.rktor_h2_res},
                   {"weight", weight(w)},
                   {"alternative_weight", alt.weight}});
    });
}

ql_status ql_hilb2_json(const char* gram_json, const char* x_json, const char* y_json, char** out) {
    return guard([&] {
        need(out, "out");
        K3Form k = k3_form(gram_json);
        H2Class x = h2_class(x_json, k.rank());
        H2Class y = h2_class(y_json, k.rank());
        H4Basis b{k.rank()};
        json j = {{"rank", k.rank()}, {"k3", k.is_k3()}};
        j["bb"] = {{"xx", num(bb_form(x, x, k))}, {"xy", num(bb_form(x, y, k))}, {"yy", num(bb_form(y, y, k))}};
        j["cup"] = {{"xx", h4_coords(cup_h2(x, x, k), b)},
                    {"xy", h4_coords(cup_h2(x, y, k), b)},
                    {"yy", h4_coords(cup_h2(y, y, k), b)}};
        j["products"] = {{"x^4", num(quadruple_product(x, x, x, x, k))},
                         {"x^2y^2", num(quadruple_product(x, x, y, y, k))},
                         {"xy.xy", num(pair_h4(H4Span::product(x, y), H4Span::product(x, y), k))}};
        emit(out, j);
    });
}

ql_status ql_hilb2_s_lattice_json(const char* gram_json, char** out) {
    return guard([&] {
        need(out, "out");
        K3Form k = k3_form(gram_json);
        SLattice s = s_lattice_gram(s_lattice_basis(k), k);
        emit(out, {{"basis", {"u1^2", "u2^2", "delta^2", "u1u2", "u1delta", "u2delta", "sigma"}},
                   {"gram", mat(s.gram)},
                   {"det", num(s.det)}});
    });
}

ql_status ql_scenario_load(const char* ref, ql_scenario** out) {
    return guard([&] {
        need(ref, "ref");
        need(out, "out");
        *out = new ql_scenario{resolve_scenario(ref)};
    });
}

ql_status ql_scenario_parse(const char* json_text, ql_scenario** out) {
    return guard([&] {
        need(json_text, "json_text");
        need(out, "out");
        *out = new ql_scenario{parse_scenario(json_text)};
    });
}

void ql_scenario_free(ql_scenario* s) { delete s; }

ql_status ql_scenario_name(const ql_scenario* s, char** out) {
    return guard([&] {
        need(s, "scenario");
        need(out, "out");
        *out = dup(s->scenario.name);
    });
}

ql_status ql_normality_json(const ql_scenario* s, const char* criterion, char** out, ql_verdict* verdict) {
    return guard([&] {
        need(s, "scenario");
        need(out, "out");
        Criterion c = criterion ? parse_criterion(criterion) : Criterion::Auto;
        NormalityReport r = check_normality(s->scenario.pair, c);
        json j = {{"scenario", s->scenario.name}};
        j.update(report(r));
        emit(out, j);
        if (verdict) *verdict = static_cast<ql_verdict>(static_cast<int>(r.verdict));
    });
}

ql_status ql_quotient_json(const ql_scenario* s, char** out) {
    return guard([&] {
        need(s, "scenario");
        need(out, "out");
        const Scenario& sc = s->scenario;
        if (!sc.invariant) fail(Errc::MissingData, sc.name + " has no invariant lattice");
        long p = sc.pair.p();
        json j = {{"scenario", sc.name}, {"prime", p}, {"invariant", invariants(*sc.invariant)}};
        if (sc.quotient.form == QuotientForm::BeauvilleBogomolov) {
            GlueSpec glue = sc.quotient.glue ? *sc.quotient.glue : auto_glue(*sc.invariant, p);
            QuotientResult r = bb_quotient(*sc.invariant, p, glue, sc.quotient.fujiki);
            j["form"] = "bb";
            j["glue"] = {{"transform", mat(glue.transform)}, {"divided", glue.divided}, {"note", glue.note},
                         {"source", sc.quotient.glue ? "scenario" : "auto"}};
            j["raw"] = qmat(r.raw);
            j["scale"] = num(r.scale);
            j["fujiki"] = num(r.fujiki);
            j["index"] = num(r.index);
            j["gram"] = mat(r.lattice.gram);
            j["quotient"] = invariants(r.lattice);
        } else {
            std::optional<long> lp;
            if (sc.pair.cohomology.profiles.count(2)) lp = sc.pair.cohomology.at(2).lp();
            GramLattice q = quotient_middle_lattice(*sc.invariant, p, lp);
            j["form"] = "middle";
            j["gram"] = mat(q.gram);
            j["quotient"] = invariants(q);
        }
        emit(out, j);
    });
}

ql_status ql_scenario_verify(const ql_scenario* s, ql_format format, char** out, int* pass) {
    return guard([&] {
        need(s, "scenario");
        need(out, "out");
        std::vector<ScenarioReport> r{verify_scenario(s->scenario)};
        *out = dup(format == QL_FORMAT_JSON ? render_json(r) : render_table(r));
        if (pass) *pass = r[0].pass() ? 1 : 0;
    });
}

ql_status ql_verify_catalog(const char* filter, ql_format format, unsigned threads, char** out, int* pass) {
    return guard([&] {
        need(out, "out");
        auto scenarios = filter_catalog(load_catalog(), filter ? filter : "");
        if (scenarios.empty()) fail(Errc::NotFound, std::string("no catalog entry matches '") + (filter ? filter : "") + "'");
        auto reports = verify_all(scenarios, threads);
        *out = dup(format == QL_FORMAT_JSON ? render_json(reports) : render_table(reports));
        if (pass) {
            *pass = 1;
            for (const auto& r : reports)
                if (!r.pass()) *pass = 0;
        }
    });
}

ql_status ql_catalog_dir(char** out) {
    return guard([&] {
        need(out, "out");
        *out = dup(catalog_dir());
    });
}

}  // extern "C"
