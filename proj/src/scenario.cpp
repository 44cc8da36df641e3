#include "scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "gmodule.hpp"
#include "json.hpp"
#include "lattice_expr.hpp"

#ifndef QUOTLAT_CATALOG_DIR
#define QUOTLAT_CATALOG_DIR "data/catalog"
#endif

namespace ql {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
    fail(Errc::SchemaError, path + ": " + msg);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

const json* field(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

const json& require(const json& j, const char* key, const std::string& path) {
    const json* f = field(j, key);
    if (!f) schema(path + "." + key, "missing");
    return *f;
}

Int as_int(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) != 0) schema(path, "not a decimal integer");
        return v;
    }
    schema(path, "expected an integer");
}

long as_long(const json& j, const std::string& path) {
    Int v = as_int(j, path);
    if (!v.fits_slong_p()) schema(path, "integer out of range");
    return v.get_si();
}

Rat as_rat(const json& j, const std::string& path) {
    if (j.is_string()) {
        Rat v;
        if (v.set_str(j.get<std::string>(), 10) != 0) schema(path, "not a rational number");
        v.canonicalize();
        return v;
    }
    return Rat(as_int(j, path));
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) schema(path, "expected true or false");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) schema(path, "expected a string");
    return j.get<std::string>();
}

template <class T, class F>
T opt(const json& j, const char* key, const std::string& path, T fallback, F conv) {
    const json* f = field(j, key);
    return f ? conv(*f, path + "." + key) : fallback;
}

std::vector<long> long_list(const json& j, const std::string& path) {
    if (!j.is_array()) schema(path, "expected an array");
    std::vector<long> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_long(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

IVec int_vector(const json& j, const std::string& path) {
    if (!j.is_array()) schema(path, "expected an array");
    IVec out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

IMat int_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of rows");
    std::vector<IVec> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(int_vector(j[i], path + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size()) schema(path + "[" + std::to_string(i) + "]", "ragged row");
    }
    return rows_to_matrix(rows, rows.front().size());
}

// Matrix, or {"permutation": [...]} sending e_i to e_{perm[i]}.
IMat action_matrix(const json& j, const std::string& path) {
    if (j.is_object()) {
        auto perm = long_list(require(j, "permutation", path), path + ".permutation");
        std::size_t n = perm.size();
        IMat m(n, n);
        std::vector<bool> seen(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            if (perm[i] < 0 || static_cast<std::size_t>(perm[i]) >= n || seen[static_cast<std::size_t>(perm[i])])
                schema(path + ".permutation", "not a permutation of 0.." + std::to_string(n - 1));
            seen[static_cast<std::size_t>(perm[i])] = true;
            m(static_cast<std::size_t>(perm[i]), i) = 1;
        }
        return m;
    }
    return int_matrix(j, path);
}

GramLattice lattice_field(const json& j, const std::string& path, std::string& expr) {
    try {
        if (j.is_string()) {
            expr = j.get<std::string>();
            return parse_lattice_expr(expr);
        }
        if (j.is_object()) {
            GramLattice l(int_matrix(require(j, "gram", path), path + ".gram"));
            expr = to_string(l.gram);
            return l;
        }
    } catch (const Error& e) {
        if (e.code() == Errc::SchemaError) throw;
        schema(path, e.what());
    }
    schema(path, "expected a lattice expression or {\"gram\": ...}");
}

JordanProfile block_profile(const json& j, long p, const std::string& path) {
    JordanProfile jp(p);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        std::string fp = path + "." + k;
        long v = as_long(it.value(), fp);
        if (v < 0) schema(fp, "block counts are non-negative");
        if (p == 2 && (k == "1+" || k == "1-")) {
            (k == "1+" ? jp.l1_plus : jp.l1_minus) = v;
            continue;
        }
        long q = 0;
        try {
            std::size_t used = 0;
            q = std::stol(k, &used);
            if (used != k.size()) q = 0;
        } catch (const std::exception&) {
            q = 0;
        }
        if (q < 1 || q > p) schema(fp, "block size must lie in 1.." + std::to_string(p));
        jp.at(q) = v;
    }
    if (p == 2) {
        if (jp.count(1) != 0) schema(path + ".1", "for p = 2 give 1+ and 1- instead of 1");
        jp.at(1) = jp.l1_plus.value_or(0) + jp.l1_minus.value_or(0);
        if (!jp.l1_plus || !jp.l1_minus) schema(path, "p = 2 profiles need both 1+ and 1-");
    }
    return jp;
}

void read_cohomology(const json& j, const std::string& path, CohomologyProfile& cp) {
    cp.torsion_free = opt(j, "torsion_free", path, true, as_bool);
    cp.odd_vanishes = opt(j, "odd_vanishes", path, false, as_bool);
    const json& deg = require(j, "degrees", path);
    if (!deg.is_object()) schema(path + ".degrees", "expected an object keyed by degree");
    // two passes: direct data first, then sym2/poincare references
    std::vector<std::pair<int, const json*>> deferred;
    for (auto it = deg.begin(); it != deg.end(); ++it) {
        std::string dp = path + ".degrees." + it.key();
        int d = 0;
        try {
            d = std::stoi(it.key());
        } catch (const std::exception&) {
            schema(dp, "degree keys are integers");
        }
        if (d < 0 || d > 2 * cp.dim) schema(dp, "degree outside 0.." + std::to_string(2 * cp.dim));
        const json& v = it.value();
        if (!v.is_object()) schema(dp, "expected an object");
        if (field(v, "sym2") || field(v, "poincare")) {
            deferred.emplace_back(d, &v);
        } else if (field(v, "action")) {
            try {
                cp.profiles[d] = jordan_profile(make_action(cp.p, action_matrix(v["action"], dp + ".action")));
            } catch (const Error& e) {
                if (e.code() == Errc::SchemaError) throw;
                schema(dp + ".action", e.what());
            }
        } else {
            cp.profiles[d] = block_profile(v, cp.p, dp);
        }
    }
    for (auto [d, v] : deferred) {
        std::string dp = path + ".degrees." + std::to_string(d);
        const char* key = field(*v, "sym2") ? "sym2" : "poincare";
        int src = static_cast<int>(as_long((*v)[key], dp + "." + key));
        auto it = cp.profiles.find(src);
        if (it == cp.profiles.end()) schema(dp + "." + key, "degree " + std::to_string(src) + " has no direct data");
        if (std::string(key) == "sym2") {
            if (cp.p == 2) schema(dp + ".sym2", "sym2 is not available for p = 2");
            cp.profiles[d] = sym2_profile(it->second);
        } else {
            if (src + d != 2 * cp.dim) schema(dp + ".poincare", "degrees must add up to " + std::to_string(2 * cp.dim));
            cp.profiles[d] = it->second;
        }
    }
}

IsolatedClass read_point(const json& j, const std::string& path, long p) {
    IsolatedClass c;
    c.multiplicity = opt(j, "multiplicity", path, 1L, as_long);
    if (c.multiplicity < 1) schema(path + ".multiplicity", "must be positive");
    if (const json* e = field(j, "exponents")) {
        try {
            c.local = make_fixed_point(p, long_list(*e, path + ".exponents"));
        } catch (const Error& err) {
            if (err.code() == Errc::SchemaError) throw;
            schema(path + ".exponents", err.what());
        }
    }
    if (const json* w = field(j, "weight")) {
        long v = as_long(*w, path + ".weight");
        if (v < 0 || v > 2) schema(path + ".weight", "weights lie in {0,1,2}");
        c.weight = WeightValue::exact(static_cast<int>(v));
    }
    c.label = opt(j, "label", path, c.local ? c.local->str() : std::string("isolated"), as_string);
    return c;
}

FixedComponent read_component(const json& j, const std::string& path, long p) {
    FixedComponent c;
    c.dim = static_cast<int>(as_long(require(j, "dim", path), path + ".dim"));
    if (c.dim < 1) schema(path + ".dim", "components have positive dimension");
    c.even_betti = as_long(require(j, "even_betti", path), path + ".even_betti");
    c.odd_betti = opt(j, "odd_betti", path, 0L, as_long);
    c.multiplicity = opt(j, "multiplicity", path, 1L, as_long);
    c.connected = opt(j, "connected", path, true, as_bool);
    c.simply_connected = opt(j, "simply_connected", path, false, as_bool);
    c.primitive_class = opt(j, "primitive_class", path, false, as_bool);
    c.torsion_free = opt(j, "torsion_free", path, true, as_bool);
    c.label = opt(j, "label", path, std::string("component"), as_string);
    if (const json* e = field(j, "normal_exponents")) {
        try {
            c.normal = make_fixed_point(p, long_list(*e, path + ".normal_exponents"));
        } catch (const Error& err) {
            if (err.code() == Errc::SchemaError) throw;
            schema(path + ".normal_exponents", err.what());
        }
    }
    return c;
}

GlueSpec read_glue(const json& j, const std::string& path) {
    GlueSpec g;
    g.transform = int_matrix(require(j, "transform", path), path + ".transform");
    const json& d = require(j, "divided", path);
    if (!d.is_array()) schema(path + ".divided", "expected an array of booleans");
    for (std::size_t i = 0; i < d.size(); ++i) g.divided.push_back(as_bool(d[i], path + ".divided[" + std::to_string(i) + "]"));
    if (g.divided.size() != g.transform.rows) schema(path + ".divided", "one flag per transform row");
    g.note = opt(j, "note", path, std::string("explicit"), as_string);
    return g;
}

Verdict parse_verdict(const json& j, const std::string& path) {
    std::string s = as_string(j, path);
    for (Verdict v : {Verdict::Normal, Verdict::NotNormal, Verdict::Unknown})
        if (s == verdict_name(v)) return v;
    schema(path, "unknown verdict '" + s + "'");
}

Expected read_expected(const json& j, const std::string& path) {
    Expected e;
    if (const json* v = field(j, "verdict")) e.verdict = parse_verdict(*v, path + ".verdict");
    if (const json* v = field(j, "criterion")) e.criterion = as_string(*v, path + ".criterion");
    if (const json* v = field(j, "degree")) e.degree = static_cast<int>(as_long(*v, path + ".degree"));
    if (const json* v = field(j, "alpha")) {
        auto a = long_list(*v, path + ".alpha");
        if (a.size() != 2) schema(path + ".alpha", "expected [lo, hi]");
        e.alpha_lo = a[0];
        e.alpha_hi = a[1];
    }
    if (const json* v = field(j, "chain")) {
        auto c = long_list(*v, path + ".chain");
        if (c.size() != 3) schema(path + ".chain", "expected [left, middle, right]");
        e.chain = Chain{c[0], c[1], c[2]};
    }
    if (const json* v = field(j, "quotient_lattice")) e.quotient_lattice = as_string(*v, path + ".quotient_lattice");
    e.exact = opt(j, "exact", path, false, as_bool);
    if (const json* v = field(j, "fujiki")) e.fujiki = as_rat(*v, path + ".fujiki");
    if (const json* v = field(j, "betti")) {
        auto b = long_list(*v, path + ".betti");
        if (b.size() != 4) schema(path + ".betti", "expected [b2, b3, b4, euler]");
        e.betti = BettiNumbers{b[0], b[1], b[2], b[3]};
    }
    if (const json* v = field(j, "fixed_count")) e.fixed_count = as_long(*v, path + ".fixed_count");
    if (const json* v = field(j, "weights")) e.weights = long_list(*v, path + ".weights");
    return e;
}

Witness read_witness(const json& j, const std::string& path) {
    Witness w;
    w.degree = static_cast<int>(opt(j, "degree", path, 2L, as_long));
    w.action = action_matrix(require(j, "action", path), path + ".action");
    w.vector = int_vector(require(j, "vector", path), path + ".vector");
    if (w.vector.size() != w.action.cols) schema(path + ".vector", "length differs from the action size");
    w.pushforward_divisible = opt(j, "pushforward_divisible", path, false, as_bool);
    if (const json* a = field(j, "alpha_upper")) w.alpha_upper = as_long(*a, path + ".alpha_upper");
    w.note = opt(j, "note", path, std::string(), as_string);
    return w;
}

void consistency(const Scenario& s) {
    const CohomologyProfile& cp = s.pair.cohomology;
    if (s.invariant) {
        auto it = cp.profiles.find(2);
        if (it != cp.profiles.end()) {
            long rk = it->second.l1() + it->second.lp();
            if (cp.p == 2) rk = it->second.l1_plus.value_or(0) + it->second.lp();
            if (rk != static_cast<long>(s.invariant->rank()))
                fail(Errc::ConsistencyError, s.name + ": degree-2 profile gives invariant rank " + std::to_string(rk) +
                                                 " but the invariant lattice has rank " +
                                                 std::to_string(s.invariant->rank()));
        }
    }
    if (s.expected.fixed_count && s.pair.fixed.finite() && !s.pair.fixed.points.empty() &&
        s.pair.fixed.point_count() != *s.expected.fixed_count)
        fail(Errc::ConsistencyError, s.name + ": fixed locus lists " + std::to_string(s.pair.fixed.point_count()) +
                                         " points, expected " + std::to_string(*s.expected.fixed_count));
    if (s.pair.witness && s.pair.witness->degree != 2 && s.pair.witness->degree != cp.dim)
        fail(Errc::ConsistencyError, s.name + ": witness degree must be 2 or the middle degree");
    if (s.quotient.glue && s.invariant && s.quotient.glue->transform.rows != s.invariant->rank())
        fail(Errc::ConsistencyError, s.name + ": glue transform size differs from the invariant rank");
}

}  // namespace

bool Scenario::matches(const std::string& key) const {
    std::string k = lower(key);
    if (lower(name) == k) return true;
    return std::any_of(aliases.begin(), aliases.end(), [&](const std::string& a) { return lower(a) == k; });
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(Errc::SchemaError, source + ": " + e.what());
    }
    if (!j.is_object()) schema("$", "a scenario is a JSON object");
    const std::string root = "$";
    Scenario s;
    s.source = source;
    s.name = as_string(require(j, "name", root), "$.name");
    if (const json* a = field(j, "aliases")) {
        if (!a->is_array()) schema("$.aliases", "expected an array of strings");
        for (std::size_t i = 0; i < a->size(); ++i) s.aliases.push_back(as_string((*a)[i], "$.aliases[" + std::to_string(i) + "]"));
    }
    s.family = opt(j, "family", root, std::string("other"), as_string);
    s.title = opt(j, "title", root, std::string(), as_string);
    s.notes = opt(j, "notes", root, std::string(), as_string);
    s.reference_only = opt(j, "reference_only", root, false, as_bool);

    long p = as_long(require(j, "prime", root), "$.prime");
    if (!is_prime(p)) schema("$.prime", std::to_string(p) + " is not prime");
    long dim = as_long(require(j, "dimension", root), "$.dimension");
    if (dim < 1) schema("$.dimension", "complex dimension must be positive");

    PairData& d = s.pair;
    d.cohomology.p = p;
    d.cohomology.dim = static_cast<int>(dim);
    if (const json* c = field(j, "cohomology")) read_cohomology(*c, "$.cohomology", d.cohomology);
    d.simply_connected = opt(j, "simply_connected", root, false, as_bool);
    d.kahler = opt(j, "kahler", root, true, as_bool);
    d.e2_degenerate = opt(j, "e2_degenerate", root, false, as_bool);
    if (const json* r = field(j, "rktor_resolution")) d.rktor_resolution = as_long(*r, "$.rktor_resolution");

    if (const json* f = field(j, "fixed_locus")) {
        s.fixed_locus_declared = true;
        if (const json* pts = field(*f, "points")) {
            if (!pts->is_array()) schema("$.fixed_locus.points", "expected an array");
            for (std::size_t i = 0; i < pts->size(); ++i)
                d.fixed.points.push_back(read_point((*pts)[i], "$.fixed_locus.points[" + std::to_string(i) + "]", p));
        }
        if (const json* cs = field(*f, "components")) {
            if (!cs->is_array()) schema("$.fixed_locus.components", "expected an array");
            for (std::size_t i = 0; i < cs->size(); ++i)
                d.fixed.components.push_back(
                    read_component((*cs)[i], "$.fixed_locus.components[" + std::to_string(i) + "]", p));
        }
    }
    if (const json* w = field(j, "witness")) d.witness = read_witness(*w, "$.witness");

    if (const json* l = field(j, "invariant_lattice")) s.invariant = lattice_field(*l, "$.invariant_lattice", s.invariant_expr);

    if (const json* q = field(j, "quotient")) {
        std::string form = as_string(require(*q, "form", "$.quotient"), "$.quotient.form");
        if (form == "middle")
            s.quotient.form = QuotientForm::Middle;
        else if (form == "bb")
            s.quotient.form = QuotientForm::BeauvilleBogomolov;
        else if (form != "none")
            schema("$.quotient.form", "expected middle, bb or none");
        if (const json* g = field(*q, "glue")) {
            if (!(g->is_string() && g->get<std::string>() == "auto")) s.quotient.glue = read_glue(*g, "$.quotient.glue");
        }
        if (const json* c = field(*q, "fujiki")) s.quotient.fujiki = as_rat(*c, "$.quotient.fujiki");
        if (s.quotient.form != QuotientForm::None && !s.invariant)
            schema("$.invariant_lattice", "required when a quotient form is requested");
    }
    if (const json* e = field(j, "expected")) s.expected = read_expected(*e, "$.expected");
    consistency(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

std::string catalog_dir() {
    if (const char* env = std::getenv("QUOTLAT_CATALOG"); env && *env) return env;
    return QUOTLAT_CATALOG_DIR;
}

std::vector<Scenario> load_catalog(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::path index = fs::path(dir) / "index.json";
    std::ifstream in(index);
    if (!in) fail(Errc::IoError, "cannot open catalog index " + index.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(Errc::SchemaError, index.string() + ": " + e.what());
    }
    const json* files = field(j, "entries");
    if (!files || !files->is_array()) fail(Errc::SchemaError, index.string() + ": $.entries must be an array");
    std::vector<Scenario> out;
    for (std::size_t i = 0; i < files->size(); ++i) {
        std::string f = as_string((*files)[i], "$.entries[" + std::to_string(i) + "]");
        out.push_back(load_scenario((fs::path(dir) / f).string()));
    }
    return out;
}

Scenario resolve_scenario(const std::string& ref) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::is_regular_file(ref, ec)) return load_scenario(ref);
    for (auto& s : load_catalog())
        if (s.matches(ref)) return s;
    fail(Errc::NotFound, "no scenario file or catalog entry named '" + ref + "'");
}

}  // namespace ql
