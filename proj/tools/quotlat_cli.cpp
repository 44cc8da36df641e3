// Command-line front end.  Talks to the library only through quotlat.h.

#include <quotlat/quotlat.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Failure {
    int status;
    std::string message;
};

void check(ql_status s) {
    if (s != QL_OK) throw Failure{static_cast<int>(s), std::string(ql_status_name(s)) + ": " + ql_last_error()};
}

std::string take(char* s) {
    std::string out(s ? s : "");
    ql_string_free(s);
    return out;
}

// A file path, "-" for stdin, or inline JSON starting with '['.
std::string read_input(const std::string& path) {
    if (!path.empty() && path.front() == '[') return path;
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Failure{QL_IO_ERROR, "cannot open " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void print_matrix(const std::string& title, const json& m) {
    std::vector<std::vector<std::string>> cells;
    std::size_t w = 1;
    for (const auto& row : m) {
        cells.emplace_back();
        for (const auto& x : row) {
            cells.back().push_back(cell(x));
            w = std::max(w, cells.back().back().size());
        }
    }
    std::cout << title << ":\n";
    for (const auto& row : cells) {
        std::cout << "  ";
        for (std::size_t j = 0; j < row.size(); ++j)
            std::cout << std::string(w - row[j].size() + (j ? 1 : 0), ' ') << row[j];
        std::cout << '\n';
    }
}

void print_fields(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.first.size());
    for (const auto& r : rows) std::cout << r.first << std::string(w - r.first.size() + 2, ' ') << r.second << '\n';
}

void print_invariants(const json& inv) {
    print_fields({{"rank", cell(inv["rank"])},
                  {"det", cell(inv["det"])},
                  {"signature", "(" + cell(inv["signature"][0]) + ", " + cell(inv["signature"][1]) + ")"},
                  {"discriminant", cell(inv["discriminant"])}});
    for (const auto& b : inv["blocks"])
        if (b.contains("reduced")) std::cout << "reduced block  " << b["reduced"].dump() << '\n';
}

struct Lattice {
    ql_lattice* h = nullptr;
    ~Lattice() { ql_lattice_free(h); }
};

struct Scenario {
    ql_scenario* h = nullptr;
    ~Scenario() { ql_scenario_free(h); }
};

void load_lattice(const std::string& arg, Lattice& l) {
    std::string text = arg;
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) text = read_input(arg);
    auto first = text.find_first_not_of(" \t\r\n");
    bool gram = first != std::string::npos && text[first] == '[' && text.find("]]") != std::string::npos &&
                text.find('+') == std::string::npos && text.find_first_of("()*^UAEKLH") == std::string::npos;
    if (gram)
        check(ql_lattice_from_gram(text.c_str(), &l.h));
    else {
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
        check(ql_lattice_parse(text.c_str(), &l.h));
    }
}

int cmd_lattice(const std::string& arg, bool show_invariants, long quotient_p, bool as_json) {
    Lattice l;
    load_lattice(arg, l);
    Lattice q;
    if (quotient_p) check(ql_lattice_quotient_middle(l.h, quotient_p, &q.h));
    const ql_lattice* shown = quotient_p ? q.h : l.h;
    char* out = nullptr;
    check(ql_lattice_invariants_json(shown, &out));
    json j = json::parse(take(out));
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    print_matrix(quotient_p ? "gram of L^v(" + std::to_string(quotient_p) + ")" : "gram", j["gram"]);
    if (show_invariants || quotient_p) print_invariants(j);
    return 0;
}

int cmd_snf(const std::string& file, bool as_json) {
    char* out = nullptr;
    check(ql_snf_json(read_input(file).c_str(), &out));
    json j = json::parse(take(out));
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::cout << "invariant factors  " << j["diag"].dump() << '\n';
    print_matrix("D", j["D"]);
    print_matrix("U", j["U"]);
    print_matrix("V", j["V"]);
    return 0;
}

int cmd_jordan(const std::string& file, long p, const std::string& gram_file, bool as_json) {
    std::string m = read_input(file);
    std::string g = gram_file.empty() ? "" : read_input(gram_file);
    char* out = nullptr;
    check(ql_jordan_json(m.c_str(), p, gram_file.empty() ? nullptr : g.c_str(), &out));
    json j = json::parse(take(out));
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::vector<std::pair<std::string, std::string>> rows{{"prime", cell(j["p"])}, {"profile", cell(j["str"])}};
    for (auto it = j["blocks"].begin(); it != j["blocks"].end(); ++it) rows.push_back({"l_" + it.key(), cell(it.value())});
    if (j.contains("l1+")) rows.push_back({"l_1+", cell(j["l1+"])});
    if (j.contains("l1-")) rows.push_back({"l_1-", cell(j["l1-"])});
    if (j.contains("a_invariant")) rows.push_back({"a_G", cell(j["a_invariant"])});
    print_fields(rows);
    if (j.contains("invariant")) print_matrix("invariant lattice", j["invariant"]["gram"]);
    return 0;
}

int cmd_normality(const std::string& ref, const std::string& criterion, bool as_json) {
    Scenario s;
    check(ql_scenario_load(ref.c_str(), &s.h));
    char* out = nullptr;
    ql_verdict v = QL_UNKNOWN;
    check(ql_normality_json(s.h, criterion.c_str(), &out, &v));
    json j = json::parse(take(out));
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::string alpha = "[" + cell(j["alpha"][0]) + ", " + (j["alpha"][1].is_null() ? "?" : cell(j["alpha"][1])) + "]";
    std::vector<std::pair<std::string, std::string>> rows{{"scenario", cell(j["scenario"])},
                                                          {"verdict", cell(j["verdict"])},
                                                          {"criterion", cell(j["criterion"])},
                                                          {"degree", cell(j["degree"])},
                                                          {"alpha", alpha}};
    if (!j["chain"].is_null())
        rows.push_back({"chain", cell(j["chain"][0]) + " >= " + cell(j["chain"][1]) + " >= " + cell(j["chain"][2])});
    print_fields(rows);
    for (const auto& h : j["hypotheses"])
        std::cout << "  [" << (h["holds"].get<bool>() ? "x" : " ") << "] " << cell(h["name"])
                  << (cell(h["detail"]).empty() ? "" : "  (" + cell(h["detail"]) + ")") << '\n';
    for (const auto& n : j["notes"]) std::cout << "  note: " << cell(n) << '\n';
    return 0;
}

int cmd_quotient(const std::string& ref, bool as_json) {
    Scenario s;
    check(ql_scenario_load(ref.c_str(), &s.h));
    char* out = nullptr;
    check(ql_quotient_json(s.h, &out));
    json j = json::parse(take(out));
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    print_fields({{"scenario", cell(j["scenario"])},
                  {"prime", cell(j["prime"])},
                  {"form", cell(j["form"])},
                  {"invariant lattice", cell(j["invariant"]["summary"])}});
    if (j["form"] == "bb")
        print_fields({{"glue", cell(j["glue"]["source"]) + ", " + cell(j["glue"]["note"])},
                      {"index", cell(j["index"])},
                      {"scale", cell(j["scale"])},
                      {"fujiki C", cell(j["fujiki"])}});
    print_matrix("quotient gram", j["gram"]);
    print_invariants(j["quotient"]);
    return 0;
}

std::vector<long> parse_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Failure{QL_INVALID_ARGUMENT, "bad exponent '" + item + "'"};
        }
    }
    return out;
}

int cmd_weight(const std::string& exps, long p, bool as_json) {
    std::vector<long> k = parse_list(exps);
    char* out = nullptr;
    check(ql_weight_json(p, k.data(), k.size(), &out));
    json j = json::parse(take(out));
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    print_fields({{"point", cell(j["point"])},
                  {"canonical", cell(j["canonical"])},
                  {"type", cell(j["type"])},
                  {"quotient smooth", j["quotient_smooth"].get<bool>() ? "yes" : "no"},
                  {"weight", j["known"].get<bool>() ? cell(j["weight"]) : "unknown " + j["weight"].dump()}});
    return 0;
}

int cmd_weight2d(long p, long q, bool as_json) {
    char* out = nullptr;
    check(ql_weight2d_json(p, q, &out));
    json j = json::parse(take(out));
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    print_fields({{"singularity", "1/" + cell(j["p"]) + "(1," + cell(j["q"]) + ")"},
                  {"HJ", j["hj"].dump()},
                  {"resolution rays", j["resolution_rays"].dump()},
                  {"complete fan", j["complete_fan"].dump()},
                  {"self-intersections", j["self_intersection"].dump()},
                  {"case", cell(j["case"])},
                  {"log_p discr Im g", cell(j["log_discr_im_g"])},
                  {"rktor H^3(closure,U'')", cell(j["rktor_h3_rel"])},
                  {"rktor H^2(U'')", cell(j["rktor_h2_u"])},
                  {"rktor H^2(resolution)", cell(j["rktor_h2_res"])},
                  {"weight", cell(j["weight"])},
                  {"weight (other compactification)", cell(j["alternative_weight"])}});
    return 0;
}

int cmd_hilb2(const std::string& gram_file, const std::string& x, const std::string& y, bool s_lattice, bool as_json) {
    std::string g = gram_file.empty() ? "" : read_input(gram_file);
    const char* gram = gram_file.empty() ? nullptr : g.c_str();
    char* out = nullptr;
    if (s_lattice) {
        check(ql_hilb2_s_lattice_json(gram, &out));
        json j = json::parse(take(out));
        if (as_json) {
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        std::string basis;
        for (const auto& b : j["basis"]) basis += (basis.empty() ? "" : ", ") + cell(b);
        print_fields({{"basis", basis}, {"det", cell(j["det"])}});
        print_matrix("gram", j["gram"]);
        return 0;
    }
    if (x.empty() || y.empty()) throw Failure{QL_INVALID_ARGUMENT, "hilb2 needs --x and --y, or --s-lattice"};
    check(ql_hilb2_json(gram, x.c_str(), y.c_str(), &out));
    json j = json::parse(take(out));
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    print_fields({{"B(x,x)", cell(j["bb"]["xx"])},
                  {"B(x,y)", cell(j["bb"]["xy"])},
                  {"B(y,y)", cell(j["bb"]["yy"])},
                  {"x^4", cell(j["products"]["x^4"])},
                  {"x^2 y^2", cell(j["products"]["x^2y^2"])},
                  {"(xy).(xy)", cell(j["products"]["xy.xy"])}});
    for (const char* key : {"xx", "xy", "yy"}) {
        std::string terms;
        for (const auto& t : j["cup"][key]) terms += (terms.empty() ? "" : " + ") + cell(t["coeff"]) + "*" + cell(t["basis"]);
        std::cout << key << " = " << (terms.empty() ? "0" : terms) << '\n';
    }
    return 0;
}

int cmd_verify_scenario(const std::string& ref, bool as_json) {
    Scenario s;
    check(ql_scenario_load(ref.c_str(), &s.h));
    char* out = nullptr;
    int pass = 0;
    check(ql_scenario_verify(s.h, as_json ? QL_FORMAT_JSON : QL_FORMAT_TABLE, &out, &pass));
    std::cout << take(out);
    return pass ? 0 : 1;
}

int cmd_verify_paper(const std::string& filter, bool as_json, unsigned threads) {
    char* out = nullptr;
    int pass = 0;
    check(ql_verify_catalog(filter.empty() ? nullptr : filter.c_str(), as_json ? QL_FORMAT_JSON : QL_FORMAT_TABLE,
                            threads, &out, &pass));
    std::cout << take(out);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral cohomology of quotients by prime-order automorphisms"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ql_version()));
    std::string format = "table";
    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
    };

    std::string lattice_arg;
    bool invariants = false;
    long quotient_p = 0;
    auto* lattice = app.add_subcommand("lattice", "parse a lattice expression or Gram file");
    lattice->add_option("lattice", lattice_arg, "expression, JSON Gram, or a file containing either")->required();
    lattice->add_flag("--invariants", invariants, "print rank, det, signature and discriminant group");
    lattice->add_option("--quotient", quotient_p, "print L^v(p) instead");
    add_format(lattice);

    std::string matrix_file;
    auto* snf = app.add_subcommand("snf", "Smith normal form of a JSON matrix");
    snf->add_option("file", matrix_file, "JSON matrix, file or - for stdin")->required();
    add_format(snf);

    std::string gram_file;
    long prime = 0;
    auto* jordan = app.add_subcommand("jordan", "Jordan profile of a prime-order action");
    jordan->add_option("--matrix", matrix_file, "JSON action matrix or file (column convention)")->required();
    jordan->add_option("--prime", prime, "order of the action")->required();
    jordan->add_option("--gram", gram_file, "preserved Gram matrix");
    add_format(jordan);

    std::string scenario, criterion = "auto";
    auto* normality = app.add_subcommand("normality", "run the normality certificates on a scenario");
    normality->add_option("scenario", scenario, "scenario file or catalog name")->required();
    normality->add_option("--criterion", criterion, "auto|simple|surface|main|th3|maintori|witness")
        ->check(CLI::IsMember({"auto", "simple", "surface", "main", "th3", "maintori", "witness"}));
    add_format(normality);

    auto* quotient = app.add_subcommand("quotient", "quotient lattice of a scenario");
    quotient->add_option("scenario", scenario, "scenario file or catalog name")->required();
    add_format(quotient);

    std::string exponents;
    auto* weight = app.add_subcommand("weight", "weight of an isolated fixed point");
    weight->add_option("--exponents", exponents, "comma-separated exponents k1,...,kn")->required();
    weight->add_option("--prime", prime, "order of the group")->required();
    add_format(weight);

    long p2 = 0, q2 = 0;
    auto* weight2d = app.add_subcommand("weight2d", "toric weight of 1/p(1,q)");
    weight2d->add_option("p", p2, "prime")->required();
    weight2d->add_option("q", q2, "exponent in [1, p-1]")->required();
    add_format(weight2d);

    std::string x, y;
    bool s_lattice = false;
    auto* hilb2 = app.add_subcommand("hilb2", "cup products and pairings on S^[2]");
    hilb2->add_option("--gram", gram_file, "unimodular Gram of H^2(S); default U^3+E8(-1)^2");
    hilb2->add_option("--x", x, "JSON class: H^2(S) coordinates then the delta coefficient");
    hilb2->add_option("--y", y, "second class, same layout");
    hilb2->add_flag("--s-lattice", s_lattice, "print the 7x7 S-lattice Gram and determinant");
    add_format(hilb2);

    auto* verify = app.add_subcommand("verify", "check a scenario's expected block");
    verify->add_option("scenario", scenario, "scenario file or catalog name")->required();
    add_format(verify);

    std::string filter;
    unsigned threads = 0;
    auto* verify_paper = app.add_subcommand("verify-paper", "recompute every catalog entry");
    verify_paper->add_option("--filter", filter, "case-insensitive substring of a name or alias");
    verify_paper->add_option("--threads", threads, "worker threads, 0 for all cores");
    add_format(verify_paper);

    CLI11_PARSE(app, argc, argv);
    bool as_json = format == "json";
    try {
        if (*lattice) return cmd_lattice(lattice_arg, invariants, quotient_p, as_json);
        if (*snf) return cmd_snf(matrix_file, as_json);
        if (*jordan) return cmd_jordan(matrix_file, prime, gram_file, as_json);
        if (*normality) return cmd_normality(scenario, criterion, as_json);
        if (*quotient) return cmd_quotient(scenario, as_json);
        if (*weight) return cmd_weight(exponents, prime, as_json);
        if (*weight2d) return cmd_weight2d(p2, q2, as_json);
        if (*hilb2) return cmd_hilb2(gram_file, x, y, s_lattice, as_json);
        if (*verify) return cmd_verify_scenario(scenario, as_json);
        if (*verify_paper) return cmd_verify_paper(filter, as_json, threads);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed library output: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
