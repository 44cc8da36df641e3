#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "normality.hpp"
#include "quotient.hpp"

namespace ql {

enum class QuotientForm { None, Middle, BeauvilleBogomolov };

struct QuotientSpec {
    QuotientForm form = QuotientForm::None;
    std::optional<GlueSpec> glue;  // explicit rows; auto glue when absent
    std::optional<Rat> fujiki;     // forces the scale
};

struct Expected {
    std::optional<Verdict> verdict;
    std::optional<std::string> criterion;
    std::optional<int> degree;
    std::optional<long> alpha_lo, alpha_hi;
    std::optional<Chain> chain;
    std::optional<std::string> quotient_lattice;  // lattice expression
    bool exact = false;
    std::optional<Rat> fujiki;
    std::optional<BettiNumbers> betti;
    std::optional<long> fixed_count;
    std::optional<std::vector<long>> weights;
};

struct Scenario {
    std::string name;
    std::vector<std::string> aliases;
    std::string family;  // k3, torus, k3[2], other
    std::string title;
    std::string notes;
    PairData pair;
    std::string invariant_expr;
    std::optional<GramLattice> invariant;
    QuotientSpec quotient;
    Expected expected;
    bool fixed_locus_declared = false;  // absent means unknown, not empty
    bool reference_only = false;
    std::string source;  // file path, when loaded from disk

    bool matches(const std::string& key) const;  // name or alias, case-insensitive
};

// SchemaError carries the field path; ConsistencyError covers cross-field checks.
Scenario parse_scenario(const std::string& json_text, const std::string& source = "<string>");
Scenario load_scenario(const std::string& path);

// Catalog directory: $QUOTLAT_CATALOG, else the compiled-in default.
std::string catalog_dir();
std::vector<Scenario> load_catalog(const std::string& dir = catalog_dir());
// Path, catalog name or alias.
Scenario resolve_scenario(const std::string& ref);

}  // namespace ql
