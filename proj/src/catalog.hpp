#pragma once

#include <string>
#include <vector>

#include "scenario.hpp"

namespace ql {

struct CheckRow {
    std::string name;
    bool pass = false;
    std::string got, want, detail;
};

struct ScenarioReport {
    std::string name;
    long p = 0;
    int dim = 0;
    bool reference_only = false;
    std::string quotient;  // short invariant summary of the computed lattice
    std::string fujiki;
    std::string verdict;
    std::string criterion;
    std::vector<CheckRow> checks;

    bool pass() const;
    const CheckRow* first_failure() const;
};

// #Fix predicted from the degree-2 profile of a K3 surface.
long k3_fixed_count(const JordanProfile& h2);

// Never throws: errors become failing rows.
ScenarioReport verify_scenario(const Scenario& s);

// Case-insensitive substring on names and aliases; empty keeps everything.
std::vector<Scenario> filter_catalog(const std::vector<Scenario>& all, const std::string& filter);

// Output order is catalog order.  threads = 0 picks the hardware count.
std::vector<ScenarioReport> verify_all(const std::vector<Scenario>& scenarios, unsigned threads = 0);

std::string render_table(const std::vector<ScenarioReport>& reports);
std::string render_json(const std::vector<ScenarioReport>& reports);

std::string summary_string(const InvariantSummary& s);

}  // namespace ql
