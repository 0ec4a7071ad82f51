#pragma once

#include <optional>
#include <string>
#include <vector>

#include "radial/numerov.hpp"
#include "radial/report.hpp"

namespace radial {

struct IntRange {
    int lo = 0, hi = 0;
};
// "3" or "1..5" or "-7..4"
IntRange parse_range(const std::string& s);

struct SuiteConfig {
    std::string command = "suite";  // solve kramers hypervirial ehrenfest bracket contact timederiv suite
    std::string potential = "coulomb";  // coulomb oscillator kratzer inverse-square tabulated
    double e2 = 1.0, omega = 1.0, v0 = 1.0;
    std::string base = "none";  // base of an inverse-square potential: none coulomb oscillator
    std::string table;          // path of a tabulated potential
    PhysicalParams params;

    std::optional<IntRange> n, n_r, l;
    IntRange s{0, 0};
    std::string mode = "both";         // classic modified both
    std::vector<std::string> f_specs;  // Laurent specs
    std::string formulation = "both";  // commutator bracket both
    std::string op = "pr";
    bool numeric = false;
    std::optional<double> tol;
    int samples = 16;
    GridConfig grid;

    void validate() const;
};

Potential build_potential(const SuiteConfig& cfg);
// every (n_r, l) pair selected by the config for its potential
std::vector<std::pair<int, int>> select_states(const SuiteConfig& cfg);
RadialState build_state(const SuiteConfig& cfg, const Potential& V, int n_r, int l);

// numeric energy against the closed-form spectrum when one exists
SolveReport make_solve_report(const SuiteConfig& cfg, const RadialState& st);

std::map<std::string, double> param_map(const SuiteConfig& cfg);

// cases run on a pool capped by RADIAL_THEOREMS_THREADS; output sorted by case key
std::vector<ReportEntry> run_suite(const SuiteConfig& cfg);

int worker_count();

}  // namespace radial
