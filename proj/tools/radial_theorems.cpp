// radial_theorems: boundary-term sum rules for radial Schrodinger states

#include <CLI11.hpp>
#include <iostream>

#include "radial/errors.hpp"
#include "radial/suite.hpp"

using namespace radial;

namespace {

struct Flags {
    std::string n, nr, l, s = "0";
    std::string format = "table", out, dump;
    double tol = 0.0;
};

void add_common(CLI::App* sub, SuiteConfig& cfg, Flags& fl) {
    sub->add_option("--potential", cfg.potential, "coulomb | oscillator | kratzer | inverse-square | tabulated");
    sub->add_option("--e2", cfg.e2, "Coulomb strength");
    sub->add_option("--omega", cfg.omega, "oscillator frequency");
    sub->add_option("--v0", cfg.v0, "inverse-square strength (attractive > 0)");
    sub->add_option("--base", cfg.base, "base of an inverse-square potential: none | coulomb | oscillator");
    sub->add_option("--table", cfg.table, "two-column r V file for a tabulated potential");
    sub->add_option("--hbar", cfg.params.hbar);
    sub->add_option("--mass", cfg.params.mass);
    sub->add_option("--n", fl.n, "principal quantum number range, a..b (Coulomb)");
    sub->add_option("--nr,--nodes", fl.nr, "radial quantum number range");
    sub->add_option("--l", fl.l, "angular momentum range");
    sub->add_option("--format", fl.format, "table | json | csv");
    sub->add_option("--out", fl.out, "write the report here instead of stdout");
    sub->add_option("--tol", fl.tol, "override the default tolerance");
    sub->add_flag("--numeric", cfg.numeric, "use Numerov states instead of closed forms");
    sub->add_option("--step", cfg.grid.step, "Numerov step in ln r");
    sub->add_option("--rmin-factor", cfg.grid.r_min_factor, "inner radius in natural lengths");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verify boundary-term corrected sum rules for radial states"};
    app.require_subcommand(1);
    SuiteConfig cfg;
    Flags fl;

    auto* solve = app.add_subcommand("solve", "Numerov bound states");
    add_common(solve, cfg, fl);
    solve->add_option("--dump", fl.dump, "write the grid (r, u, R) to this path");

    auto* kr = app.add_subcommand("kramers", "classic and modified Kramers relations");
    add_common(kr, cfg, fl);
    kr->add_option("--s", fl.s, "power range, a..b");
    kr->add_option("--mode", cfg.mode, "classic | modified | both");

    auto* hv = app.add_subcommand("hypervirial", "general hypervirial theorem (--f) or the power form (--s)");
    add_common(hv, cfg, fl);
    hv->add_option("--s", fl.s, "power range, a..b");
    hv->add_option("--f", cfg.f_specs, "Laurent polynomial f, e.g. 1:3,-2:1")->take_all();
    hv->add_option("--formulation", cfg.formulation, "commutator | bracket | both");

    auto* eh = app.add_subcommand("ehrenfest", "radial momentum and coordinate Ehrenfest balances");
    add_common(eh, cfg, fl);

    auto* br = app.add_subcommand("bracket", "boundary term: exponent rule against the numeric bracket");
    add_common(br, cfg, fl);
    br->add_option("--op", cfg.op, "pr | r | f:<laurent> | prf:<laurent> | fpr:<laurent>");

    auto* ct = app.add_subcommand("contact", "contact density relation for l = 0 states");
    add_common(ct, cfg, fl);

    auto* td = app.add_subcommand("timederiv", "time-derivative identity on two-state superpositions");
    add_common(td, cfg, fl);
    td->add_option("--op", cfg.op, "operator");
    td->add_option("--samples", cfg.samples, "times per beat period");

    auto* su = app.add_subcommand("suite", "the full verification matrix");
    su->add_option("--e2", cfg.e2);
    su->add_option("--omega", cfg.omega);
    su->add_option("--v0", cfg.v0);
    su->add_option("--hbar", cfg.params.hbar);
    su->add_option("--mass", cfg.params.mass);
    su->add_option("--format", fl.format, "table | json | csv");
    su->add_option("--out", fl.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!fl.n.empty()) cfg.n = parse_range(fl.n);
        if (!fl.nr.empty()) cfg.n_r = parse_range(fl.nr);
        if (!fl.l.empty()) cfg.l = parse_range(fl.l);
        cfg.s = parse_range(fl.s);
        if (fl.tol != 0.0) cfg.tol = fl.tol;
        if (cfg.command == "solve") cfg.numeric = true;
        Format fmt = parse_format(fl.format);
        cfg.validate();

        std::vector<ReportEntry> reports;
        if (cfg.command == "solve" && !fl.dump.empty()) {
            Potential V = build_potential(cfg);
            auto states = select_states(cfg);
            for (auto [n_r, l] : states) {
                RadialState st = build_state(cfg, V, n_r, l);
                std::string path = fl.dump;
                if (states.size() > 1) path += "." + std::to_string(n_r) + "_" + std::to_string(l);
                write_grid_dump(st, path);
                reports.push_back({make_solve_report(cfg, st), param_map(cfg)});
            }
        } else {
            reports = run_suite(cfg);
        }

        if (fl.out.empty())
            emit_report(reports, fmt, std::cout);
        else
            write_report(reports, fmt, fl.out);

        bool all = true;
        for (const auto& r : reports) all = all && report_pass(r.report);
        return all ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
