#include "radial/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <thread>

#include "radial/errors.hpp"
#include "radial/matrix_elements.hpp"

namespace radial {

IntRange parse_range(const std::string& s) {
    try {
        size_t dots = s.find("..");
        size_t pos = 0;
        if (dots == std::string::npos) {
            int v = std::stoi(s, &pos);
            if (pos != s.size()) throw ConfigError("");
            return {v, v};
        }
        std::string a = s.substr(0, dots), b = s.substr(dots + 2);
        IntRange r{std::stoi(a, &pos), 0};
        if (pos != a.size()) throw ConfigError("");
        r.hi = std::stoi(b, &pos);
        if (pos != b.size()) throw ConfigError("");
        if (r.hi < r.lo) throw ConfigError("");
        return r;
    } catch (const std::exception&) {
        throw ConfigError("bad range '" + s + "' (expected a or a..b with a <= b)");
    }
}

void SuiteConfig::validate() const {
    radial::validate(params);
    static const std::vector<std::string> pots = {"coulomb", "oscillator", "kratzer", "inverse-square", "tabulated"};
    if (std::find(pots.begin(), pots.end(), potential) == pots.end()) throw ConfigError("unknown potential '" + potential + "'");
    if (potential == "tabulated" && table.empty()) throw ConfigError("tabulated potential needs --table");
    if (mode != "classic" && mode != "modified" && mode != "both") throw ConfigError("mode must be classic, modified or both");
    if (formulation != "commutator" && formulation != "bracket" && formulation != "both")
        throw ConfigError("formulation must be commutator, bracket or both");
    if (base != "none" && base != "coulomb" && base != "oscillator") throw ConfigError("base must be none, coulomb or oscillator");
    if (tol && !(*tol > 0.0)) throw ConfigError("tolerance must be positive");
    if (samples <= 0) throw ConfigError("samples must be positive");
    if (!(grid.step > 0.0) || !(grid.r_min_factor > 0.0)) throw ConfigError("grid step and r_min factor must be positive");
    if (n && n->lo < 1) throw ConfigError("n starts at 1");
    if (n_r && n_r->lo < 0) throw ConfigError("n_r must be non-negative");
    if (l && l->lo < 0) throw ConfigError("l must be non-negative");
    if (!(e2 > 0.0) || !(omega > 0.0)) throw ConfigError("e2 and omega must be positive");
}

Potential build_potential(const SuiteConfig& c) {
    const PhysicalParams& p = c.params;
    if (c.potential == "coulomb") return make_coulomb(c.e2, p);
    if (c.potential == "oscillator") return make_oscillator(c.omega, p);
    if (c.potential == "kratzer") return make_kratzer(c.e2, c.v0, p);
    if (c.potential == "inverse-square") {
        std::optional<BasePotential> b;
        if (c.base == "coulomb") b = Coulomb{c.e2};
        if (c.base == "oscillator") b = Oscillator{c.omega};
        return make_inverse_square(c.v0, b, p);
    }
    return load_tabulated(c.table, p);
}

std::vector<std::pair<int, int>> select_states(const SuiteConfig& c) {
    std::vector<std::pair<int, int>> out;
    IntRange lr = c.l.value_or(IntRange{0, max_l});
    if (c.potential == "coulomb" && !c.n_r) {
        IntRange nr = c.n.value_or(IntRange{1, 1});
        for (int n = nr.lo; n <= nr.hi; ++n)
            for (int l = lr.lo; l <= std::min(lr.hi, n - 1); ++l) out.push_back({n - l - 1, l});
        return out;
    }
    IntRange nr = c.n_r.value_or(IntRange{0, 0});
    IntRange ls = c.l.value_or(IntRange{0, 0});
    for (int k = nr.lo; k <= nr.hi; ++k)
        for (int l = ls.lo; l <= ls.hi; ++l) out.push_back({k, l});
    return out;
}

RadialState build_state(const SuiteConfig& c, const Potential& V, int n_r, int l) {
    if (!c.numeric) {
        if (std::holds_alternative<Coulomb>(V.kind)) return make_coulomb_state(n_r + l + 1, l, c.e2, c.params);
        if (std::holds_alternative<Oscillator>(V.kind)) return make_oscillator_state(n_r, l, c.omega, c.params);
    }
    return solve_bound_state(V, l, n_r, c.params, c.grid);
}

std::map<std::string, double> param_map(const SuiteConfig& c) {
    std::map<std::string, double> m = {{"hbar", c.params.hbar}, {"mass", c.params.mass}};
    if (c.potential == "coulomb" || c.potential == "kratzer" || c.base == "coulomb") m["e2"] = c.e2;
    if (c.potential == "oscillator" || c.base == "oscillator") m["omega"] = c.omega;
    if (c.potential == "kratzer" || c.potential == "inverse-square") m["v0"] = c.v0;
    return m;
}

int worker_count() {
    int hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* e = std::getenv("RADIAL_THEOREMS_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (end != e && *end == '\0' && v > 0) return int(std::min<long>(v, hw));
    }
    return hw;
}

namespace {

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    int workers = std::min<int>(worker_count(), int(n));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i; (i = next++) < n;) body(i);
        });
    for (auto& t : pool) t.join();
}

struct Case {
    CaseKey key;
    std::function<Report()> run;
};

// states shared between cases, built once
struct StateSlot {
    std::function<RadialState()> make;
    std::shared_ptr<RadialState> state;
    std::string error_kind, error;
};

using StateRef = std::shared_ptr<StateSlot>;

const RadialState& get(const StateRef& s) {
    if (!s->state) {
        if (!s->error.empty()) throw Error(s->error_kind + ": " + s->error);
        throw Error("state unavailable");
    }
    return *s->state;
}

void retolerance(Report& rep, double tol) {
    std::visit(
        [&](auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SumRuleReport>) {
                r.tolerance = tol;
                r.pass = r.scale > 0 ? std::abs(r.residual) <= tol * r.scale : r.residual == 0.0;
            } else if constexpr (std::is_same_v<T, ForceBalanceReport>) {
                r.tolerance = tol;
                r.pass = r.scale > 0 ? std::abs(r.balance) <= tol * r.scale : r.balance == 0.0;
            } else if constexpr (std::is_same_v<T, TimeDerivativeReport>) {
                r.tolerance = tol;
                r.pass = true;
                for (const auto& s : r.samples) r.pass = r.pass && std::abs(s.residual) <= tol * s.scale;
            } else if constexpr (std::is_same_v<T, BracketReport> || std::is_same_v<T, SolveReport>) {
                r.tolerance = tol;
            }
        },
        rep);
}

double exact_energy(const SuiteConfig& c, const RadialState& st) {
    const double hb = c.params.hbar, m = c.params.mass;
    const double P = st.origin.P;
    if (c.potential == "coulomb" || c.potential == "kratzer" || (c.potential == "inverse-square" && c.base == "coulomb"))
        return -m * c.e2 * c.e2 / (2.0 * hb * hb * std::pow(st.n_r + 0.5 + P, 2));
    if (c.potential == "oscillator" || (c.potential == "inverse-square" && c.base == "oscillator"))
        return hb * c.omega * (2.0 * st.n_r + P + 1.0);
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SolveReport make_solve_report(const SuiteConfig& c, const RadialState& s) {
    SolveReport r;
    r.key = {"solve", s.potential.describe(), s.n_r, s.l, "", s.analytic() ? "analytic" : "numeric"};
    r.energy = s.energy;
    r.exact_energy = exact_energy(c, s);
    r.P = s.origin.P;
    r.leading_coeff = s.origin.leading_coeff;
    r.tolerance = s.origin.regular ? 1e-6 : tol_numeric;
    r.pass = std::isnan(r.exact_energy) || std::abs(r.energy - r.exact_energy) <= r.tolerance * std::abs(r.exact_energy);
    return r;
}

namespace {

CaseKey base_key(const RadialState& st, std::string theorem, std::string s_or_f, std::string mode) {
    return {std::move(theorem), st.potential.describe(), st.n_r, st.l, std::move(s_or_f), std::move(mode)};
}

BracketReport bracket_case(const RadialState& st, const OperatorSpec& op) {
    BracketReport r;
    r.key = base_key(st, "bracket", op.describe(), st.analytic() ? "analytic" : "numeric");
    PiResult pa = pi_analytic(st.origin, op, st.params);
    r.analytic_verdict = pa.verdict;
    r.pi_analytic = pa.value;
    r.exponent_margin = pa.exponent_margin;
    double L = st.potential.natural_length(st.params);
    double lo = st.analytic() ? 1e-6 * L : std::max(1e-6 * L, st.grid().r_min());
    BracketResult b = boundary_bracket_numeric(st, op, radius_ladder(1e-2 * L, lo));
    r.numeric_verdict = b.verdict;
    r.pi_numeric = b.pi;
    r.fitted_margin = b.fitted_margin;
    if (!st.analytic()) r.tolerance = tol_numeric;
    double sc = std::max(std::abs(r.pi_analytic), std::abs(r.pi_numeric));
    r.pass = r.analytic_verdict == r.numeric_verdict &&
             (r.analytic_verdict != PiVerdict::Finite || std::abs(r.pi_numeric - r.pi_analytic) <= r.tolerance * sc);
    return r;
}

// classic rule at the delta point: its residual must be minus the modified boundary value
SumRuleReport classic_signature(const RadialState& st, int s) {
    SumRuleReport c = kramers(st, s, KramersMode::Classic);
    SumRuleReport m = kramers(st, s, KramersMode::Modified);
    SumRuleReport r;
    r.key = c.key;
    r.key.mode = "classic-signature";
    r.lhs_terms = {{"classic residual", c.residual}};
    r.rhs_boundary = -m.rhs_boundary;
    r.delta_triggered = true;
    r.tolerance = tol_closed;
    r.residual = c.residual - r.rhs_boundary;
    r.scale = std::max(std::abs(c.residual), std::abs(r.rhs_boundary));
    r.pass = std::abs(r.residual) <= r.tolerance * r.scale;
    return r;
}

struct Builder {
    const SuiteConfig& cfg;
    std::vector<StateRef> slots;
    std::vector<Case> cases;

    StateRef state(std::function<RadialState()> make) {
        auto s = std::make_shared<StateSlot>();
        s->make = std::move(make);
        slots.push_back(s);
        return s;
    }

    // key used when the state itself could not be built
    void add(CaseKey key, std::function<Report()> run) { cases.push_back({std::move(key), std::move(run)}); }

    void kramers_cases(const StateRef& st, const std::string& pot, int n_r, int l, IntRange s, const std::string& mode,
                       bool signature) {
        for (int k = std::max(s.lo, -(2 * l + 1)); k <= s.hi; ++k) {
            bool delta = k == -(2 * l + 1);
            if (mode != "classic")
                add({"kramers", pot, n_r, l, std::to_string(k), "modified"},
                    [=] { return Report(kramers(get(st), k, KramersMode::Modified)); });
            if (mode != "modified") {
                if (delta && signature)
                    add({"kramers", pot, n_r, l, std::to_string(k), "classic-signature"},
                        [=] { return Report(classic_signature(get(st), k)); });
                else
                    add({"kramers", pot, n_r, l, std::to_string(k), "classic"},
                        [=] { return Report(kramers(get(st), k, KramersMode::Classic)); });
            }
        }
    }
};

void command_cases(Builder& b, const SuiteConfig& c) {
    Potential V = build_potential(c);
    std::string pot = V.describe();
    auto states = select_states(c);
    if (states.empty()) throw ConfigError("no states selected");
    std::map<std::pair<int, int>, StateRef> refs;
    for (auto [n_r, l] : states) refs[{n_r, l}] = b.state([=] { return build_state(c, V, n_r, l); });
    const std::string& cmd = c.command;

    for (auto [n_r, l] : states) {
        StateRef st = refs[{n_r, l}];
        if (cmd == "solve") {
            b.add({"solve", pot, n_r, l, "", "numeric"}, [=, &c] { return Report(make_solve_report(c, get(st))); });
        } else if (cmd == "kramers") {
            b.kramers_cases(st, pot, n_r, l, c.s, c.mode, false);
        } else if (cmd == "hypervirial") {
            if (c.f_specs.empty()) {
                for (int k = c.s.lo; k <= c.s.hi; ++k)
                    b.add({"hypervirial_power", pot, n_r, l, std::to_string(k), ""}, [=, &c] {
                        const RadialState& s = get(st);
                        return Report(c.numeric ? verify_numeric(s, k) : hypervirial_power(s, k));
                    });
            } else {
                for (const auto& fs : c.f_specs) {
                    LaurentPoly f = parse_laurent(fs);
                    for (auto form : {Formulation::Commutator, Formulation::Bracket}) {
                        std::string fn = form == Formulation::Commutator ? "commutator" : "bracket";
                        if (c.formulation != "both" && c.formulation != fn) continue;
                        b.add({"hypervirial", pot, n_r, l, f.str(), fn},
                              [=] { return Report(hypervirial_general(get(st), f, form)); });
                    }
                }
            }
        } else if (cmd == "ehrenfest") {
            b.add({"ehrenfest", pot, n_r, l, "pr", "radial"}, [=] { return Report(ehrenfest_radial(get(st))); });
            b.add({"ehrenfest", pot, n_r, l, "r", "coordinate"}, [=] { return Report(ehrenfest_coordinate(get(st))); });
        } else if (cmd == "bracket") {
            OperatorSpec op = parse_operator(c.op);
            b.add({"bracket", pot, n_r, l, op.describe(), ""}, [=] { return Report(bracket_case(get(st), op)); });
        } else if (cmd == "contact") {
            if (l == 0) b.add({"contact", pot, n_r, 0, "", ""}, [=] { return Report(contact_density_check(get(st))); });
        }
    }
    if (cmd == "timederiv") {
        OperatorSpec op = parse_operator(c.op);
        // ground state of each l paired with every excited state of the same l
        for (auto [n_r, l] : states) {
            if (n_r == 0) continue;
            auto g = refs.find({0, l});
            if (g == refs.end()) continue;
            StateRef a = g->second, bb = refs[{n_r, l}];
            int samples = c.samples;
            b.add({"timederiv", pot, 0, l, op.describe(), std::to_string(n_r)}, [=] {
                const RadialState& x = get(a);
                const RadialState& y = get(bb);
                return Report(time_derivative_check(x, y, op, beat_times(x, y, samples)));
            });
        }
    }
}

void full_matrix(Builder& b, const SuiteConfig& c) {
    const PhysicalParams p = c.params;
    Potential coul = make_coulomb(c.e2, p), osc = make_oscillator(c.omega, p);
    std::string cp = coul.describe(), op = osc.describe();
    std::map<std::pair<int, int>, StateRef> cs, os;
    for (int n = 1; n <= 5; ++n)
        for (int l = 0; l < n; ++l) cs[{n - l - 1, l}] = b.state([=] { return make_coulomb_state(n, l, c.e2, p); });
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l) os[{k, l}] = b.state([=] { return make_oscillator_state(k, l, c.omega, p); });

    auto each = [&](auto& m, const std::string& pot, auto fn) {
        for (auto& [key, st] : m) fn(pot, key.first, key.second, st);
    };
    auto sweep = [&](const std::string& pot, int n_r, int l, const StateRef& st) {
        b.kramers_cases(st, pot, n_r, l, {-(2 * l + 1), 4}, "both", true);
        if (l == 0) b.add({"contact", pot, n_r, 0, "", ""}, [=] { return Report(contact_density_check(get(st))); });
    };
    each(cs, cp, sweep);
    each(os, op, sweep);

    auto forces = [&](const std::string& pot, int n_r, int l, const StateRef& st) {
        if (n_r + l > 2) return;
        b.add({"ehrenfest", pot, n_r, l, "pr", "radial"}, [=] { return Report(ehrenfest_radial(get(st))); });
        b.add({"ehrenfest", pot, n_r, l, "r", "coordinate"}, [=] { return Report(ehrenfest_coordinate(get(st))); });
        for (std::string fs : {"1:0", "1:1", "1:3,-2:1", "1:2,1:-1"}) {
            if (l == 0 && fs == "1:2,1:-1") continue;
            LaurentPoly f = parse_laurent(fs);
            for (auto form : {Formulation::Commutator, Formulation::Bracket})
                b.add({"hypervirial", pot, n_r, l, f.str(), form == Formulation::Commutator ? "commutator" : "bracket"},
                      [=] { return Report(hypervirial_general(get(st), f, form)); });
        }
        for (int s = -(2 * l + 1); s <= 2; ++s)
            b.add({"hypervirial_power", pot, n_r, l, std::to_string(s), ""},
                  [=] { return Report(hypervirial_power(get(st), s)); });
        b.add({"bracket", pot, n_r, l, "pr", ""}, [=] { return Report(bracket_case(get(st), OperatorSpec::pr())); });
    };
    each(cs, cp, forces);
    each(os, op, forces);

    StateRef s1 = cs[{0, 0}], s2 = cs[{1, 0}];
    for (auto opspec : {OperatorSpec::coordinate(), OperatorSpec::pr()})
        b.add({"timederiv", cp, 0, 0, opspec.describe(), "1"}, [=] {
            return Report(time_derivative_check(get(s1), get(s2), opspec, beat_times(get(s1), get(s2), 16)));
        });

    // numeric pipeline
    SuiteConfig nc = c;
    nc.numeric = true;
    Potential kr = make_kratzer(c.e2, c.v0, p);
    std::string kp = kr.describe();
    auto solved = [&](const Potential& V, const std::string& pot, int n_r, int l) {
        StateRef st = b.state([=] { return solve_bound_state(V, l, n_r, p, c.grid); });
        SuiteConfig sc = nc;
        sc.potential = std::holds_alternative<Coulomb>(V.kind)      ? "coulomb"
                       : std::holds_alternative<Oscillator>(V.kind) ? "oscillator"
                                                                    : "kratzer";
        b.add({"solve", pot, n_r, l, "", "numeric"}, [=] { return Report(make_solve_report(sc, get(st))); });
        return st;
    };
    StateRef h1 = solved(coul, cp, 0, 0);
    StateRef h2 = solved(coul, cp, 0, 1);
    solved(osc, op, 0, 0);
    solved(osc, op, 1, 1);
    StateRef k1 = solved(kr, kp, 0, 1);
    b.add({"verify_numeric", cp, 0, 0, "-1", "regular"}, [=] { return Report(verify_numeric(get(h1), -1)); });
    b.add({"verify_numeric", cp, 0, 1, "-3", "regular"}, [=] { return Report(verify_numeric(get(h2), -3)); });
    b.add({"verify_numeric", kp, 0, 1, "0", "soft-singular"}, [=] { return Report(verify_numeric(get(k1), 0)); });
    b.add({"ehrenfest", kp, 0, 1, "pr", "radial"}, [=] { return Report(ehrenfest_radial(get(k1))); });
}

}  // namespace

std::vector<ReportEntry> run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    Builder b{cfg, {}, {}};
    if (cfg.command == "suite")
        full_matrix(b, cfg);
    else
        command_cases(b, cfg);

    parallel_for(b.slots.size(), [&](size_t i) {
        auto& s = *b.slots[i];
        try {
            s.state = std::make_shared<RadialState>(s.make());
        } catch (const std::exception& e) {
            s.error_kind = error_kind(e);
            s.error = e.what();
        }
    });

    std::vector<Report> out(b.cases.size(), CaseError{});
    parallel_for(b.cases.size(), [&](size_t i) {
        const Case& c = b.cases[i];
        try {
            out[i] = c.run();
            if (cfg.tol) retolerance(out[i], *cfg.tol);
        } catch (const std::exception& e) {
            out[i] = CaseError{c.key, error_kind(e), e.what()};
        }
    });

    std::vector<ReportEntry> entries;
    auto params = param_map(cfg);
    if (cfg.command == "suite") params = {{"hbar", cfg.params.hbar}, {"mass", cfg.params.mass}, {"e2", cfg.e2},
                                          {"omega", cfg.omega}, {"v0", cfg.v0}};
    for (auto& r : out) entries.push_back({std::move(r), params});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ReportEntry& a, const ReportEntry& b) { return key_less(report_key(a.report), report_key(b.report)); });
    return entries;
}

}  // namespace radial
