#include "radial/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "radial/errors.hpp"
#include "radial/matrix_elements.hpp"
#include "radial/numerov.hpp"

namespace radial {

double SumRuleReport::lhs_sum() const {
    double s = 0.0;
    for (const auto& t : lhs_terms) s += t.value;
    return s;
}

double default_tolerance(const RadialState& st) { return st.analytic() ? tol_closed : tol_numeric; }

namespace {

constexpr double chop_rel = 1e-12;

struct WeightTerm {
    std::string name;
    LaurentPoly w;
};

void finalize(SumRuleReport& r) {
    r.residual = r.lhs_sum() - r.rhs_boundary;
    r.scale = std::abs(r.rhs_boundary);
    for (const auto& t : r.lhs_terms) r.scale = std::max(r.scale, std::abs(t.value));
    r.pass = r.scale > 0.0 ? std::abs(r.residual) <= r.tolerance * r.scale : r.residual == 0.0;
}

bool weight_integrable(const RadialState& st, const LaurentPoly& w) {
    for (const auto& t : w.terms())
        if (!moment_integrable(st, t.power)) return false;
    return true;
}

std::string power_name(double c, int k) {
    std::ostringstream os;
    os.precision(6);
    os << c << "<r^" << k << ">";
    return os.str();
}

// sum of weights with cancellation judged relative to the contributing magnitudes
LaurentPoly merge_weights(const std::vector<WeightTerm>& terms) {
    std::map<int, std::pair<double, double>> acc;  // power -> (sum, sum |c|)
    for (const auto& t : terms)
        for (const auto& lt : t.w.terms()) {
            auto& a = acc[lt.power];
            a.first += lt.coeff;
            a.second += std::abs(lt.coeff);
        }
    std::vector<LaurentTerm> out;
    for (const auto& [k, a] : acc)
        if (std::abs(a.first) > chop_rel * a.second) out.push_back({a.first, k});
    return LaurentPoly(out);
}

// fills lhs_terms; falls back to one combined integrand when some piece diverges alone
void assemble(SumRuleReport& r, const RadialState& st, const std::vector<WeightTerm>& terms) {
    bool separate = true;
    for (const auto& t : terms) separate = separate && weight_integrable(st, t.w);
    if (separate) {
        for (const auto& t : terms)
            if (!t.w.empty()) r.lhs_terms.push_back({t.name, expectation_weight(st, t.w)});
        return;
    }
    LaurentPoly merged = merge_weights(terms);
    std::vector<int> bad;
    for (const auto& t : merged.terms())
        if (!moment_integrable(st, t.power)) bad.push_back(t.power);
    if (!bad.empty()) {
        std::ostringstream os;
        os << "divergent combination; non-cancelling powers:";
        for (int k : bad) os << " r^" << k;
        throw DivergentIntegral(os.str());
    }
    r.combined_mode = true;
    if (st.analytic()) {
        for (const auto& t : merged.terms())
            r.lhs_terms.push_back({power_name(t.coeff, t.power), t.coeff * moment_closed(st, t.power)});
    } else {
        r.lhs_terms.push_back({"combined", expectation_weight(st, merged)});
    }
}

LaurentPoly require_laurent(const std::optional<LaurentPoly>& V, const char* what) {
    if (!V) throw NotImplemented(std::string(what) + " needs a closed-form (Laurent) potential");
    return *V;
}

double pi_real(const PiResult& p, const char* what) {
    if (p.verdict == PiVerdict::Divergent) throw DivergentIntegral(std::string(what) + ": boundary term diverges");
    return p.verdict == PiVerdict::Finite ? p.value.real() : 0.0;
}

CaseKey key_for(const RadialState& st, std::string theorem, std::string s_or_f, std::string mode) {
    return {std::move(theorem), st.potential.describe(), st.n_r, st.l, std::move(s_or_f), std::move(mode)};
}

bool pure_coulomb(const Potential& V) { return std::holds_alternative<Coulomb>(V.kind); }
bool pure_oscillator(const Potential& V) { return std::holds_alternative<Oscillator>(V.kind); }

}  // namespace

SumRuleReport kramers(const RadialState& st, int s, KramersMode mode) {
    const Potential& V = st.potential;
    if (!pure_coulomb(V) && !pure_oscillator(V)) throw DomainError("Kramers relations need a Coulomb or oscillator state");
    const double hb = st.params.hbar, m = st.params.mass, E = st.energy;
    const int l = st.l;
    SumRuleReport r;
    r.key = key_for(st, "kramers", std::to_string(s), mode == KramersMode::Classic ? "classic" : "modified");
    r.tolerance = default_tolerance(st);
    const double sgn = mode == KramersMode::Classic ? 1.0 : -1.0;

    struct T {
        std::string name;
        double coeff;
        int power;
    };
    std::vector<T> ts;
    ts.push_back({"2E(s+1)<r^s>", 2.0 * E * (s + 1), s});
    if (auto* c = std::get_if<Coulomb>(&V.kind)) {
        ts.push_back({"e2(2s+1)<r^(s-1)>", c->e2 * (2.0 * s + 1), s - 1});
    } else {
        double w = std::get<Oscillator>(V.kind).omega;
        ts.push_back({"-m w^2 (s+2)<r^(s+2)>", -m * w * w * (s + 2.0), s + 2});
    }
    double k2 = (2.0 * l + 1) * (2.0 * l + 1);
    ts.push_back({"(s hbar^2/4m)(s^2-(2l+1)^2)<r^(s-2)>", s * hb * hb / (4.0 * m) * (double(s) * s - k2), s - 2});
    for (const auto& t : ts) {
        if (t.coeff == 0.0) continue;
        if (!moment_integrable(st, t.power)) {
            std::ostringstream os;
            os << "kramers: <r^" << t.power << "> diverges for l=" << l;
            throw DivergentIntegral(os.str());
        }
        r.lhs_terms.push_back({t.name, sgn * t.coeff * moment(st, t.power)});
    }
    r.delta_triggered = s + 1 == -2 * l;
    if (mode == KramersMode::Modified && r.delta_triggered) {
        double a = st.origin.leading_coeff;
        r.rhs_boundary = hb * hb / (2.0 * m) * k2 * a * a;
    }
    finalize(r);
    return r;
}

SumRuleReport hypervirial_power(const RadialState& st, int s) {
    const LaurentPoly V = require_laurent(st.potential.laurent(st.params), "hypervirial_power");
    const double hb = st.params.hbar, m = st.params.mass, E = st.energy;
    const int l = st.l;
    const double k = 4.0 * m / (hb * hb);
    const double P = st.origin.P;
    const bool regular = st.origin.regular;
    // printed normalization of the regular case is half the general one
    const double norm = regular ? 0.5 : 1.0;

    SumRuleReport r;
    r.key = key_for(st, "hypervirial_power", std::to_string(s), regular ? "regular" : "soft-singular");
    r.tolerance = default_tolerance(st);
    double k2 = (2.0 * l + 1) * (2.0 * l + 1);
    std::vector<WeightTerm> terms = {
        {"(4m/hbar^2)<r^(s+1)V'>", norm * k * V.derivative().shifted(s + 1)},
        {"(4m/hbar^2)2(s+1)<r^s V>", norm * k * 2.0 * (s + 1) * V.shifted(s)},
        {"-(4m/hbar^2)2(s+1)E<r^s>", LaurentPoly::monomial(-norm * k * 2.0 * (s + 1) * E, s)},
        {"s((2l+1)^2-s^2)<r^(s-2)>", LaurentPoly::monomial(norm * s * (k2 - double(s) * s), s - 2)},
    };
    assemble(r, st, terms);
    r.delta_triggered = std::abs(2.0 * P + s) < 1e-12;
    if (r.delta_triggered) {
        double a = st.origin.leading_coeff;
        r.rhs_boundary = norm * a * a * s * (s - 2.0 * P);
    }
    finalize(r);
    return r;
}

SumRuleReport verify_numeric(const RadialState& st, int s) {
    SumRuleReport r = hypervirial_power(st, s);
    r.key.theorem = "verify_numeric";
    r.tolerance = tol_numeric;
    finalize(r);
    return r;
}

namespace {

// r -> 0 limit of f (R^2 - r^2 R R'' + r^2 R'^2) - f' r R (r R' + R) + f'' r^2 R^2 / 2
double bracket_rhs(const RadialState& st, const LaurentPoly& f) {
    LaurentPoly f1 = f.derivative(), f2 = f1.derivative();
    if (st.analytic()) {
        const AnalyticForm& a = st.analytic_form();
        ExpPoly RR = a.R * a.R;
        ExpPoly t1 = ExpPoly::combine({{1.0, RR}, {-1.0, (a.R * a.d2R).times_power(2)}, {1.0, (a.dR * a.dR).times_power(2)}});
        ExpPoly t2 = ExpPoly::combine({{1.0, (a.R * a.dR).times_power(2)}, {1.0, RR.times_power(1)}});
        ExpPoly e = ExpPoly::combine({{1.0, t1.times(f)}, {-1.0, t2.times(f1)}, {0.5, RR.times_power(2).times(f2)}});
        OriginLimit lim = origin_limit(e);
        if (!lim.finite) throw DivergentIntegral("bracket boundary term diverges at the origin");
        return lim.value.real();
    }
    double L = st.potential.natural_length(st.params);
    double lo = std::max(st.grid().r_min(), 1e-6 * L);
    std::vector<double> radii = radius_ladder(1e-2 * L, lo);
    std::vector<cplx> samples;
    for (double r : radii) {
        RadialJet j = evaluate_jet(st, r);
        double v = f(r) * (j.R * j.R - r * r * j.R * j.d2R + r * r * j.dR * j.dR) -
                   f1(r) * r * j.R * (r * j.dR + j.R) + 0.5 * f2(r) * r * r * j.R * j.R;
        samples.push_back(v);
    }
    OriginExtrapolation ex = extrapolate_to_origin(radii, samples);
    if (ex.verdict == PiVerdict::Divergent) throw DivergentIntegral("bracket boundary term diverges at the origin");
    return ex.verdict == PiVerdict::Finite ? ex.limit.real() : 0.0;
}

}  // namespace

SumRuleReport hypervirial_general(const RadialState& st, const LaurentPoly& f, Formulation form) {
    const LaurentPoly V = require_laurent(st.potential.laurent(st.params), "hypervirial_general");
    const double hb = st.params.hbar, m = st.params.mass, E = st.energy;
    const double ll = st.l * (st.l + 1.0);
    LaurentPoly f1 = f.derivative(), f2 = f1.derivative(), f3 = f2.derivative();
    LaurentPoly V1 = V.derivative();

    SumRuleReport r;
    r.key = key_for(st, "hypervirial", f.str(), form == Formulation::Commutator ? "commutator" : "bracket");
    r.tolerance = default_tolerance(st);
    if (form == Formulation::Commutator) {
        std::vector<WeightTerm> terms = {
            {"-2E<f'>", -2.0 * E * f1},
            {"2<f'V>", 2.0 * (f1 * V)},
            {"(hbar^2 l(l+1)/m)<f'/r^2>", hb * hb * ll / m * f1.shifted(-2)},
            {"-(hbar^2 l(l+1)/m)<f/r^3>", -hb * hb * ll / m * f.shifted(-3)},
            {"-(hbar^2/4m)<f'''>", -hb * hb / (4.0 * m) * f3},
            {"<fV'>", f * V1},
        };
        assemble(r, st, terms);
        PiResult pt = pi_total(st.origin, f, st.params);
        r.delta_triggered = pt.verdict == PiVerdict::Finite;
        r.rhs_boundary = pi_real(pt, "hypervirial");
    } else {
        // L = (2m/hbar^2)(E - V) - l(l+1)/r^2, expanded term by term
        double k = 2.0 * m / (hb * hb);
        std::vector<WeightTerm> terms = {
            {"-(4mE/hbar^2)<f'>", -2.0 * k * E * f1},
            {"(4m/hbar^2)<f'V>", 2.0 * k * (f1 * V)},
            {"2l(l+1)<f'/r^2>", 2.0 * ll * f1.shifted(-2)},
            {"(2m/hbar^2)<fV'>", k * (f * V1)},
            {"-2l(l+1)<f/r^3>", -2.0 * ll * f.shifted(-3)},
            {"-(1/2)<f'''>", -0.5 * f3},
        };
        assemble(r, st, terms);
        r.rhs_boundary = bracket_rhs(st, f);
        r.delta_triggered = r.rhs_boundary != 0.0;
    }
    finalize(r);
    return r;
}

ForceBalanceReport ehrenfest_radial(const RadialState& st) {
    const double hb = st.params.hbar, m = st.params.mass;
    const double cent = hb * hb * st.l * (st.l + 1.0) / m;
    ForceBalanceReport r;
    r.key = key_for(st, "ehrenfest", "pr", "radial");
    r.tolerance = default_tolerance(st);

    if (auto V = st.potential.laurent(st.params)) {
        LaurentPoly wc = LaurentPoly::monomial(cent, -3);
        LaurentPoly wf = -1.0 * V->derivative();
        if (weight_integrable(st, wc) && weight_integrable(st, wf)) {
            r.centrifugal = expectation_weight(st, wc);
            r.mean_force = expectation_weight(st, wf);
        } else {
            LaurentPoly merged = merge_weights({{"c", wc}, {"f", wf}});
            std::vector<int> bad;
            for (const auto& t : merged.terms())
                if (!moment_integrable(st, t.power)) bad.push_back(t.power);
            if (!bad.empty()) {
                std::ostringstream os;
                os << "Ehrenfest balance diverges; non-cancelling powers:";
                for (int k : bad) os << " r^" << k;
                throw DivergentIntegral(os.str());
            }
            r.combined_mode = true;
            double c3 = merged.coeff(-3);
            LaurentPoly rest = merged - LaurentPoly::monomial(c3, -3);
            r.centrifugal = c3 != 0.0 ? c3 * expectation_weight(st, LaurentPoly::monomial(1.0, -3)) : 0.0;
            r.mean_force = expectation_weight(st, rest);
        }
    } else {
        // tabulated potential: numeric integrands only
        const NumericGrid& g = st.grid();
        const Potential& pot = st.potential;
        double v0 = pot.inverse_square_strength();
        if (v0 == 0.0) {
            r.centrifugal = cent != 0.0 ? g.integrate([](double x) { return 1.0 / (x * x * x); }) * cent : 0.0;
            r.mean_force = g.integrate([&](double x) { return -pot.derivative(x); });
        } else {
            r.combined_mode = true;
            double c3 = cent - 2.0 * v0;
            if (std::abs(c3) <= chop_rel * (std::abs(cent) + 2.0 * std::abs(v0))) c3 = 0.0;
            r.centrifugal = c3 != 0.0 ? c3 * g.integrate([](double x) { return 1.0 / (x * x * x); }) : 0.0;
            r.mean_force = g.integrate([&](double x) { return -pot.derivative(x) + 2.0 * v0 / (x * x * x); });
        }
    }
    PiResult pi = pi_analytic(st.origin, OperatorSpec::pr(), st.params);
    r.boundary_verdict = pi.verdict;
    r.boundary_force = pi_real(pi, "ehrenfest");
    r.balance = r.centrifugal + r.mean_force + r.boundary_force;
    r.scale = std::max({std::abs(r.centrifugal), std::abs(r.mean_force), std::abs(r.boundary_force)});
    r.pass = r.scale > 0.0 ? std::abs(r.balance) <= r.tolerance * r.scale : r.balance == 0.0;
    return r;
}

CoordinateReport ehrenfest_coordinate(const RadialState& st) {
    CoordinateReport r;
    r.key = key_for(st, "ehrenfest", "r", "coordinate");
    r.pr_expectation = expectation(st, OperatorSpec::pr());
    r.pi = pi_analytic(st.origin, OperatorSpec::coordinate(), st.params);
    // momentum unit hbar / L
    double unit = st.params.hbar / st.potential.natural_length(st.params);
    r.tolerance = (st.analytic() ? 1e-10 : tol_numeric) * unit;
    r.pass = std::abs(r.pr_expectation) <= r.tolerance && r.pi.verdict == PiVerdict::Zero;
    return r;
}

TimeDerivativeReport time_derivative_check(const RadialState& a, const RadialState& b, const OperatorSpec& op,
                                           const std::vector<double>& times) {
    require_compatible(a, b);
    if (!a.analytic() || !b.analytic()) throw NotImplemented("time-derivative check needs analytic states");
    const double hb = a.params.hbar;
    const double c2 = 0.5;
    const RadialState* st[2] = {&a, &b};
    cplx A[2][2], K[2][2], Pi[2][2];
    double eA = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            A[x][y] = cross_element(*st[x], *st[y], op);
            K[x][y] = cross_element_HA(*st[x], *st[y], op) - st[y]->energy * A[x][y];
            PiResult p = pi_bilinear(st[x]->origin.leading_coeff, st[y]->origin.leading_coeff, st[y]->origin, op,
                                     a.params);
            if (p.verdict == PiVerdict::Divergent) throw DivergentIntegral("superposition boundary term diverges");
            Pi[x][y] = p.verdict == PiVerdict::Finite ? p.value : 0.0;
            eA = std::max(eA, std::abs(st[y]->energy * A[x][y]) / hb);
        }

    TimeDerivativeReport r;
    r.key = {"timederiv", a.potential.describe(), a.n_r, a.l, op.describe(), std::to_string(b.n_r)};
    r.pass = true;
    const cplx I(0.0, 1.0);
    for (double t : times) {
        TimeSample s{};
        s.t = t;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                double w = (st[x]->energy - st[y]->energy) / hb;
                cplx ph = std::exp(I * w * t);
                s.d_dt += c2 * I * w * ph * A[x][y];
                s.commutator += c2 * (I / hb) * ph * K[x][y];
                s.pi += c2 * ph * Pi[x][y];
            }
        s.residual = s.commutator + s.pi - s.d_dt;
        s.residual_without_pi = s.commutator - s.d_dt;
        s.scale = std::max({std::abs(s.d_dt), std::abs(s.commutator), std::abs(s.pi), eA});
        r.pass = r.pass && std::abs(s.residual) <= r.tolerance * s.scale;
        r.samples.push_back(s);
    }
    return r;
}

SumRuleReport contact_density_check(const RadialState& st) {
    if (st.l != 0) throw DomainError("contact density relation needs l = 0");
    const double hb = st.params.hbar, m = st.params.mass;
    SumRuleReport r;
    r.key = key_for(st, "contact", "", st.analytic() ? "analytic" : "numeric");
    r.tolerance = default_tolerance(st);
    double a = st.origin.leading_coeff;
    r.lhs_terms.push_back({"C0^2/(4 pi)", a * a / (4.0 * std::numbers::pi)});
    double dv;
    if (auto V = st.potential.laurent(st.params))
        dv = expectation_weight(st, V->derivative());
    else
        dv = st.grid().integrate([&](double x) { return st.potential.derivative(x); });
    r.rhs_boundary = m / (2.0 * std::numbers::pi * hb * hb) * dv;
    r.delta_triggered = true;
    finalize(r);
    return r;
}

std::vector<double> beat_times(const RadialState& a, const RadialState& b, int n) {
    if (n <= 0) throw DomainError("need at least one sample time");
    double dE = std::abs(a.energy - b.energy);
    double T = dE > 0.0 ? 2.0 * std::numbers::pi * a.params.hbar / dE : 1.0;
    std::vector<double> t;
    for (int k = 0; k < n; ++k) t.push_back(T * k / n);
    return t;
}

}  // namespace radial
