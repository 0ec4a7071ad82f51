#include "radial/state.hpp"

#include <cmath>
#include <sstream>

#include "radial/errors.hpp"
#include "radial/numerov.hpp"

namespace radial {

const AnalyticForm& RadialState::analytic_form() const {
    if (auto* a = std::get_if<AnalyticForm>(&form)) return *a;
    throw NotImplemented("operation needs an analytic state");
}

const NumericGrid& RadialState::grid() const {
    if (auto* g = std::get_if<std::shared_ptr<const NumericGrid>>(&form)) return **g;
    throw NotImplemented("operation needs a numeric state");
}

std::string RadialState::label() const {
    std::ostringstream os;
    os << potential.describe() << " n_r=" << n_r << " l=" << l << (analytic() ? " analytic" : " numeric");
    return os.str();
}

double bohr_radius(double e2, const PhysicalParams& p) { return p.hbar * p.hbar / (p.mass * e2); }

namespace {

AnalyticForm finish(AnalyticFamily fam, std::vector<PowerTerm> terms, double lambda, int order, double scale,
                    double norm, KummerPoly F) {
    AnalyticForm a;
    a.family = fam;
    a.R = ExpPoly(std::move(terms), lambda, order);
    a.dR = a.R.derivative();
    a.d2R = a.dR.derivative();
    a.scale = scale;
    a.norm = norm;
    a.F = std::move(F);
    return a;
}

}  // namespace

RadialState make_coulomb_state(int n, int l, double e2, const PhysicalParams& params) {
    validate(params);
    if (n < 1 || l < 0 || l > n - 1)
        throw InvalidQuantumNumbers("Coulomb state needs n >= 1 and 0 <= l <= n-1 (n=" + std::to_string(n) +
                                    ", l=" + std::to_string(l) + ")");
    if (n > max_principal || l > max_l) throw EnvelopeError("Coulomb state outside the supported n <= 12, l <= 6");
    RadialState s;
    s.potential = make_coulomb(e2, params);
    s.params = params;
    s.l = l;
    s.n_r = n - l - 1;
    s.energy = -params.mass * e2 * e2 / (2.0 * params.hbar * params.hbar * n * n);

    double B = 2.0 / bohr_radius(e2, params);
    double kappa = B / n;
    double ln_c2 = 2.0 * std::log(B / (double(n) * n)) + std::log(B / 2.0) + ln_gamma(n + l + 1.0) -
                   ln_gamma(double(n - l)) - 2.0 * ln_gamma(2.0 * l + 2.0);
    double C = std::exp(0.5 * ln_c2) * std::pow(kappa, l);

    KummerPoly F = make_kummer_poly(s.n_r, 2.0 * l + 2.0);
    std::vector<PowerTerm> terms;
    for (int k = 0; k <= s.n_r; ++k) terms.push_back({double(l + k), C * F.coeffs[k] * std::pow(kappa, k)});
    s.form = finish(AnalyticFamily::Coulomb, std::move(terms), kappa / 2.0, 1, kappa, C, F);
    s.origin = {l + 0.5, C, double(l), true};
    return s;
}

RadialState make_oscillator_state(int n_r, int l, double omega, const PhysicalParams& params) {
    validate(params);
    if (n_r < 0 || l < 0) throw InvalidQuantumNumbers("oscillator state needs n_r >= 0 and l >= 0");
    if (n_r > max_principal || l > max_l) throw EnvelopeError("oscillator state outside the supported n_r <= 12, l <= 6");
    RadialState s;
    s.potential = make_oscillator(omega, params);
    s.params = params;
    s.l = l;
    s.n_r = n_r;
    s.energy = params.hbar * omega * (2.0 * n_r + l + 1.5);

    double alpha = params.mass * omega / params.hbar;
    double g = l + 1.5;
    double ln_c2 = std::log(2.0) + g * std::log(alpha) + (ln_gamma(g + n_r) - ln_gamma(g)) - ln_gamma(g) -
                   ln_gamma(n_r + 1.0);
    double C = std::exp(0.5 * ln_c2);

    KummerPoly F = make_kummer_poly(n_r, g);
    std::vector<PowerTerm> terms;
    for (int k = 0; k <= n_r; ++k) terms.push_back({double(l + 2 * k), C * F.coeffs[k] * std::pow(alpha, k)});
    s.form = finish(AnalyticFamily::Oscillator, std::move(terms), alpha / 2.0, 2, alpha, C, F);
    s.origin = {l + 0.5, C, double(l), true};
    return s;
}

RadialState make_model_state(const Potential& V, int l, double P, double a, double lambda,
                             const PhysicalParams& params) {
    validate(params);
    if (!(P > 0.0) || !(lambda > 0.0)) throw DomainError("model state needs P > 0 and lambda > 0");
    RadialState s;
    s.potential = V;
    s.params = params;
    s.l = l;
    s.n_r = 0;
    s.energy = 0.0;
    s.form = finish(AnalyticFamily::Model, {{P - 0.5, a}}, lambda, 1, 2.0 * lambda, a, make_kummer_poly(0, 1.0));
    s.origin = {P, a, P - 0.5, std::abs(P - (l + 0.5)) < 1e-12};
    return s;
}

RadialJet evaluate_jet(const RadialState& s, double r) {
    if (!(r > 0.0)) throw DomainError("radial functions are evaluated at r > 0");
    if (auto* a = std::get_if<AnalyticForm>(&s.form)) return {a->R(r).real(), a->dR(r).real(), a->d2R(r).real()};
    return s.grid().jet(r);
}

std::pair<double, double> evaluate_R(const RadialState& s, double r) {
    auto j = evaluate_jet(s, r);
    return {j.R, j.dR};
}

}  // namespace radial
