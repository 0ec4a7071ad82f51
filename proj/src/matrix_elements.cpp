#include "radial/matrix_elements.hpp"

#include <cmath>

#include "radial/errors.hpp"
#include "radial/numerov.hpp"

namespace radial {

bool moment_integrable(const RadialState& st, double s) { return 2.0 * st.origin.leading_power + s + 2.0 > -1.0 + 1e-12; }

void require_integrable(const RadialState& st, double s) {
    if (!moment_integrable(st, s)) {
        std::ostringstream os;
        os << "<r^" << s << "> diverges at the origin (needs 2*" << st.origin.leading_power << " + s + 2 > -1)";
        throw DivergentIntegral(os.str());
    }
}

double moment_closed(const RadialState& st, double s) {
    require_integrable(st, s);
    const AnalyticForm& a = st.analytic_form();
    double C2 = a.norm * a.norm;
    int l = st.l;
    switch (a.family) {
        case AnalyticFamily::Coulomb: {
            double nu = 2.0 * l + s + 3.0;
            return C2 * std::pow(a.scale, -nu) * kummer_moment_integral(st.n_r, 2.0 * l + 2.0, 1.0, nu);
        }
        case AnalyticFamily::Oscillator: {
            double nu = (2.0 * l + s + 3.0) / 2.0;
            return 0.5 * C2 * std::pow(a.scale, -nu) * kummer_moment_integral(st.n_r, l + 1.5, 1.0, nu);
        }
        case AnalyticFamily::Model: {
            double nu = 2.0 * st.origin.leading_power + s + 3.0;
            return C2 * std::exp(ln_gamma(nu) - nu * std::log(a.scale));
        }
    }
    throw NotImplemented("unknown analytic family");
}

double moment_quadrature(const RadialState& st, double s) {
    require_integrable(st, s);
    if (st.analytic()) {
        const ExpPoly& R = st.analytic_form().R;
        return integrate_r2(R, R, s).real();
    }
    const NumericGrid& g = st.grid();
    if (s == std::floor(s) && std::abs(s) < 1000) return g.integrate(LaurentPoly::monomial(1.0, int(s)));
    return g.integrate([s](double r) { return std::pow(r, s); });
}

double moment(const RadialState& st, double s) { return st.analytic() ? moment_closed(st, s) : moment_quadrature(st, s); }

double expectation_weight(const RadialState& st, const LaurentPoly& w) {
    if (w.empty()) return 0.0;
    if (!st.analytic()) return st.grid().integrate(w);
    double v = 0.0;
    for (const auto& t : w.terms()) v += t.coeff * moment_closed(st, t.power);
    return v;
}

namespace {

cplx grid_integral(const NumericGrid& g, const std::function<cplx(size_t)>& integrand_r3) {
    size_t N = g.r().size();
    std::vector<double> re(N), im(N);
    bool any_im = false;
    for (size_t i = 0; i < N; ++i) {
        cplx v = integrand_r3(i);
        re[i] = v.real();
        im[i] = v.imag();
        any_im = any_im || v.imag() != 0.0;
    }
    return {g.integrate_samples(re), any_im ? g.integrate_samples(im) : 0.0};
}

}  // namespace

cplx expectation(const RadialState& st, const std::vector<OperatorSpec>& ops) {
    if (ops.empty()) return 0.0;
    if (st.analytic()) {
        const ExpPoly& R = st.analytic_form().R;
        std::vector<std::pair<cplx, ExpPoly>> pieces;
        for (const auto& op : ops) pieces.push_back({1.0, apply_operator(op, R, st.params)});
        return integrate_r2(R.conj(), ExpPoly::combine(pieces));
    }
    const NumericGrid& g = st.grid();
    return grid_integral(g, [&](size_t i) {
        double r = g.r()[i];
        RadialJet j = g.jet(r);
        cplx sum = 0.0;
        for (const auto& op : ops) sum += apply_pointwise(op, r, j, st.params).AR;
        return j.R * sum * r * r * r;
    });
}

cplx expectation(const RadialState& st, const OperatorSpec& op) { return expectation(st, std::vector<OperatorSpec>{op}); }

void require_compatible(const RadialState& a, const RadialState& b) {
    if (a.l != b.l) throw IncompatibleStates("states have different l");
    if (a.potential.describe() != b.potential.describe() || a.params.hbar != b.params.hbar ||
        a.params.mass != b.params.mass)
        throw IncompatibleStates("states belong to different potentials or parameter sets");
}

cplx cross_element(const RadialState& a, const RadialState& b, const OperatorSpec& op) {
    require_compatible(a, b);
    if (a.analytic() && b.analytic()) {
        const ExpPoly& Ra = a.analytic_form().R;
        return integrate_r2(Ra.conj(), apply_operator(op, b.analytic_form().R, b.params));
    }
    const RadialState& host = a.analytic() ? b : a;
    const NumericGrid& g = host.grid();
    return grid_integral(g, [&](size_t i) {
        double r = g.r()[i];
        double Ra = evaluate_jet(a, r).R;
        RadialJet jb = evaluate_jet(b, r);
        return Ra * apply_pointwise(op, r, jb, b.params).AR * r * r * r;
    });
}

cplx cross_element_HA(const RadialState& a, const RadialState& b, const OperatorSpec& op) {
    require_compatible(a, b);
    auto V = b.potential.laurent(b.params);
    if (!V) throw NotImplemented("applying H analytically needs a closed-form potential");
    const ExpPoly& Ra = a.analytic_form().R;
    ExpPoly HA = apply_hamiltonian(apply_operator(op, b.analytic_form().R, b.params), *V, b.l, b.params);
    return integrate_r2(Ra.conj(), HA);
}

}  // namespace radial
