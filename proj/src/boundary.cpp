#include "radial/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "radial/errors.hpp"
#include "radial/numerov.hpp"

namespace radial {

const char* to_string(PiVerdict v) {
    switch (v) {
        case PiVerdict::Zero: return "zero";
        case PiVerdict::Finite: return "finite";
        case PiVerdict::Divergent: return "divergent";
    }
    return "?";
}

const char* to_string(PiFormula f) {
    switch (f) {
        case PiFormula::Generic: return "generic";
        case PiFormula::Regular: return "regular";
        case PiFormula::SoftStandard: return "soft-standard";
        case PiFormula::PiPrime: return "pi-prime";
        case PiFormula::PiTotal: return "pi-total";
        case PiFormula::EhrenfestPr: return "ehrenfest-pr";
        case PiFormula::Coordinate: return "coordinate";
    }
    return "?";
}

namespace {

constexpr double delta_tol = 1e-12;
const double inf = std::numeric_limits<double>::infinity();

// series sum_k c_k r^{e_k} -> verdict on its r -> 0 limit
PiResult decide(const std::vector<std::pair<double, cplx>>& series, cplx prefactor, PiFormula formula) {
    PiResult res;
    res.formula = formula;
    res.exponent_margin = inf;
    for (const auto& [e, c] : series)
        if (c != 0.0) res.exponent_margin = std::min(res.exponent_margin, e);
    if (std::abs(res.exponent_margin) <= delta_tol) {
        res.verdict = PiVerdict::Finite;
        res.exponent_margin = 0.0;
        cplx sum = 0.0;
        for (const auto& [e, c] : series)
            if (std::abs(e) <= delta_tol) sum += c;
        res.value = prefactor * sum;
    } else {
        res.verdict = res.exponent_margin > 0 ? PiVerdict::Zero : PiVerdict::Divergent;
    }
    return res;
}

}  // namespace

PiResult pi_bilinear(double a_x, double a_y, const OriginBehavior& origin, const OperatorSpec& op,
                     const PhysicalParams& p) {
    validate(p);
    double P = origin.P;
    double q = P - 0.5;
    // A r^q = sum_sigma c_sigma r^{q+sigma}
    ExpPoly lead({{q, 1.0}}, 0.0, 0);
    ExpPoly Aq = apply_operator(op, lead, p);
    PiFormula formula = op.kind == OpKind::Coordinate ? PiFormula::Coordinate
                        : op.kind == OpKind::Pr       ? PiFormula::EhrenfestPr
                        : origin.regular              ? PiFormula::Regular
                                                      : PiFormula::SoftStandard;
    double margin = 2.0 * P - op.beta;
    PiResult res;
    res.formula = formula;
    res.exponent_margin = margin;
    cplx pref = cplx(0.0, p.hbar / (2.0 * p.mass)) * (-a_x * a_y);
    if (std::abs(margin) <= delta_tol) {
        res.verdict = PiVerdict::Finite;
        res.exponent_margin = 0.0;
        cplx sum = 0.0;
        for (const auto& t : Aq.terms()) {
            double sigma = t.power - q;
            if (std::abs(2.0 * P + sigma) <= delta_tol) sum += sigma * t.coeff;
        }
        res.value = pref * sum;
        return res;
    }
    if (margin > 0) {
        res.verdict = PiVerdict::Zero;
        return res;
    }
    cplx lead_c = Aq.coeff_at(q - op.beta);
    if (lead_c == 0.0) {
        std::ostringstream os;
        os << "operator " << op.describe() << " annihilates the leading origin term r^" << q
           << "; the limit depends on subleading coefficients";
        throw DegenerateLeadingTerm(os.str());
    }
    res.verdict = PiVerdict::Divergent;
    return res;
}

PiResult pi_analytic(const OriginBehavior& origin, const OperatorSpec& op, const PhysicalParams& p) {
    return pi_bilinear(origin.leading_coeff, origin.leading_coeff, origin, op, p);
}

PiResult pi_prime(const OriginBehavior& origin, const LaurentPoly& f, const PhysicalParams& p) {
    validate(p);
    double a2 = origin.leading_coeff * origin.leading_coeff;
    std::vector<std::pair<double, cplx>> series;
    for (const auto& t : f.terms()) series.push_back({2.0 * origin.P - 1.0 + t.power, a2 * t.coeff * t.power * (t.power - 1.0)});
    return decide(series, cplx(0.0, -p.hbar / (2.0 * p.mass)), PiFormula::PiPrime);
}

PiResult pi_total(const OriginBehavior& origin, const LaurentPoly& f, const PhysicalParams& p) {
    validate(p);
    double P = origin.P;
    double a2 = origin.leading_coeff * origin.leading_coeff;
    std::vector<std::pair<double, cplx>> series;
    for (const auto& t : f.terms()) {
        double j = t.power;
        double k = j - 2.0 * P - 1.0;
        if (std::abs(k) <= delta_tol) k = 0.0;
        series.push_back({j - 1.0 + 2.0 * P, a2 * t.coeff * (j - 1.0) * k});
    }
    return decide(series, p.hbar * p.hbar / (4.0 * p.mass), PiFormula::PiTotal);
}

std::vector<double> radius_ladder(double r_hi, double r_lo, double ratio) {
    if (!(r_hi > r_lo) || !(r_lo > 0.0) || !(ratio > 0.0 && ratio < 1.0))
        throw DomainError("radius ladder needs r_hi > r_lo > 0 and 0 < ratio < 1");
    std::vector<double> r;
    for (double x = r_hi; x >= r_lo * (1 - 1e-12); x *= ratio) r.push_back(x);
    return r;
}

namespace {

cplx neville_at_zero(const std::vector<double>& x, const std::vector<cplx>& y) {
    std::vector<cplx> p = y;
    size_t n = x.size();
    for (size_t m = 1; m < n; ++m)
        for (size_t i = 0; i + m < n; ++i) p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
    return p[0];
}

}  // namespace

OriginExtrapolation extrapolate_to_origin(const std::vector<double>& radii, const std::vector<cplx>& b) {
    size_t n = b.size();
    if (n < 4 || radii.size() != n) throw DomainError("origin extrapolation needs at least 4 samples");
    OriginExtrapolation res;
    double bmax = 0.0;
    for (auto v : b) bmax = std::max(bmax, std::abs(v));
    if (bmax == 0.0) {
        res.verdict = PiVerdict::Zero;
        res.fitted_margin = std::numeric_limits<double>::infinity();
        return res;
    }
    std::vector<double> slope;
    for (size_t i = 0; i + 1 < n; ++i) {
        double a0 = std::abs(b[i]), a1 = std::abs(b[i + 1]);
        if (a0 == 0.0 || a1 == 0.0) throw ExtrapolationFailure("bracket vanishes at an isolated radius; no power law");
        slope.push_back(std::log(a1 / a0) / std::log(radii[i + 1] / radii[i]));
    }
    double m = slope.back();
    res.fitted_margin = m;
    if (std::abs(m) < 1e-3) {
        // constant limit plus integer-power corrections
        size_t k = std::min<size_t>(5, n);
        std::vector<double> xs(radii.end() - k, radii.end());
        std::vector<cplx> ys(b.end() - k, b.end());
        cplx lim = neville_at_zero(xs, ys);
        cplx lim_less = neville_at_zero(std::vector<double>(xs.begin(), xs.end() - 1),
                                        std::vector<cplx>(ys.begin(), ys.end() - 1));
        double d = std::abs(lim - lim_less);
        if (d > 1e-6 * std::abs(lim) && d > 1e-14 * bmax)
            throw ExtrapolationFailure("bracket limit not stable under extrapolation");
        res.verdict = PiVerdict::Finite;
        res.limit = lim;
        return res;
    }
    if (std::abs(slope[slope.size() - 1] - slope[slope.size() - 2]) > 0.05 * (1.0 + std::abs(m)))
        throw ExtrapolationFailure("bracket does not follow a clean power law toward the origin");
    res.verdict = m > 0 ? PiVerdict::Zero : PiVerdict::Divergent;
    return res;
}

BracketResult boundary_bracket_numeric(const RadialState& st, const OperatorSpec& op, const std::vector<double>& radii) {
    if (radii.size() < 4) throw DomainError("bracket extrapolation needs at least 4 radii");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] < radii[i - 1]) || !(radii[i] > 0.0)) throw DomainError("radii must be positive and descending");
    double L = st.potential.natural_length(st.params);
    if (radii.front() / radii.back() < 100.0 * (1 - 1e-9)) throw DomainError("radii must span at least two decades");
    if (radii.back() > 1e-5 * L * (1 + 1e-9)) throw DomainError("smallest radius must be <= 1e-5 natural lengths");

    BracketResult res;
    res.radii = radii;
    for (double r : radii) {
        RadialJet j = evaluate_jet(st, r);
        OperatorJet a = apply_pointwise(op, r, j, st.params);
        res.samples.push_back(r * r * (a.AR * j.dR - j.R * a.dAR));
    }
    auto ex = extrapolate_to_origin(radii, res.samples);
    res.verdict = ex.verdict;
    res.fitted_margin = ex.fitted_margin;
    if (ex.verdict == PiVerdict::Finite) {
        res.bracket_limit = ex.limit;
        res.pi = cplx(0.0, st.params.hbar / (2.0 * st.params.mass)) * ex.limit;
    }
    return res;
}

cplx hermiticity_defect(const RadialState& st, const OperatorSpec& op) {
    const ExpPoly& R = st.analytic_form().R;
    auto V = st.potential.laurent(st.params);
    if (!V) throw NotImplemented("hermiticity defect needs a closed-form potential");
    ExpPoly AR = apply_operator(op, R, st.params);
    ExpPoly HR = apply_hamiltonian(R, *V, st.l, st.params);
    ExpPoly HAR = apply_hamiltonian(AR, *V, st.l, st.params);
    try {
        return integrate_r2(HR.conj(), AR) - integrate_r2(R.conj(), HAR);
    } catch (const DivergentIntegral&) {
    }
    // the two pieces can diverge alone while their difference stays integrable
    try {
        return integrate_r2(HR.conj() * AR - R.conj() * HAR);
    } catch (const DivergentIntegral& e) {
        throw DivergentIntegral(std::string("<H psi|A psi> - <psi|H A psi> diverges: ") + e.what());
    }
}

}  // namespace radial
