#include "radial/operator.hpp"

#include <sstream>

#include "radial/errors.hpp"

namespace radial {

int singularity_exponent(OpKind kind, const LaurentPoly& f) {
    switch (kind) {
        case OpKind::Pr: return 1;
        case OpKind::Coordinate: return -1;
        case OpKind::MultiplyF:
        case OpKind::PrAfterF:
        case OpKind::FAfterPr:
            if (f.empty()) throw DomainError("operator multiplier f must be nonzero");
            return (kind == OpKind::MultiplyF ? 0 : 1) - f.min_power();
    }
    throw NotImplemented("unknown operator kind");
}

OperatorSpec OperatorSpec::make(OpKind kind, LaurentPoly f, int beta) {
    int b = singularity_exponent(kind, f);
    if (b != beta)
        throw DomainError("operator beta " + std::to_string(beta) + " inconsistent with its form (expected " +
                          std::to_string(b) + ")");
    return OperatorSpec{kind, std::move(f), beta};
}

OperatorSpec OperatorSpec::multiply(LaurentPoly f) {
    int b = singularity_exponent(OpKind::MultiplyF, f);
    return make(OpKind::MultiplyF, std::move(f), b);
}
OperatorSpec OperatorSpec::pr_after(LaurentPoly f) {
    int b = singularity_exponent(OpKind::PrAfterF, f);
    return make(OpKind::PrAfterF, std::move(f), b);
}
OperatorSpec OperatorSpec::f_after_pr(LaurentPoly f) {
    int b = singularity_exponent(OpKind::FAfterPr, f);
    return make(OpKind::FAfterPr, std::move(f), b);
}
OperatorSpec OperatorSpec::pr() { return {OpKind::Pr, LaurentPoly::constant(1.0), 1}; }
OperatorSpec OperatorSpec::coordinate() { return {OpKind::Coordinate, LaurentPoly::monomial(1.0, 1), -1}; }

std::string OperatorSpec::describe() const {
    switch (kind) {
        case OpKind::MultiplyF: return "f(" + f.str() + ")";
        case OpKind::PrAfterF: return "pr*f(" + f.str() + ")";
        case OpKind::FAfterPr: return "f(" + f.str() + ")*pr";
        case OpKind::Pr: return "pr";
        case OpKind::Coordinate: return "r";
    }
    return "?";
}

OperatorSpec parse_operator(const std::string& spec) {
    if (spec == "pr") return OperatorSpec::pr();
    if (spec == "r") return OperatorSpec::coordinate();
    auto body = [&](const std::string& prefix) { return spec.substr(prefix.size()); };
    if (spec.rfind("f:", 0) == 0) return OperatorSpec::multiply(parse_laurent(body("f:")));
    if (spec.rfind("prf:", 0) == 0) return OperatorSpec::pr_after(parse_laurent(body("prf:")));
    if (spec.rfind("fpr:", 0) == 0) return OperatorSpec::f_after_pr(parse_laurent(body("fpr:")));
    throw ConfigError("unknown operator '" + spec + "' (use pr, r, f:<laurent>, prf:<laurent>, fpr:<laurent>)");
}

namespace {

const cplx minus_i(0.0, -1.0);

ExpPoly momentum(const ExpPoly& g, const PhysicalParams& p) {
    return ExpPoly::combine({{minus_i * p.hbar, g.derivative()}, {minus_i * p.hbar, g.times_power(-1.0)}});
}

}  // namespace

ExpPoly apply_operator(const OperatorSpec& op, const ExpPoly& R, const PhysicalParams& p) {
    switch (op.kind) {
        case OpKind::MultiplyF: return R.times(op.f);
        case OpKind::Coordinate: return R.times_power(1.0);
        case OpKind::Pr: return momentum(R, p);
        case OpKind::PrAfterF: return momentum(R.times(op.f), p);
        case OpKind::FAfterPr: return momentum(R, p).times(op.f);
    }
    throw NotImplemented("unsupported operator kind");
}

ExpPoly apply_hamiltonian(const ExpPoly& R, const LaurentPoly& V, int l, const PhysicalParams& p) {
    double k = -p.hbar * p.hbar / (2.0 * p.mass);
    ExpPoly d1 = R.derivative();
    ExpPoly d2 = d1.derivative();
    return ExpPoly::combine({{k, d2},
                             {2.0 * k, d1.times_power(-1.0)},
                             {-k * l * (l + 1.0), R.times_power(-2.0)},
                             {1.0, R.times(V)}});
}

OperatorJet apply_pointwise(const OperatorSpec& op, double r, const RadialJet& j, const PhysicalParams& p) {
    const cplx c = minus_i * p.hbar;
    auto mom = [&](double g, double g1, double g2) {
        return OperatorJet{c * (g1 + g / r), c * (g2 + g1 / r - g / (r * r))};
    };
    switch (op.kind) {
        case OpKind::MultiplyF: {
            double f = op.f(r), f1 = op.f.derivative()(r);
            return {f * j.R, f1 * j.R + f * j.dR};
        }
        case OpKind::Coordinate: return {r * j.R, j.R + r * j.dR};
        case OpKind::Pr: return mom(j.R, j.dR, j.d2R);
        case OpKind::PrAfterF: {
            auto d1 = op.f.derivative();
            double f = op.f(r), f1 = d1(r), f2 = d1.derivative()(r);
            return mom(f * j.R, f1 * j.R + f * j.dR, f2 * j.R + 2.0 * f1 * j.dR + f * j.d2R);
        }
        case OpKind::FAfterPr: {
            double f = op.f(r), f1 = op.f.derivative()(r);
            auto m = mom(j.R, j.dR, j.d2R);
            return {f * m.AR, f1 * m.AR + f * m.dAR};
        }
    }
    throw NotImplemented("unsupported operator kind");
}

}  // namespace radial
