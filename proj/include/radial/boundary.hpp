#pragma once

#include <string>
#include <vector>

#include "radial/operator.hpp"
#include "radial/state.hpp"

namespace radial {

enum class PiVerdict { Zero, Finite, Divergent };
enum class PiFormula { Generic, Regular, SoftStandard, PiPrime, PiTotal, EhrenfestPr, Coordinate };

const char* to_string(PiVerdict v);
const char* to_string(PiFormula f);

struct PiResult {
    PiVerdict verdict = PiVerdict::Zero;
    cplx value = 0.0;
    double exponent_margin = 0.0;  // +inf when no term survives
    PiFormula formula = PiFormula::Generic;
};

// Pi = (i hbar/2m) lim r^2 [A R dR/dr - R d(A R)/dr] from the leading origin term a r^{P-1/2}
PiResult pi_analytic(const OriginBehavior& origin, const OperatorSpec& op, const PhysicalParams& p);
// the same bracket with R_X = a_x r^{P-1/2} on the left and A acting on R_Y = a_y r^{P-1/2}
PiResult pi_bilinear(double a_x, double a_y, const OriginBehavior& origin, const OperatorSpec& op,
                     const PhysicalParams& p);
// -(i hbar/2m) lim r^2 R^2 f''
PiResult pi_prime(const OriginBehavior& origin, const LaurentPoly& f, const PhysicalParams& p);
// (hbar^2 a^2/4m) lim [f'' r^{2P+1} + (2P+1)(f/r - f') r^{2P}]
PiResult pi_total(const OriginBehavior& origin, const LaurentPoly& f, const PhysicalParams& p);

struct BracketResult {
    PiVerdict verdict = PiVerdict::Zero;
    double fitted_margin = 0.0;
    cplx bracket_limit = 0.0;  // lim r^2 [A R R' - R (A R)']
    cplx pi = 0.0;             // (i hbar/2m) * bracket_limit
    std::vector<double> radii;
    std::vector<cplx> samples;
};

struct OriginExtrapolation {
    PiVerdict verdict = PiVerdict::Zero;
    double fitted_margin = 0.0;
    cplx limit = 0.0;
};
// samples of a function at descending radii -> its r -> 0 behavior
OriginExtrapolation extrapolate_to_origin(const std::vector<double>& radii, const std::vector<cplx>& samples);

std::vector<double> radius_ladder(double r_hi, double r_lo, double ratio = 0.5);
BracketResult boundary_bracket_numeric(const RadialState& st, const OperatorSpec& op, const std::vector<double>& radii);

// <H psi|A psi> - <psi|H A psi>, each side by quadrature
cplx hermiticity_defect(const RadialState& st, const OperatorSpec& op);

}  // namespace radial
