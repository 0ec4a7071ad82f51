#pragma once

#include <vector>

#include "radial/operator.hpp"
#include "radial/state.hpp"

namespace radial {

// 2 leading_power + s + 2 > -1
bool moment_integrable(const RadialState& st, double s);
void require_integrable(const RadialState& st, double s);

double moment_closed(const RadialState& st, double s);
double moment_quadrature(const RadialState& st, double s);
// closed form when available, otherwise quadrature (numeric grids)
double moment(const RadialState& st, double s);

// <w> for a Laurent weight; non-integrable powers must already have cancelled
double expectation_weight(const RadialState& st, const LaurentPoly& w);

cplx expectation(const RadialState& st, const OperatorSpec& op);
// combined-integrand mode: the sum is integrated as one function
cplx expectation(const RadialState& st, const std::vector<OperatorSpec>& ops);

void require_compatible(const RadialState& a, const RadialState& b);
// int R_A (A R_B) r^2 dr
cplx cross_element(const RadialState& a, const RadialState& b, const OperatorSpec& op);
// int R_A (H A R_B) r^2 dr, analytic states only
cplx cross_element_HA(const RadialState& a, const RadialState& b, const OperatorSpec& op);

}  // namespace radial
