#pragma once

#include <string>

#include "radial/exp_poly.hpp"
#include "radial/laurent.hpp"
#include "radial/potential.hpp"
#include "radial/state.hpp"

namespace radial {

enum class OpKind { MultiplyF, PrAfterF, FAfterPr, Pr, Coordinate };

// p_r is always the symmetrized (hbar/i)(d/dr + 1/r)
struct OperatorSpec {
    OpKind kind = OpKind::Coordinate;
    LaurentPoly f;  // used by MultiplyF, PrAfterF, FAfterPr
    int beta = -1;  // A ~ r^{-beta} at the origin

    static OperatorSpec multiply(LaurentPoly f);
    static OperatorSpec pr_after(LaurentPoly f);  // p_r f(r)
    static OperatorSpec f_after_pr(LaurentPoly f);  // f(r) p_r
    static OperatorSpec pr();
    static OperatorSpec coordinate();
    // throws when beta disagrees with the kind and f
    static OperatorSpec make(OpKind kind, LaurentPoly f, int beta);

    bool has_momentum() const { return kind == OpKind::Pr || kind == OpKind::PrAfterF || kind == OpKind::FAfterPr; }
    std::string describe() const;
};

int singularity_exponent(OpKind kind, const LaurentPoly& f);
OperatorSpec parse_operator(const std::string& spec);

ExpPoly apply_operator(const OperatorSpec& op, const ExpPoly& R, const PhysicalParams& p);
// -hbar^2/2m (R'' + 2R'/r - l(l+1)R/r^2) + V R
ExpPoly apply_hamiltonian(const ExpPoly& R, const LaurentPoly& V, int l, const PhysicalParams& p);

struct OperatorJet {
    cplx AR, dAR;
};
OperatorJet apply_pointwise(const OperatorSpec& op, double r, const RadialJet& j, const PhysicalParams& p);

}  // namespace radial
