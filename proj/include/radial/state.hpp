#pragma once

#include <memory>
#include <variant>

#include "radial/exp_poly.hpp"
#include "radial/potential.hpp"
#include "radial/specfun.hpp"

namespace radial {

enum class AnalyticFamily { Coulomb, Oscillator, Model };

struct AnalyticForm {
    AnalyticFamily family = AnalyticFamily::Model;
    ExpPoly R, dR, d2R;
    // Coulomb: kappa = B/n with R = C r^l e^{-kappa r/2} F(-n_r, 2l+2, kappa r)
    // Oscillator: alpha with R = C r^l e^{-alpha r^2/2} F(-n_r, l+3/2, alpha r^2)
    double scale = 0.0;
    double norm = 0.0;  // C
    KummerPoly F;
};

class NumericGrid;

struct RadialState {
    Potential potential;
    PhysicalParams params;
    int l = 0;
    int n_r = 0;
    double energy = 0.0;
    OriginBehavior origin;
    std::variant<AnalyticForm, std::shared_ptr<const NumericGrid>> form;

    bool analytic() const { return std::holds_alternative<AnalyticForm>(form); }
    const AnalyticForm& analytic_form() const;
    const NumericGrid& grid() const;
    std::string label() const;
};

struct RadialJet {
    double R = 0.0, dR = 0.0, d2R = 0.0;
};

RadialState make_coulomb_state(int n, int l, double e2, const PhysicalParams& params = {});
RadialState make_oscillator_state(int n_r, int l, double omega, const PhysicalParams& params = {});
// Not an eigenstate: a r^{P-1/2} e^{-lambda r} attached to V, used to probe origin behavior.
RadialState make_model_state(const Potential& V, int l, double P, double a, double lambda,
                             const PhysicalParams& params = {});

// R(r) and R'(r)
std::pair<double, double> evaluate_R(const RadialState& s, double r);
RadialJet evaluate_jet(const RadialState& s, double r);

double bohr_radius(double e2, const PhysicalParams& p);

}  // namespace radial
