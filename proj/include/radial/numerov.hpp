#pragma once

#include <boost/math/interpolators/quintic_hermite.hpp>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radial/state.hpp"


namespace radial {

struct GridConfig {
    double step = 0.002;            // in x = ln r
    double r_min_factor = 1e-6;     // r_min = factor * natural length
    std::optional<double> r_max;    // override of the automatic outer radius
};

// Bound state on a uniform grid in x = ln r, stored as y = r^{-1/2} u so that
// y'' = [P^2 + (2m/hbar^2) r^2 (V + v0/r^2 - E)] y.
class NumericGrid {
public:
    NumericGrid(std::vector<double> r, std::vector<double> y, double h, double P, int l, double E,
                Potential V, PhysicalParams params);
    ~NumericGrid();

    const std::vector<double>& r() const { return r_; }
    const std::vector<double>& y() const { return y_; }
    double h() const { return h_; }
    double P() const { return P_; }
    double energy() const { return E_; }
    double r_min() const { return r_.front(); }
    double r_max() const { return r_.back(); }

    double u(size_t i) const;
    double R(size_t i) const;
    RadialJet jet(double r) const;

    // int R^2 w r^2 dr over (0, r_max], Simpson in x plus the power-law piece below r_min
    double integrate(const std::function<double(double)>& w) const;
    double integrate(const LaurentPoly& w) const;
    // int F dx for samples F_i on this grid; the piece below r_min is extrapolated as a power law
    double integrate_samples(const std::vector<double>& F) const;
    // y'' / y in x = ln r
    double g(double r) const;

    double match_cusp = 0.0;
    size_t match_index = 0;

private:
    std::vector<double> r_, y_;
    double h_, P_;
    int l_;
    double E_;
    Potential V_;
    PhysicalParams params_;
    std::unique_ptr<boost::math::interpolators::cardinal_quintic_hermite<std::vector<double>>> interp_;
};

RadialState solve_bound_state(const Potential& V, int l, int n_r, const PhysicalParams& params,
                              const GridConfig& cfg = {});

struct OriginFit {
    OriginBehavior origin;   // exact P, coefficient fitted at that fixed power
    double u_power = 0.0;    // free fit of log u against log r
    double u_coeff = 0.0;
    double residual = 0.0;
};
OriginFit fit_origin_coefficients(const RadialState& s);

// three columns r, u, R with '#' header lines
void write_grid_dump(const RadialState& s, const std::string& path);
RadialState load_grid_dump(const std::string& path);

}  // namespace radial
