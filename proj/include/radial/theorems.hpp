#pragma once

#include <string>
#include <vector>

#include "radial/boundary.hpp"
#include "radial/laurent.hpp"
#include "radial/state.hpp"

namespace radial {

inline constexpr double tol_closed = 1e-9;
inline constexpr double tol_quadrature = 1e-6;
inline constexpr double tol_numeric = 1e-5;

struct CaseKey {
    std::string theorem;
    std::string potential;
    int n_r = 0;
    int l = 0;
    std::string s_or_f;
    std::string mode;
};

struct NamedValue {
    std::string name;
    double value;
};

struct SumRuleReport {
    CaseKey key;
    std::vector<NamedValue> lhs_terms;
    double rhs_boundary = 0.0;
    double residual = 0.0;
    double scale = 0.0;
    double tolerance = tol_closed;
    bool pass = false;
    bool delta_triggered = false;
    bool combined_mode = false;

    double lhs_sum() const;
};

struct ForceBalanceReport {
    CaseKey key;
    double centrifugal = 0.0;
    double mean_force = 0.0;
    double boundary_force = 0.0;
    double balance = 0.0;
    PiVerdict boundary_verdict = PiVerdict::Zero;
    bool combined_mode = false;
    double scale = 0.0;
    double tolerance = tol_closed;
    bool pass = false;
};

struct CoordinateReport {
    CaseKey key;
    cplx pr_expectation = 0.0;
    PiResult pi;
    double tolerance = 0.0;
    bool pass = false;
};

struct TimeSample {
    double t;
    cplx d_dt;        // d<A>/dt from the phase factors
    cplx commutator;  // (i/hbar) <[H, A]>
    cplx pi;
    cplx residual;            // commutator + pi - d_dt
    cplx residual_without_pi; // commutator - d_dt
    double scale;
};

struct TimeDerivativeReport {
    CaseKey key;
    std::vector<TimeSample> samples;
    double tolerance = 1e-7;
    bool pass = false;
};

enum class KramersMode { Classic, Modified };
enum class Formulation { Commutator, Bracket };

double default_tolerance(const RadialState& st);

SumRuleReport kramers(const RadialState& st, int s, KramersMode mode);
SumRuleReport hypervirial_general(const RadialState& st, const LaurentPoly& f, Formulation form);
SumRuleReport hypervirial_power(const RadialState& st, int s);
SumRuleReport verify_numeric(const RadialState& st, int s);
ForceBalanceReport ehrenfest_radial(const RadialState& st);
CoordinateReport ehrenfest_coordinate(const RadialState& st);
TimeDerivativeReport time_derivative_check(const RadialState& a, const RadialState& b, const OperatorSpec& op,
                                           const std::vector<double>& times);
SumRuleReport contact_density_check(const RadialState& st);

// one beat period 2 pi hbar / |E_a - E_b|, sampled at n equally spaced times
std::vector<double> beat_times(const RadialState& a, const RadialState& b, int n);

}  // namespace radial
