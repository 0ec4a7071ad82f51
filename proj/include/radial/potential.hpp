#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "radial/laurent.hpp"

namespace radial {

struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;
};
void validate(const PhysicalParams& p);

struct Coulomb {
    double e2 = 1.0;
};
struct Oscillator {
    double omega = 1.0;
};
using BasePotential = std::variant<Coulomb, Oscillator>;

// base(r) - v0 / r^2; v0 > 0 is attractive
struct InverseSquarePlus {
    double v0 = 0.0;
    std::optional<BasePotential> base;
};

struct TabulatedData;
struct Tabulated {
    std::shared_ptr<const TabulatedData> data;
    std::optional<double> origin_v0;  // r^2 V -> -origin_v0
};

enum class OriginClass { Regular, SoftSingular, Singular };

struct Classification {
    OriginClass kind = OriginClass::Regular;
    double v0 = 0.0;
};

struct Potential {
    std::variant<Coulomb, Oscillator, InverseSquarePlus, Tabulated> kind;

    double operator()(double r) const;
    double derivative(double r) const;
    // exact Laurent form when V is built from closed-form pieces
    std::optional<LaurentPoly> laurent(const PhysicalParams& p) const;
    // coefficient of -1/r^2 in V (declared or structural)
    double inverse_square_strength() const;
    // natural length: Bohr radius, oscillator length, or 1 for tables
    double natural_length(const PhysicalParams& p) const;
    std::string describe() const;
    // physical params are needed for the oscillator's m omega^2 / 2
    PhysicalParams params;
};

Potential make_coulomb(double e2, PhysicalParams p = {});
Potential make_oscillator(double omega, PhysicalParams p = {});
Potential make_kratzer(double e2, double v0, PhysicalParams p = {});
Potential make_inverse_square(double v0, std::optional<BasePotential> base, PhysicalParams p = {});
Potential make_tabulated(std::vector<double> r, std::vector<double> v, std::optional<double> origin_v0,
                         PhysicalParams p = {});
Potential load_tabulated(const std::string& path, PhysicalParams p = {});

const TabulatedData& tabulated_data(const Tabulated& t);
double tabulated_r_min(const Tabulated& t);
double tabulated_r_max(const Tabulated& t);

Classification classify_potential(const Potential& V, const PhysicalParams& p);

struct OriginBehavior {
    double P = 0.5;
    double leading_coeff = 0.0;
    double leading_power = 0.0;
    bool regular = true;
};

// exponent part only; leading_coeff left at 0
OriginBehavior origin_exponent(const Potential& V, int l, const PhysicalParams& p);

}  // namespace radial
