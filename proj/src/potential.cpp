#include "radial/potential.hpp"

#include <boost/math/interpolators/makima.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "radial/errors.hpp"

namespace radial {

using boost::math::interpolators::makima;

struct TabulatedData {
    std::vector<double> r, v;
    // r^2 V is smooth at a soft-singular origin, so that is what gets interpolated
    std::unique_ptr<makima<std::vector<double>>> w;
};

void validate(const PhysicalParams& p) {
    if (!(p.hbar > 0.0) || !(p.mass > 0.0)) throw DomainError("hbar and mass must be positive");
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double base_value(const BasePotential& b, double r, const PhysicalParams& p) {
    return std::visit(overloaded{[&](const Coulomb& c) { return -c.e2 / r; },
                                 [&](const Oscillator& o) { return 0.5 * p.mass * o.omega * o.omega * r * r; }},
                      b);
}

double base_derivative(const BasePotential& b, double r, const PhysicalParams& p) {
    return std::visit(overloaded{[&](const Coulomb& c) { return c.e2 / (r * r); },
                                 [&](const Oscillator& o) { return p.mass * o.omega * o.omega * r; }},
                      b);
}

LaurentPoly base_laurent(const BasePotential& b, const PhysicalParams& p) {
    return std::visit(overloaded{[&](const Coulomb& c) { return LaurentPoly::monomial(-c.e2, -1); },
                                 [&](const Oscillator& o) { return LaurentPoly::monomial(0.5 * p.mass * o.omega * o.omega, 2); }},
                      b);
}

std::string base_describe(const BasePotential& b) {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{[&](const Coulomb& c) { os << "coulomb e2=" << c.e2; },
                          [&](const Oscillator& o) { os << "oscillator omega=" << o.omega; }},
               b);
    return os.str();
}

void check_tab_range(const TabulatedData& d, double r) {
    if (r < d.r.front() * (1 - 1e-12) || r > d.r.back() * (1 + 1e-12))
        throw ExtrapolationError("r = " + std::to_string(r) + " outside the tabulated range");
}

}  // namespace

const TabulatedData& tabulated_data(const Tabulated& t) { return *t.data; }
double tabulated_r_min(const Tabulated& t) { return t.data->r.front(); }
double tabulated_r_max(const Tabulated& t) { return t.data->r.back(); }

double Potential::operator()(double r) const {
    return std::visit(overloaded{[&](const Coulomb& c) { return base_value(c, r, params); },
                                 [&](const Oscillator& o) { return base_value(o, r, params); },
                                 [&](const InverseSquarePlus& s) {
                                     double v = -s.v0 / (r * r);
                                     if (s.base) v += base_value(*s.base, r, params);
                                     return v;
                                 },
                                 [&](const Tabulated& t) {
                                     check_tab_range(*t.data, r);
                                     return (*t.data->w)(r) / (r * r);
                                 }},
                      kind);
}

double Potential::derivative(double r) const {
    return std::visit(overloaded{[&](const Coulomb& c) { return base_derivative(c, r, params); },
                                 [&](const Oscillator& o) { return base_derivative(o, r, params); },
                                 [&](const InverseSquarePlus& s) {
                                     double d = 2.0 * s.v0 / (r * r * r);
                                     if (s.base) d += base_derivative(*s.base, r, params);
                                     return d;
                                 },
                                 [&](const Tabulated& t) {
                                     check_tab_range(*t.data, r);
                                     double w = (*t.data->w)(r), wp = t.data->w->prime(r);
                                     return wp / (r * r) - 2.0 * w / (r * r * r);
                                 }},
                      kind);
}

std::optional<LaurentPoly> Potential::laurent(const PhysicalParams& p) const {
    return std::visit(overloaded{[&](const Coulomb& c) -> std::optional<LaurentPoly> { return base_laurent(c, p); },
                                 [&](const Oscillator& o) -> std::optional<LaurentPoly> { return base_laurent(o, p); },
                                 [&](const InverseSquarePlus& s) -> std::optional<LaurentPoly> {
                                     LaurentPoly v = LaurentPoly::monomial(-s.v0, -2);
                                     if (s.base) v = v + base_laurent(*s.base, p);
                                     return v;
                                 },
                                 [&](const Tabulated&) -> std::optional<LaurentPoly> { return std::nullopt; }},
                      kind);
}

double Potential::inverse_square_strength() const {
    if (auto* s = std::get_if<InverseSquarePlus>(&kind)) return s->v0;
    if (auto* t = std::get_if<Tabulated>(&kind)) return t->origin_v0.value_or(0.0);
    return 0.0;
}

double Potential::natural_length(const PhysicalParams& p) const {
    auto base_len = [&](const BasePotential& b) {
        return std::visit(overloaded{[&](const Coulomb& c) { return p.hbar * p.hbar / (p.mass * c.e2); },
                                     [&](const Oscillator& o) { return std::sqrt(p.hbar / (p.mass * o.omega)); }},
                          b);
    };
    return std::visit(overloaded{[&](const Coulomb& c) { return base_len(c); },
                                 [&](const Oscillator& o) { return base_len(o); },
                                 [&](const InverseSquarePlus& s) { return s.base ? base_len(*s.base) : 1.0; },
                                 [&](const Tabulated&) { return 1.0; }},
                      kind);
}

std::string Potential::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{[&](const Coulomb& c) { os << base_describe(c); },
                          [&](const Oscillator& o) { os << base_describe(o); },
                          [&](const InverseSquarePlus& s) {
                              if (s.base && std::holds_alternative<Coulomb>(*s.base))
                                  os << "kratzer e2=" << std::get<Coulomb>(*s.base).e2 << " v0=" << s.v0;
                              else if (s.base)
                                  os << "inverse-square v0=" << s.v0 << " base=" << base_describe(*s.base);
                              else
                                  os << "inverse-square v0=" << s.v0;
                          },
                          [&](const Tabulated& t) {
                              os << "tabulated points=" << t.data->r.size();
                              if (t.origin_v0) os << " v0=" << *t.origin_v0;
                          }},
               kind);
    return os.str();
}

Potential make_coulomb(double e2, PhysicalParams p) {
    validate(p);
    if (!(e2 > 0.0)) throw DomainError("Coulomb coupling e2 must be positive");
    return Potential{Coulomb{e2}, p};
}

Potential make_oscillator(double omega, PhysicalParams p) {
    validate(p);
    if (!(omega > 0.0)) throw DomainError("oscillator frequency must be positive");
    return Potential{Oscillator{omega}, p};
}

Potential make_inverse_square(double v0, std::optional<BasePotential> base, PhysicalParams p) {
    validate(p);
    return Potential{InverseSquarePlus{v0, base}, p};
}

Potential make_kratzer(double e2, double v0, PhysicalParams p) {
    if (!(e2 > 0.0)) throw DomainError("Coulomb coupling e2 must be positive");
    return make_inverse_square(v0, BasePotential{Coulomb{e2}}, p);
}

Potential make_tabulated(std::vector<double> r, std::vector<double> v, std::optional<double> origin_v0,
                         PhysicalParams p) {
    validate(p);
    if (r.size() != v.size() || r.size() < 8) throw ConfigError("tabulated potential needs at least 8 (r, V) pairs");
    for (size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0)) throw ConfigError("tabulated radii must be positive");
        if (i > 0 && !(r[i] > r[i - 1])) throw ConfigError("tabulated radii must be strictly increasing");
        if (!std::isfinite(v[i])) throw ConfigError("tabulated potential values must be finite");
    }
    auto d = std::make_shared<TabulatedData>();
    d->r = r;
    d->v = v;
    std::vector<double> w(r.size());
    for (size_t i = 0; i < r.size(); ++i) w[i] = r[i] * r[i] * v[i];
    d->w = std::make_unique<makima<std::vector<double>>>(std::move(r), std::move(w));
    return Potential{Tabulated{d, origin_v0}, p};
}

Potential load_tabulated(const std::string& path, PhysicalParams p) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open tabulated potential '" + path + "'");
    std::vector<double> r, v;
    std::optional<double> v0;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            auto pos = line.find("v0=");
            if (pos != std::string::npos) {
                try {
                    v0 = std::stod(line.substr(pos + 3));
                } catch (const std::logic_error&) {
                    throw ConfigError("bad v0 header in '" + path + "'");
                }
            }
            continue;
        }
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a >> b)) throw ConfigError("bad data line in '" + path + "': " + line);
        r.push_back(a);
        v.push_back(b);
    }
    return make_tabulated(std::move(r), std::move(v), v0, p);
}

namespace {

Classification classify_tabulated(const Tabulated& t) {
    const auto& d = *t.data;
    size_t k = std::min<size_t>(8, d.r.size());
    std::vector<double> lx, ly;
    double sign = 0.0;
    bool all_zero = true;
    for (size_t i = 0; i < k; ++i) {
        double w = d.r[i] * d.r[i] * d.v[i];
        if (w != 0.0) all_zero = false;
        double s = (w > 0) - (w < 0);
        if (s != 0.0) {
            if (sign != 0.0 && s != sign) throw ClassificationError("r^2 V changes sign near the origin; no limit");
            sign = s;
        }
        if (w != 0.0) {
            lx.push_back(std::log(d.r[i]));
            ly.push_back(std::log(std::abs(w)));
        }
    }
    OriginClass kind;
    if (all_zero || lx.size() < 3) {
        kind = OriginClass::Regular;
    } else {
        double mx = 0, my = 0;
        for (size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
        mx /= lx.size();
        my /= ly.size();
        double sxy = 0, sxx = 0;
        for (size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
        double slope = sxy / sxx;
        kind = slope > 0.25 ? OriginClass::Regular : slope < -0.25 ? OriginClass::Singular : OriginClass::SoftSingular;
    }
    if (kind == OriginClass::Regular) {
        if (t.origin_v0 && *t.origin_v0 != 0.0)
            throw ClassificationError("declared v0 is nonzero but r^2 V -> 0 in the table");
        return {OriginClass::Regular, 0.0};
    }
    if (kind == OriginClass::Singular) return {OriginClass::Singular, 0.0};
    if (!t.origin_v0) throw ClassificationError("soft-singular table must declare its v0 in a '# v0=' header");
    return {OriginClass::SoftSingular, *t.origin_v0};
}

}  // namespace

Classification classify_potential(const Potential& V, const PhysicalParams& p) {
    validate(p);
    return std::visit(overloaded{[](const Coulomb&) { return Classification{OriginClass::Regular, 0.0}; },
                                 [](const Oscillator&) { return Classification{OriginClass::Regular, 0.0}; },
                                 [](const InverseSquarePlus& s) {
                                     if (s.v0 == 0.0) return Classification{OriginClass::Regular, 0.0};
                                     return Classification{OriginClass::SoftSingular, s.v0};
                                 },
                                 [](const Tabulated& t) { return classify_tabulated(t); }},
                      V.kind);
}

OriginBehavior origin_exponent(const Potential& V, int l, const PhysicalParams& p) {
    if (l < 0) throw InvalidQuantumNumbers("l must be nonnegative");
    auto c = classify_potential(V, p);
    OriginBehavior o;
    if (c.kind == OriginClass::Regular) {
        o.P = l + 0.5;
        o.leading_power = l;
        o.regular = true;
        return o;
    }
    if (c.kind == OriginClass::Singular)
        throw UnsupportedExtension("strongly singular potential: |r^2 V| grows without bound at the origin");
    double P2 = (l + 0.5) * (l + 0.5) - 2.0 * p.mass * c.v0 / (p.hbar * p.hbar);
    if (P2 < 0.0) throw FallingToCenter("P^2 = " + std::to_string(P2) + " < 0: falling to the center");
    double P = std::sqrt(P2);
    if (P < 0.5)
        throw UnsupportedExtension("P = " + std::to_string(P) + " < 1/2 needs a self-adjoint extension choice");
    o.P = P;
    o.leading_power = P - 0.5;
    o.regular = false;
    return o;
}

}  // namespace radial
