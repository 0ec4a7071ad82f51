#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "radial/errors.hpp"
#include "radial/state.hpp"

using namespace radial;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

double norm_by_quadrature(const RadialState& st, double r_max) {
    return oracle::half_line(
        [&](double r) {
            double R = evaluate_R(st, r).first;
            return R * R * r * r;
        },
        r_max, 100000);
}

}  // namespace

TEST_CASE("classification of closed-form potentials") {
    PhysicalParams p;
    CHECK(classify_potential(make_coulomb(1.0), p).kind == OriginClass::Regular);
    CHECK(classify_potential(make_oscillator(2.0), p).kind == OriginClass::Regular);
    auto k = classify_potential(make_kratzer(1.0, 0.3), p);
    CHECK(k.kind == OriginClass::SoftSingular);
    CHECK(k.v0 == 0.3);
    CHECK(classify_potential(make_inverse_square(0.0, std::nullopt), p).kind == OriginClass::Regular);
}

TEST_CASE("origin exponent") {
    PhysicalParams p;
    for (int l = 0; l <= max_l; ++l) {
        auto o = origin_exponent(make_coulomb(1.0), l, p);
        CHECK(o.P == l + 0.5);
        CHECK(o.regular);
    }
    auto o = origin_exponent(make_kratzer(1.0, 1.0), 1, p);
    CHECK(o.P == doctest::Approx(0.5));
    CHECK_FALSE(o.regular);
    CHECK(origin_exponent(make_kratzer(1.0, 27.0 / 32.0), 1, p).P == doctest::Approx(0.75));
    // repulsive inverse square raises P
    CHECK(origin_exponent(make_inverse_square(-0.5, std::nullopt), 0, p).P == doctest::Approx(std::sqrt(1.25)));
    CHECK_THROWS_AS(origin_exponent(make_inverse_square(0.2, std::nullopt), 0, p), FallingToCenter);
    CHECK_THROWS_AS(origin_exponent(make_inverse_square(0.1, std::nullopt), 0, p), UnsupportedExtension);
    CHECK_THROWS_AS(origin_exponent(make_coulomb(1.0), -1, p), InvalidQuantumNumbers);
}

TEST_CASE("origin exponent scales with hbar and mass") {
    PhysicalParams p{2.0, 0.5};
    double v0 = 0.7;
    double P2 = 2.25 - 2.0 * p.mass * v0 / (p.hbar * p.hbar);
    CHECK(origin_exponent(make_kratzer(1.0, v0, p), 1, p).P == doctest::Approx(std::sqrt(P2)));
}

TEST_CASE("tabulated classification") {
    std::vector<double> r;
    for (int i = 0; i < 60; ++i) r.push_back(1e-3 * std::pow(1.15, i));
    std::vector<double> reg, soft, sing;
    for (double x : r) {
        reg.push_back(0.5 * x * x);
        soft.push_back(-0.3 / (x * x) - 1.0 / x);
        sing.push_back(-1.0 / (x * x * x));
    }
    PhysicalParams p;
    CHECK(classify_potential(make_tabulated(r, reg, std::nullopt), p).kind == OriginClass::Regular);
    auto c = classify_potential(make_tabulated(r, soft, 0.3), p);
    CHECK(c.kind == OriginClass::SoftSingular);
    CHECK(c.v0 == 0.3);
    CHECK_THROWS_AS(classify_potential(make_tabulated(r, soft, std::nullopt), p), ClassificationError);
    CHECK(classify_potential(make_tabulated(r, sing, std::nullopt), p).kind == OriginClass::Singular);
    CHECK_THROWS_AS(origin_exponent(make_tabulated(r, sing, std::nullopt), 0, p), UnsupportedExtension);
}

TEST_CASE("tabulated validation") {
    auto r = linspace(0.1, 1.0, 7);
    std::vector<double> v(7, 0.0);
    CHECK_THROWS_AS(make_tabulated(r, v, std::nullopt), ConfigError);
    r = linspace(0.1, 1.0, 9);
    v.assign(9, 0.0);
    r[4] = r[3];
    CHECK_THROWS_AS(make_tabulated(r, v, std::nullopt), ConfigError);
    r = linspace(0.1, 1.0, 9);
    v[2] = NAN;
    CHECK_THROWS_AS(make_tabulated(r, v, std::nullopt), ConfigError);
    CHECK_THROWS_AS(load_tabulated("/nonexistent/table.dat"), IoError);
}

TEST_CASE("tabulated interpolation reproduces a smooth potential") {
    auto r = linspace(0.05, 6.0, 400);
    std::vector<double> v;
    for (double x : r) v.push_back(0.5 * x * x);
    Potential V = make_tabulated(r, v, std::nullopt);
    CHECK(V(1.2345) == doctest::Approx(0.5 * 1.2345 * 1.2345).epsilon(1e-6));
    CHECK(V.derivative(2.5) == doctest::Approx(2.5).epsilon(1e-3));
}

TEST_CASE("state quantum number validation") {
    CHECK_THROWS_AS(make_coulomb_state(2, 2, 1.0), InvalidQuantumNumbers);
    CHECK_THROWS_AS(make_coulomb_state(0, 0, 1.0), InvalidQuantumNumbers);
    CHECK_THROWS_AS(make_coulomb_state(13, 0, 1.0), EnvelopeError);
    CHECK_THROWS_AS(make_coulomb_state(9, 7, 1.0), EnvelopeError);
    CHECK_THROWS_AS(make_oscillator_state(-1, 0, 1.0), InvalidQuantumNumbers);
    CHECK_THROWS_AS(make_oscillator_state(0, 7, 1.0), EnvelopeError);
    CHECK_THROWS_AS(make_coulomb_state(1, 0, 1.0, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(make_coulomb(-1.0), DomainError);
}

TEST_CASE("hydrogen normalization constants") {
    auto s1 = make_coulomb_state(1, 0, 1.0);
    CHECK(s1.origin.leading_coeff * s1.origin.leading_coeff == doctest::Approx(4.0).epsilon(1e-14));
    auto s21 = make_coulomb_state(2, 1, 1.0);
    CHECK(s21.origin.leading_coeff * s21.origin.leading_coeff == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
    // C_0^2 = 4 / (n^3 a0^3)
    for (int n = 1; n <= 12; ++n) {
        auto s = make_coulomb_state(n, 0, 1.0);
        CHECK(oracle::close(s.origin.leading_coeff * s.origin.leading_coeff, 4.0 / (n * n * n)) < 1e-13);
    }
    auto o = make_oscillator_state(0, 0, 1.0);
    CHECK(o.origin.leading_coeff * o.origin.leading_coeff ==
          doctest::Approx(4.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("textbook hydrogen wavefunctions") {
    auto s2 = make_coulomb_state(2, 0, 1.0);
    auto p2 = make_coulomb_state(2, 1, 1.0);
    auto d3 = make_coulomb_state(3, 2, 1.0);
    for (double r : {0.01, 0.5, 1.0, 3.0, 7.5}) {
        double e = std::exp(-r / 2.0);
        CHECK(evaluate_R(s2, r).first == doctest::Approx((1.0 - r / 2.0) * e / std::sqrt(2.0)).epsilon(1e-13));
        CHECK(evaluate_R(p2, r).first == doctest::Approx(r * e / (2.0 * std::sqrt(6.0))).epsilon(1e-13));
        CHECK(evaluate_R(d3, r).first ==
              doctest::Approx(4.0 / (81.0 * std::sqrt(30.0)) * r * r * std::exp(-r / 3.0)).epsilon(1e-13));
    }
}

TEST_CASE("Bohr radius and energies follow the parameters") {
    PhysicalParams p{1.3, 0.7};
    double e2 = 2.1;
    auto s = make_coulomb_state(3, 1, e2, p);
    CHECK(s.energy == doctest::Approx(-p.mass * e2 * e2 / (2 * p.hbar * p.hbar * 9)));
    CHECK(bohr_radius(e2, p) == doctest::Approx(p.hbar * p.hbar / (p.mass * e2)));
    auto o = make_oscillator_state(2, 3, 0.8, p);
    CHECK(o.energy == doctest::Approx(p.hbar * 0.8 * (4 + 3 + 1.5)));
}

TEST_CASE("closed-form states are unit normalized") {
    for (int n = 1; n <= 12; n += 3)
        for (int l = 0; l < n && l <= max_l; l += 2) {
            auto s = make_coulomb_state(n, l, 1.0);
            CHECK(norm_by_quadrature(s, 60.0 * n * n) == doctest::Approx(1.0).epsilon(1e-9));
        }
    for (int n_r = 0; n_r <= 12; n_r += 4)
        for (int l = 0; l <= max_l; l += 3) {
            auto s = make_oscillator_state(n_r, l, 1.0);
            CHECK(norm_by_quadrature(s, 120.0) == doctest::Approx(1.0).epsilon(1e-9));
        }
}

TEST_CASE("radial derivative matches finite differences") {
    auto s = make_oscillator_state(3, 2, 1.3);
    for (double r : {0.3, 1.1, 2.4}) {
        double h = 1e-5;
        double fd = (evaluate_R(s, r + h).first - evaluate_R(s, r - h).first) / (2 * h);
        CHECK(evaluate_R(s, r).second == doctest::Approx(fd).epsilon(1e-8));
    }
    CHECK_THROWS_AS(evaluate_R(s, 0.0), DomainError);
}

TEST_CASE("states satisfy the radial equation") {
    auto check = [](const RadialState& s) {
        for (double r : {0.2, 0.9, 2.0, 4.0}) {
            auto j = evaluate_jet(s, r);
            double V = s.potential(r);
            double lhs = -0.5 * (j.d2R + 2.0 * j.dR / r - s.l * (s.l + 1) * j.R / (r * r)) + V * j.R;
            CHECK(std::abs(lhs - s.energy * j.R) < 1e-11 * std::max(1.0, std::abs(s.energy * j.R)));
        }
    };
    check(make_coulomb_state(4, 2, 1.0));
    check(make_oscillator_state(2, 1, 1.0));
}
