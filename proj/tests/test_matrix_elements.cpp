#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "radial/errors.hpp"
#include "radial/matrix_elements.hpp"
#include "radial/theorems.hpp"

using namespace radial;

namespace {

// hydrogen moments in units of the Bohr radius
double h_moment(int n, int l, int s) {
    double L = l * (l + 1.0), N = n;
    switch (s) {
        case 1: return (3 * N * N - L) / 2;
        case 2: return N * N * (5 * N * N + 1 - 3 * L) / 2;
        case -1: return 1 / (N * N);
        case -2: return 1 / (N * N * N * (l + 0.5));
        case -3: return 1 / (N * N * N * l * (l + 0.5) * (l + 1));
    }
    return NAN;
}

}  // namespace

TEST_CASE("Laurent polynomial algebra") {
    LaurentPoly f = parse_laurent("1:3,-2:1");
    CHECK(f(2.0) == doctest::Approx(8.0 - 4.0));
    CHECK(f.derivative().str() == LaurentPoly({{3.0, 2}, {-2.0, 0}}).str());
    LaurentPoly g = f * LaurentPoly::monomial(1.0, -2) - LaurentPoly::monomial(1.0, 1);
    CHECK(g.coeff(1) == 0.0);
    CHECK(g.coeff(-1) == -2.0);
    CHECK(g.min_power() == -1);
    CHECK_THROWS_AS(parse_laurent("1:x"), ConfigError);
}

TEST_CASE("hydrogen moments, closed form") {
    for (int n = 1; n <= 12; ++n)
        for (int l = 0; l < n && l <= max_l; ++l) {
            auto st = make_coulomb_state(n, l, 1.0);
            for (int s : {1, 2, -1, -2}) CHECK(oracle::close(moment_closed(st, s), h_moment(n, l, s)) < 1e-11);
            if (l > 0) CHECK(oracle::close(moment_closed(st, -3), h_moment(n, l, -3)) < 1e-11);
        }
}

TEST_CASE("hydrogen 1/r^3 examples") {
    auto a = make_coulomb_state(2, 1, 1.0);
    CHECK(moment(a, -3) == doctest::Approx(1.0 / 24.0).epsilon(1e-13));
    auto b = make_coulomb_state(3, 1, 1.0);
    CHECK(moment(b, -3) == doctest::Approx(1.0 / 81.0).epsilon(1e-13));
}

TEST_CASE("oscillator moments") {
    for (int n_r = 0; n_r <= 6; ++n_r)
        for (int l = 0; l <= max_l; ++l) {
            double omega = 0.7;
            auto st = make_oscillator_state(n_r, l, omega);
            CHECK(oracle::close(moment(st, 2), (2 * n_r + l + 1.5) / omega) < 1e-12);
            CHECK(moment(st, 0) == doctest::Approx(1.0).epsilon(1e-13));
        }
    auto g = make_oscillator_state(0, 0, 1.0);
    CHECK(moment(g, 1) == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("closed form agrees with quadrature") {
    std::vector<RadialState> states = {make_coulomb_state(1, 0, 1.0), make_coulomb_state(4, 2, 1.0),
                                       make_coulomb_state(7, 3, 1.3), make_oscillator_state(3, 1, 1.0),
                                       make_oscillator_state(5, 4, 2.0)};
    for (const auto& st : states)
        for (double s : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
            double c = moment_closed(st, s), q = moment_quadrature(st, s);
            CHECK(oracle::close(c, q) < tol_quadrature);
        }
}

TEST_CASE("moments against an independent quadrature") {
    auto st = make_coulomb_state(3, 1, 1.0);
    for (double s : {-1.5, 0.5, 2.5}) {
        double ref = oracle::half_line(
            [&](double r) {
                double R = evaluate_R(st, r).first;
                return R * R * std::pow(r, s + 2);
            },
            200.0);
        CHECK(oracle::close(moment(st, s), ref) < 1e-10);
    }
}

TEST_CASE("non-integrable moments raise") {
    auto s1 = make_coulomb_state(1, 0, 1.0);
    CHECK_FALSE(moment_integrable(s1, -3));
    CHECK(moment_integrable(s1, -2));
    CHECK_THROWS_AS(moment(s1, -3), DivergentIntegral);
    CHECK_THROWS_AS(moment_closed(s1, -4), DivergentIntegral);
    auto p = make_coulomb_state(2, 1, 1.0);
    CHECK(moment_integrable(p, -4));
    CHECK_THROWS_AS(moment(p, -5), DivergentIntegral);
}

TEST_CASE("momentum expectation of a real state vanishes") {
    for (auto st : {make_coulomb_state(3, 1, 1.0), make_oscillator_state(2, 2, 1.0)}) {
        cplx v = expectation(st, OperatorSpec::pr());
        CHECK(std::abs(v) < 1e-10);
        CHECK(expectation(st, OperatorSpec::coordinate()).real() == doctest::Approx(moment(st, 1)).epsilon(1e-9));
    }
}

TEST_CASE("expectation of a Laurent weight is linear") {
    auto st = make_coulomb_state(3, 2, 1.0);
    LaurentPoly w({{2.0, 1}, {-1.5, -2}, {0.25, 2}});
    double direct = 2.0 * moment(st, 1) - 1.5 * moment(st, -2) + 0.25 * moment(st, 2);
    CHECK(expectation_weight(st, w) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("cross elements against Simpson") {
    auto a = make_coulomb_state(1, 0, 1.0);
    auto b = make_coulomb_state(2, 0, 1.0);
    double ref_r = oracle::half_line(
        [](double r) { return 2 * std::exp(-r) * (1 - r / 2) * std::exp(-r / 2) / std::sqrt(2.0) * r * r * r; }, 120.0);
    CHECK(cross_element(a, b, OperatorSpec::coordinate()).real() == doctest::Approx(ref_r).epsilon(1e-9));

    // p_r = -i (d/dr + 1/r)
    double ref_p = oracle::half_line(
        [&](double r) {
            auto [R, dR] = evaluate_R(b, r);
            return evaluate_R(a, r).first * (dR + R / r) * r * r;
        },
        120.0);
    cplx pr = cross_element(a, b, OperatorSpec::pr());
    CHECK(std::abs(pr.real()) < 1e-12);
    CHECK(pr.imag() == doctest::Approx(-ref_p).epsilon(1e-9));
}

TEST_CASE("cross elements need compatible states") {
    auto a = make_coulomb_state(2, 0, 1.0);
    CHECK_THROWS_AS(cross_element(a, make_coulomb_state(2, 1, 1.0), OperatorSpec::pr()), IncompatibleStates);
    CHECK_THROWS_AS(cross_element(a, make_coulomb_state(1, 0, 2.0), OperatorSpec::pr()), IncompatibleStates);
    CHECK_THROWS_AS(cross_element(a, make_oscillator_state(0, 0, 1.0), OperatorSpec::pr()), IncompatibleStates);
}

TEST_CASE("orthogonality of same-l states") {
    for (int n = 2; n <= 6; ++n) {
        auto a = make_coulomb_state(1, 0, 1.0), b = make_coulomb_state(n, 0, 1.0);
        CHECK(std::abs(cross_element(a, b, OperatorSpec::multiply(LaurentPoly::constant(1.0)))) < 1e-10);
    }
    auto a = make_oscillator_state(1, 2, 1.0), b = make_oscillator_state(3, 2, 1.0);
    CHECK(std::abs(cross_element(a, b, OperatorSpec::multiply(LaurentPoly::constant(1.0)))) < 1e-10);
}
