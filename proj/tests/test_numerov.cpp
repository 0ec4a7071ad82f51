#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "radial/errors.hpp"
#include "radial/matrix_elements.hpp"
#include "radial/numerov.hpp"
#include "radial/theorems.hpp"

using namespace radial;

namespace {

double kratzer_energy(int n_r, double P) { return -1.0 / (2.0 * (n_r + 0.5 + P) * (n_r + 0.5 + P)); }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("radial_test_" + name)).string();
}

}  // namespace

TEST_CASE("Numerov energies on the examples") {
    PhysicalParams p;
    CHECK(std::abs(solve_bound_state(make_coulomb(1.0), 0, 0, p).energy + 0.5) <= 5e-7);
    CHECK(std::abs(solve_bound_state(make_oscillator(1.0), 1, 0, p).energy - 2.5) <= 5e-7);
    CHECK(std::abs(solve_bound_state(make_kratzer(1.0, 1.0), 1, 0, p).energy + 0.5) <= 1e-5);
}

TEST_CASE("Numerov energies against the closed-form spectra") {
    PhysicalParams p;
    for (int n = 1; n <= 4; ++n)
        for (int l = 0; l < n; ++l) {
            auto st = solve_bound_state(make_coulomb(1.0), l, n - l - 1, p);
            CHECK(std::abs(st.energy / (-0.5 / (n * n)) - 1.0) <= 1e-6);
        }
    for (int n_r = 0; n_r <= 3; ++n_r)
        for (int l = 0; l <= 3; ++l) {
            auto st = solve_bound_state(make_oscillator(1.0), l, n_r, p);
            CHECK(std::abs(st.energy / (2 * n_r + l + 1.5) - 1.0) <= 1e-6);
        }
    for (int n_r = 0; n_r <= 2; ++n_r) {
        auto st = solve_bound_state(make_kratzer(1.0, 0.3), 2, n_r, p);
        double P = std::sqrt(6.25 - 0.6);
        CHECK(std::abs(st.energy / kratzer_energy(n_r, P) - 1.0) <= 1e-6);
    }
}

TEST_CASE("Numerov respects hbar and mass") {
    PhysicalParams p{1.5, 0.8};
    auto st = solve_bound_state(make_coulomb(1.2, p), 1, 1, p);
    double exact = -p.mass * 1.44 / (2 * p.hbar * p.hbar * 9);
    CHECK(std::abs(st.energy / exact - 1.0) <= 1e-6);
}

TEST_CASE("origin coefficient fits") {
    PhysicalParams p;
    auto h = fit_origin_coefficients(solve_bound_state(make_coulomb(1.0), 0, 0, p));
    CHECK(std::abs(h.origin.leading_coeff - 2.0) <= 2e-3);
    CHECK(h.u_power == doctest::Approx(1.0).epsilon(1e-3));

    auto o = fit_origin_coefficients(solve_bound_state(make_oscillator(1.0), 1, 0, p));
    double C = make_oscillator_state(0, 1, 1.0).origin.leading_coeff;
    CHECK(std::abs(o.origin.leading_coeff / C - 1.0) <= 1e-3);

    auto k = fit_origin_coefficients(solve_bound_state(make_kratzer(1.0, 1.0), 1, 0, p));
    CHECK(std::abs(k.u_power - 1.0) <= 1e-3);
    CHECK(k.origin.P == doctest::Approx(0.5));
    CHECK(k.residual < 1e-6);
}

TEST_CASE("fitted coefficients match the closed forms") {
    PhysicalParams p;
    for (int n = 1; n <= 4; ++n)
        for (int l = 0; l < n; ++l) {
            auto fit = fit_origin_coefficients(solve_bound_state(make_coulomb(1.0), l, n - l - 1, p));
            double C = make_coulomb_state(n, l, 1.0).origin.leading_coeff;
            CHECK(std::abs(std::abs(fit.origin.leading_coeff) / C - 1.0) <= 1e-3);
        }
}

TEST_CASE("numeric states are normalized with decaying tails") {
    PhysicalParams p;
    for (const auto& st : {solve_bound_state(make_coulomb(1.0), 0, 2, p), solve_bound_state(make_oscillator(1.0), 2, 1, p),
                           solve_bound_state(make_kratzer(1.0, 1.0), 1, 0, p)}) {
        const auto& g = st.grid();
        CHECK(std::abs(g.integrate(LaurentPoly::constant(1.0)) - 1.0) <= 1e-8);
        double peak = 0.0;
        for (size_t i = 0; i < g.r().size(); ++i) peak = std::max(peak, std::abs(g.u(i)));
        CHECK(std::abs(g.u(g.r().size() - 1)) <= 1e-8 * peak);
    }
}

TEST_CASE("halving the step cuts the energy error by at least 8") {
    PhysicalParams p;
    struct Case {
        Potential V;
        int l, n_r;
        double exact;
    };
    std::vector<Case> cases = {{make_coulomb(1.0), 0, 0, -0.5},
                               {make_coulomb(1.0), 1, 1, -0.5 / 9},
                               {make_oscillator(1.0), 0, 1, 3.5},
                               {make_oscillator(1.0), 2, 0, 3.5}};
    for (const auto& c : cases) {
        GridConfig coarse, fine;
        coarse.step = 0.02;
        fine.step = 0.01;
        double e1 = std::abs(solve_bound_state(c.V, c.l, c.n_r, p, coarse).energy - c.exact);
        double e2 = std::abs(solve_bound_state(c.V, c.l, c.n_r, p, fine).energy - c.exact);
        CHECK(e1 / e2 >= 8.0);
    }
}

TEST_CASE("more nodes means higher energy") {
    PhysicalParams p;
    for (int l = 0; l <= 2; ++l) {
        double prev = -INFINITY;
        for (int n_r = 0; n_r <= 4; ++n_r) {
            double E = solve_bound_state(make_kratzer(1.0, 0.2), l + 1, n_r, p).energy;
            CHECK(E > prev);
            prev = E;
        }
    }
}

TEST_CASE("numeric and closed-form wavefunctions agree") {
    PhysicalParams p;
    auto compare = [&](const RadialState& num, const RadialState& ana) {
        const auto& g = num.grid();
        double dot = 0.0;
        for (size_t i = 0; i < g.r().size(); ++i) dot += g.R(i) * evaluate_R(ana, g.r()[i]).first;
        double sign = dot < 0 ? -1.0 : 1.0;
        double worst = 0.0;
        for (size_t i = 0; i < g.r().size() && g.r()[i] <= 60.0; ++i) {
            double r = g.r()[i];
            worst = std::max(worst, std::abs(sign * g.R(i) - evaluate_R(ana, r).first) * r);
        }
        return worst;
    };
    for (int n = 1; n <= 3; ++n)
        for (int l = 0; l < n; ++l)
            CHECK(compare(solve_bound_state(make_coulomb(1.0), l, n - l - 1, p), make_coulomb_state(n, l, 1.0)) <= 1e-6);
    for (int n_r = 0; n_r <= 2; ++n_r)
        for (int l = 0; l <= 2; ++l)
            CHECK(compare(solve_bound_state(make_oscillator(1.0), l, n_r, p), make_oscillator_state(n_r, l, 1.0)) <= 1e-6);
}

TEST_CASE("Dirichlet start follows the series") {
    PhysicalParams p;
    auto st = solve_bound_state(make_kratzer(1.0, 0.5), 1, 1, p);
    const auto& g = st.grid();
    auto fit = fit_origin_coefficients(st);
    double r0 = g.r_min();
    double series = fit.origin.leading_coeff * std::pow(r0, st.origin.P + 0.5);
    CHECK(g.u(0) == doctest::Approx(series).epsilon(1e-4));
    CHECK(std::abs(g.u(0)) < 1e-5);
    CHECK(r0 == doctest::Approx(1e-6 * make_kratzer(1.0, 0.5).natural_length(p)));
}

TEST_CASE("numeric re-verification of the delta cases") {
    PhysicalParams p;
    auto s1 = verify_numeric(solve_bound_state(make_coulomb(1.0), 0, 0, p), -1);
    CHECK(s1.pass);
    CHECK(s1.tolerance == tol_numeric);
    CHECK(std::abs(0.5 * s1.lhs_sum() - 2.0) <= 1e-4);
    CHECK(std::abs(0.5 * s1.rhs_boundary - 2.0) <= 1e-4);
    auto p2 = verify_numeric(solve_bound_state(make_coulomb(1.0), 1, 0, p), -3);
    CHECK(p2.pass);
    CHECK(std::abs(0.5 * p2.lhs_sum() - 0.1875) <= 1e-4);
    CHECK(std::abs(0.5 * p2.rhs_boundary - 0.1875) <= 1e-4);
    auto o = verify_numeric(solve_bound_state(make_oscillator(1.0), 1, 1, p), -1);
    CHECK(std::abs(o.residual) <= 1e-5 * o.scale);
    auto k = verify_numeric(solve_bound_state(make_kratzer(1.0, 1.0), 1, 0, p), 0);
    CHECK(std::abs(k.residual) <= 1e-5 * k.scale);
}

TEST_CASE("numeric moments match the closed forms") {
    PhysicalParams p;
    auto num = solve_bound_state(make_coulomb(1.0), 1, 1, p);
    auto ana = make_coulomb_state(3, 1, 1.0);
    for (double s : {-2.0, -1.0, 1.0, 2.0}) CHECK(std::abs(moment(num, s) / moment(ana, s) - 1.0) <= 1e-6);
}

TEST_CASE("grid dump round trip") {
    PhysicalParams p;
    auto st = solve_bound_state(make_kratzer(1.0, 1.0), 1, 0, p);
    std::string path = temp_path("dump.txt");
    write_grid_dump(st, path);
    auto back = load_grid_dump(path);
    CHECK(back.energy == doctest::Approx(st.energy).epsilon(1e-12));
    CHECK(back.l == 1);
    CHECK(back.n_r == 0);
    CHECK(back.origin.P == doctest::Approx(st.origin.P).epsilon(1e-12));
    CHECK(back.potential.describe() == st.potential.describe());
    for (double r : {1e-4, 0.3, 2.0, 9.0})
        CHECK(evaluate_R(back, r).first == doctest::Approx(evaluate_R(st, r).first).epsilon(1e-9));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_grid_dump(temp_path("missing.txt")), IoError);
    CHECK_THROWS_AS(write_grid_dump(st, "/nonexistent/dir/x.txt"), IoError);
}

TEST_CASE("solver errors") {
    PhysicalParams p;
    CHECK_THROWS_AS(solve_bound_state(make_inverse_square(0.5, std::nullopt), 1, 0, p), BracketingError);
    CHECK_THROWS_AS(solve_bound_state(make_inverse_square(0.1, std::nullopt), 0, 0, p), UnsupportedExtension);
    CHECK_THROWS_AS(solve_bound_state(make_coulomb(1.0), -1, 0, p), InvalidQuantumNumbers);
    GridConfig bad;
    bad.step = 0.0;
    CHECK_THROWS_AS(solve_bound_state(make_coulomb(1.0), 0, 0, p, bad), ConfigError);
    bad.step = 0.08;
    CHECK_THROWS_AS(solve_bound_state(make_oscillator(1.0), 0, 0, p, bad), ConfigError);
}

TEST_CASE("tabulated potentials solve like their closed forms") {
    PhysicalParams p;
    std::vector<double> r, v;
    for (double x = 1e-3; x < 40.0; x *= 1.01) {
        r.push_back(x);
        v.push_back(0.5 * x * x);
    }
    auto st = solve_bound_state(make_tabulated(r, v, std::nullopt), 1, 0, p);
    CHECK(st.energy == doctest::Approx(2.5).epsilon(1e-5));
    auto bal = ehrenfest_radial(st);
    CHECK(std::abs(bal.balance) <= 1e-4 * bal.scale);
}
