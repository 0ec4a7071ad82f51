#pragma once

// Independent reference integrals for the tests. Plain composite Simpson on a
// substituted variable, no library quadrature involved.

#include <cmath>
#include <algorithm>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    double h = (b - a) / n, s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// int_0^inf g(r) dr for g decaying at least like exp(-c r); r = w^2 removes
// half-integer power singularities at the origin
inline double half_line(const std::function<double(double)>& g, double r_max, int n = 200000) {
    return simpson([&](double w) { return 2.0 * std::max(w, 1e-150) * g(std::max(w * w, 1e-300)); }, 0.0, std::sqrt(r_max), n);
}

inline double close(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace oracle
