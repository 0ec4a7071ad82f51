#pragma once

#include <vector>

namespace radial {

inline constexpr int max_principal = 12;
inline constexpr int max_l = 6;

double ln_gamma(double x);

// (a)_n, rising factorial
double pochhammer(double a, int n);

// 1F1(-n; b; x) as explicit coefficients of x^k
struct KummerPoly {
    int n = 0;
    double b = 1.0;
    std::vector<double> coeffs;

    double operator()(double x) const;
    double derivative(double x) const;
};

KummerPoly make_kummer_poly(int n, double b);
double kummer_poly_eval(int n, double b, double x);

// int_0^inf e^{-kz} z^{nu-1} [1F1(-n; gamma; kz)]^2 dz
double kummer_moment_integral(int n, double gamma, double k, double nu);

}  // namespace radial
