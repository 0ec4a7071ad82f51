#include "radial/specfun.hpp"

#include <cmath>
#include <string>

#include "radial/errors.hpp"

namespace radial {

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

double pochhammer(double a, int n) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= a + k;
    return p;
}

static void check_degree(int n) {
    if (n < 0) throw DomainError("Kummer polynomial degree must be nonnegative");
    if (n > max_principal) throw EnvelopeError("Kummer polynomial degree " + std::to_string(n) + " outside supported range");
}

KummerPoly make_kummer_poly(int n, double b) {
    check_degree(n);
    if (!(b > 0.0)) throw DomainError("Kummer polynomial needs b > 0");
    KummerPoly p;
    p.n = n;
    p.b = b;
    p.coeffs.resize(n + 1);
    p.coeffs[0] = 1.0;
    // c_{k+1} = c_k (k - n) / ((b + k)(k + 1))
    for (int k = 0; k < n; ++k) p.coeffs[k + 1] = p.coeffs[k] * (k - n) / ((b + k) * (k + 1));
    return p;
}

double KummerPoly::operator()(double x) const {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

double KummerPoly::derivative(double x) const {
    double v = 0.0;
    for (int k = n; k >= 1; --k) v = v * x + k * coeffs[k];
    return v;
}

double kummer_poly_eval(int n, double b, double x) { return make_kummer_poly(n, b)(x); }

double kummer_moment_integral(int n, double gamma, double k, double nu) {
    check_degree(n);
    if (!(nu > 0.0)) throw DivergentIntegral("Kummer moment integral diverges at the origin for nu = " + std::to_string(nu));
    if (!(gamma > 0.0) || !(k > 0.0)) throw DomainError("Kummer moment integral needs gamma > 0 and k > 0");

    double log_pref = ln_gamma(nu) + ln_gamma(n + 1.0) - nu * std::log(k) - (ln_gamma(gamma + n) - ln_gamma(gamma));

    long double bracket = 1.0L;
    long double falling = 1.0L;  // n (n-1) ... (n-s)
    long double fact = 1.0L;     // (s+1)!
    long double poch = 1.0L;     // gamma (gamma+1) ... (gamma+s)
    long double d = static_cast<long double>(gamma) - nu;
    long double prod = 1.0L;     // prod_{j=-s-1}^{s} (d + j)
    for (int s = 0; s < n; ++s) {
        falling *= n - s;
        fact *= s + 1;
        poch *= gamma + s;
        if (s == 0)
            prod = (d - 1) * d;
        else
            prod *= (d - s - 1) * (d + s);
        bracket += falling * prod / (fact * fact * poch);
    }
    return std::exp(log_pref) * static_cast<double>(bracket);
}

}  // namespace radial
