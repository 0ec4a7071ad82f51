#pragma once

#include <complex>
#include <vector>

#include "radial/laurent.hpp"

namespace radial {

using cplx = std::complex<double>;

struct PowerTerm {
    double power;
    cplx coeff;
};

// sum_k c_k r^{p_k} * exp(-lambda r^order); order is 1 or 2 (0 means no envelope).
// Like powers are merged on construction; a merged coefficient is dropped when it
// is below 1e-12 of the magnitudes that produced it.
class ExpPoly {
public:
    ExpPoly() = default;
    ExpPoly(std::vector<PowerTerm> terms, double lambda, int order);

    const std::vector<PowerTerm>& terms() const { return terms_; }
    double lambda() const { return lambda_; }
    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }

    // lowest power with a surviving coefficient; +inf for the zero function
    double lowest_power() const;
    cplx coeff_at(double power) const;

    cplx operator()(double r) const;
    ExpPoly derivative() const;
    ExpPoly times(const LaurentPoly& f) const;
    ExpPoly times_power(double k) const;
    ExpPoly scaled(cplx c) const;
    ExpPoly conj() const;

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);

    // sum of scaled pieces merged in one pass, so cancellations are judged against all contributions
    static ExpPoly combine(const std::vector<std::pair<cplx, ExpPoly>>& pieces);

private:
    std::vector<PowerTerm> terms_;  // ascending powers
    double lambda_ = 0.0;
    int order_ = 0;
};

// limit r -> 0 of an ExpPoly: finite iff no negative powers survive
struct OriginLimit {
    bool finite;
    cplx value;
    double leading_power;
};
OriginLimit origin_limit(const ExpPoly& f);

// int_0^inf f(r) r^2 dr by adaptive Gauss-Kronrod on [0, r_split] and exp-sinh beyond
cplx integrate_r2(const ExpPoly& f);
// int_0^inf a(r) b(r) r^{2+s} dr with the factors evaluated separately
cplx integrate_r2(const ExpPoly& a, const ExpPoly& b, double s = 0.0);
double quadrature_split(const ExpPoly& f);

}  // namespace radial
