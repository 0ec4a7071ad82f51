#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace radial {

struct LaurentTerm {
    double coeff;
    int power;
};

// Real Laurent polynomial in r; terms kept with distinct powers, descending.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(std::initializer_list<LaurentTerm> terms);
    explicit LaurentPoly(std::vector<LaurentTerm> terms);

    static LaurentPoly monomial(double coeff, int power) { return LaurentPoly({{coeff, power}}); }
    static LaurentPoly constant(double c) { return monomial(c, 0); }

    const std::vector<LaurentTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int min_power() const;
    int max_power() const;
    double coeff(int power) const;

    double operator()(double r) const;
    LaurentPoly derivative() const;
    LaurentPoly shifted(int k) const;  // r^k * this

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator*(double c) const;

    std::string str() const;

private:
    void canonicalize();
    std::vector<LaurentTerm> terms_;
};

inline LaurentPoly operator*(double c, const LaurentPoly& p) { return p * c; }

// "1:3,-2:1" -> r^3 - 2 r
LaurentPoly parse_laurent(const std::string& spec);

}  // namespace radial
