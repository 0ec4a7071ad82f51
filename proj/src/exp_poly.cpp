#include "radial/exp_poly.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "radial/errors.hpp"

namespace radial {

namespace {

constexpr double chop_rel = 1e-12;

bool same_power(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }

std::vector<PowerTerm> merge(std::vector<PowerTerm> raw) {
    std::sort(raw.begin(), raw.end(), [](const PowerTerm& a, const PowerTerm& b) { return a.power < b.power; });
    std::vector<PowerTerm> out;
    size_t i = 0;
    while (i < raw.size()) {
        size_t j = i;
        cplx sum = 0.0;
        double mag = 0.0;
        while (j < raw.size() && same_power(raw[j].power, raw[i].power)) {
            sum += raw[j].coeff;
            mag += std::abs(raw[j].coeff);
            ++j;
        }
        if (std::abs(sum) > chop_rel * mag) out.push_back({raw[i].power, sum});
        i = j;
    }
    return out;
}

void check_envelopes(const ExpPoly& a, const ExpPoly& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (a.order() != b.order() || std::abs(a.lambda() - b.lambda()) > 1e-14 * (1.0 + a.lambda()))
        throw DomainError("cannot add functions with different exponential envelopes");
}

}  // namespace

ExpPoly::ExpPoly(std::vector<PowerTerm> terms, double lambda, int order)
    : terms_(merge(std::move(terms))), lambda_(lambda), order_(order) {}

double ExpPoly::lowest_power() const {
    if (terms_.empty()) return std::numeric_limits<double>::infinity();
    return terms_.front().power;
}

cplx ExpPoly::coeff_at(double power) const {
    for (const auto& t : terms_)
        if (same_power(t.power, power)) return t.coeff;
    return 0.0;
}

cplx ExpPoly::operator()(double r) const {
    if (r == 0.0) return coeff_at(0.0);
    double lr = std::log(r);
    double env = order_ == 0 ? 0.0 : lambda_ * std::pow(r, order_);
    cplx v = 0.0;
    for (const auto& t : terms_) v += t.coeff * std::exp(t.power * lr - env);
    return v;
}

ExpPoly ExpPoly::derivative() const {
    std::vector<PowerTerm> d;
    for (const auto& t : terms_) {
        if (t.power != 0.0) d.push_back({t.power - 1.0, t.coeff * t.power});
        if (order_ > 0) d.push_back({t.power + order_ - 1.0, -t.coeff * lambda_ * double(order_)});
    }
    return ExpPoly(std::move(d), lambda_, order_);
}

ExpPoly ExpPoly::times(const LaurentPoly& f) const {
    std::vector<PowerTerm> out;
    for (const auto& t : terms_)
        for (const auto& g : f.terms()) out.push_back({t.power + g.power, t.coeff * g.coeff});
    return ExpPoly(std::move(out), lambda_, order_);
}

ExpPoly ExpPoly::times_power(double k) const {
    auto t = terms_;
    for (auto& x : t) x.power += k;
    return ExpPoly(std::move(t), lambda_, order_);
}

ExpPoly ExpPoly::scaled(cplx c) const {
    auto t = terms_;
    for (auto& x : t) x.coeff *= c;
    return ExpPoly(std::move(t), lambda_, order_);
}

ExpPoly ExpPoly::conj() const {
    auto t = terms_;
    for (auto& x : t) x.coeff = std::conj(x.coeff);
    return ExpPoly(std::move(t), lambda_, order_);
}

ExpPoly ExpPoly::combine(const std::vector<std::pair<cplx, ExpPoly>>& pieces) {
    std::vector<PowerTerm> raw;
    double lambda = 0.0;
    int order = 0;
    const ExpPoly* ref = nullptr;
    for (const auto& [c, p] : pieces) {
        if (p.is_zero()) continue;
        if (ref) check_envelopes(*ref, p);
        ref = &p;
        lambda = p.lambda();
        order = p.order();
        for (const auto& t : p.terms()) raw.push_back({t.power, c * t.coeff});
    }
    return ExpPoly(std::move(raw), lambda, order);
}

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) { return ExpPoly::combine({{1.0, a}, {1.0, b}}); }
ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return ExpPoly::combine({{1.0, a}, {-1.0, b}}); }

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    if (a.is_zero() || b.is_zero()) return ExpPoly();
    if (a.order() != 0 && b.order() != 0 && a.order() != b.order())
        throw DomainError("cannot multiply exponential and Gaussian envelopes");
    int order = std::max(a.order(), b.order());
    std::vector<PowerTerm> out;
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) out.push_back({x.power + y.power, x.coeff * y.coeff});
    return ExpPoly(std::move(out), a.lambda() + b.lambda(), order);
}

OriginLimit origin_limit(const ExpPoly& f) {
    double lp = f.lowest_power();
    if (lp < -1e-12) return {false, 0.0, lp};
    return {true, f.coeff_at(0.0), lp};
}

double quadrature_split(const ExpPoly& f) {
    if (f.order() == 0 || f.lambda() <= 0.0 || f.is_zero()) return 1.0;
    double scale = f.order() == 1 ? f.lambda() : std::sqrt(f.lambda());
    // past the maximum of the highest power against the envelope
    double top = std::max(f.terms().back().power + 2.0, 0.0);
    double peak = std::pow(top / (f.order() * f.lambda()), 1.0 / f.order());
    return std::max(10.0 / scale, 2.0 * peak);
}

namespace {

// composite 20-point Gauss-Legendre: n uniform panels on [split/n, split], halving panels below
template <class G>
std::pair<double, double> composite(const G& g, double split, int n, double lead_power, double lead_coeff) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    double sum = 0.0, l1 = 0.0;
    auto panel = [&](double a, double b) {
        double L = 0.0;
        sum += rule::integrate(g, a, b, &L);
        l1 += L;
    };
    double h = split / n;
    for (int k = 1; k < n; ++k) panel(k * h, (k + 1) * h);
    double b = h;
    for (int k = 0; k < 80; ++k, b *= 0.5) panel(0.5 * b, b);
    // the piece below the last panel from the leading power
    sum += lead_coeff * std::pow(b, lead_power + 1.0) / (lead_power + 1.0);
    return {sum, l1};
}

template <class G>
double integrate_part(const G& g, double split, double lead_power, double lead_coeff) {
    auto [prev, l1] = composite(g, split, 16, lead_power, lead_coeff);
    double head = prev;
    bool ok = false;
    for (int n = 32; n <= 2048; n *= 2) {
        auto [cur, cl1] = composite(g, split, n, lead_power, lead_coeff);
        head = cur;
        l1 = cl1;
        if (std::abs(cur - prev) <= 1e-9 * std::max(cl1, 1e-300)) {
            ok = true;
            break;
        }
        prev = cur;
    }
    if (!ok) throw QuadratureError("composite quadrature on [0, " + std::to_string(split) + "] did not converge");

    boost::math::quadrature::exp_sinh<double> tail_rule;
    double terr = 0.0, tl1 = 0.0;
    double tail = tail_rule.integrate(g, split, std::numeric_limits<double>::infinity(), 1e-11, &terr, &tl1);
    if (terr > 1e-9 * std::max(l1 + tl1, 1e-300) && terr > 1e-15)
        throw QuadratureError("exp-sinh tail quadrature failed to converge");
    return head + tail;
}

}  // namespace

cplx integrate_r2(const ExpPoly& a, const ExpPoly& b, double s) {
    if (a.is_zero() || b.is_zero()) return 0.0;
    ExpPoly f = (a * b).times_power(s);
    if (f.is_zero()) return 0.0;
    double lp = f.lowest_power();
    if (!(lp + 2.0 > -1.0 + 1e-12))
        throw DivergentIntegral("integrand ~ r^" + std::to_string(lp + 2.0) + " is not integrable at the origin");
    if (f.order() == 0 || f.lambda() <= 0.0) throw DivergentIntegral("integrand has no decaying envelope");
    double split = quadrature_split(f);
    // factors are evaluated separately; the expanded product cancels badly for high polynomial degree
    ExpPoly ah = a.times_power(1.0 + 0.5 * s), bh = b.times_power(1.0 + 0.5 * s);
    auto value = [&](double r) { return ah(r) * bh(r); };
    bool complex = false;
    for (const auto* e : {&a, &b})
        for (const auto& t : e->terms()) complex = complex || t.coeff.imag() != 0.0;
    double lp2 = lp + 2.0;
    cplx c0 = f.coeff_at(lp);
    double re = integrate_part([&](double r) { return value(r).real(); }, split, lp2, c0.real());
    double im = complex ? integrate_part([&](double r) { return value(r).imag(); }, split, lp2, c0.imag()) : 0.0;
    return {re, im};
}

cplx integrate_r2(const ExpPoly& f) { return integrate_r2(f, ExpPoly({{0.0, 1.0}}, 0.0, 0), 0.0); }

}  // namespace radial
