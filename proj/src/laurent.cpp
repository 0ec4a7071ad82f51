#include "radial/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "radial/errors.hpp"

namespace radial {

LaurentPoly::LaurentPoly(std::initializer_list<LaurentTerm> terms) : terms_(terms) { canonicalize(); }
LaurentPoly::LaurentPoly(std::vector<LaurentTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

void LaurentPoly::canonicalize() {
    std::map<int, double> acc;
    for (const auto& t : terms_) acc[t.power] += t.coeff;
    terms_.clear();
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second != 0.0) terms_.push_back({it->second, it->first});
}

int LaurentPoly::min_power() const {
    if (terms_.empty()) throw DomainError("empty Laurent polynomial has no powers");
    return terms_.back().power;
}

int LaurentPoly::max_power() const {
    if (terms_.empty()) throw DomainError("empty Laurent polynomial has no powers");
    return terms_.front().power;
}

double LaurentPoly::coeff(int power) const {
    for (const auto& t : terms_)
        if (t.power == power) return t.coeff;
    return 0.0;
}

double LaurentPoly::operator()(double r) const {
    double v = 0.0;
    for (const auto& t : terms_) v += t.coeff * std::pow(r, t.power);
    return v;
}

LaurentPoly LaurentPoly::derivative() const {
    std::vector<LaurentTerm> d;
    for (const auto& t : terms_)
        if (t.power != 0) d.push_back({t.coeff * t.power, t.power - 1});
    return LaurentPoly(std::move(d));
}

LaurentPoly LaurentPoly::shifted(int k) const {
    auto t = terms_;
    for (auto& x : t) x.power += k;
    return LaurentPoly(std::move(t));
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    auto t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return LaurentPoly(std::move(t));
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + o * -1.0; }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    std::vector<LaurentTerm> t;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) t.push_back({a.coeff * b.coeff, a.power + b.power});
    return LaurentPoly(std::move(t));
}

LaurentPoly LaurentPoly::operator*(double c) const {
    auto t = terms_;
    for (auto& x : t) x.coeff *= c;
    return LaurentPoly(std::move(t));
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << ",";
        os << t.coeff << ":" << t.power;
        first = false;
    }
    return os.str();
}

LaurentPoly parse_laurent(const std::string& spec) {
    std::vector<LaurentTerm> terms;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("bad Laurent term '" + item + "', expected coeff:power");
        try {
            size_t used = 0;
            double c = std::stod(item.substr(0, colon), &used);
            int p = std::stoi(item.substr(colon + 1));
            terms.push_back({c, p});
        } catch (const std::logic_error&) {
            throw ConfigError("bad Laurent term '" + item + "'");
        }
    }
    if (terms.empty()) throw ConfigError("empty Laurent specification");
    return LaurentPoly(std::move(terms));
}

}  // namespace radial
