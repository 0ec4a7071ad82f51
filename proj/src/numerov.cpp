#include "radial/numerov.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "radial/errors.hpp"

namespace radial {

using boost::math::interpolators::cardinal_quintic_hermite;

namespace {

double simpson(const std::vector<double>& f, double h) {
    size_t n = f.size();
    if (n < 3 || n % 2 == 0) throw DomainError("Simpson rule needs an odd number (>= 3) of samples");
    double s = f.front() + f.back();
    for (size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
    return s * h / 3.0;
}

// d/dx by 5-point stencils on a uniform grid
std::vector<double> derivative5(const std::vector<double>& y, double h) {
    size_t n = y.size();
    std::vector<double> d(n);
    for (size_t i = 0; i < n; ++i) {
        if (i >= 2 && i + 2 < n)
            d[i] = (y[i - 2] - 8 * y[i - 1] + 8 * y[i + 1] - y[i + 2]) / (12 * h);
        else if (i < 2)
            d[i] = (-25 * y[i] + 48 * y[i + 1] - 36 * y[i + 2] + 16 * y[i + 3] - 3 * y[i + 4]) / (12 * h);
        else
            d[i] = (25 * y[i] - 48 * y[i - 1] + 36 * y[i - 2] - 16 * y[i - 3] + 3 * y[i - 4]) / (12 * h);
    }
    return d;
}

}  // namespace

NumericGrid::NumericGrid(std::vector<double> r, std::vector<double> y, double h, double P, int l, double E,
                         Potential V, PhysicalParams params)
    : r_(std::move(r)), y_(std::move(y)), h_(h), P_(P), l_(l), E_(E), V_(std::move(V)), params_(params) {
    if (r_.size() != y_.size() || r_.size() < 5) throw DomainError("numeric grid needs at least 5 matching samples");
    std::vector<double> x(r_.size()), d2(r_.size());
    for (size_t i = 0; i < r_.size(); ++i) d2[i] = g(r_[i]) * y_[i];
    auto yy = y_;
    auto dy = derivative5(y_, h_);
    interp_ = std::make_unique<cardinal_quintic_hermite<std::vector<double>>>(std::move(yy), std::move(dy),
                                                                              std::move(d2), std::log(r_.front()), h_);
}

NumericGrid::~NumericGrid() = default;

double NumericGrid::g(double r) const {
    double k = 2.0 * params_.mass / (params_.hbar * params_.hbar);
    double lh = l_ + 0.5;
    return lh * lh + k * (r * r * V_(r) - r * r * E_);
}

double NumericGrid::u(size_t i) const { return std::sqrt(r_[i]) * y_[i]; }
double NumericGrid::R(size_t i) const { return y_[i] / std::sqrt(r_[i]); }

RadialJet NumericGrid::jet(double r) const {
    if (r < r_.front() * (1 - 1e-12) || r > r_.back() * (1 + 1e-12))
        throw ExtrapolationError("r = " + std::to_string(r) + " outside the numeric grid [" +
                                 std::to_string(r_.front()) + ", " + std::to_string(r_.back()) + "]");
    double x = std::clamp(std::log(r), std::log(r_.front()), std::log(r_.back()));
    double y = (*interp_)(x), y1 = interp_->prime(x), y2 = g(r) * y;
    double sr = std::sqrt(r);
    return {y / sr, (y1 - 0.5 * y) / (r * sr), (y2 - 2.0 * y1 + 0.75 * y) / (r * r * sr)};
}

double NumericGrid::integrate_samples(const std::vector<double>& F) const {
    double s = simpson(F, h_);
    // below r_min the samples follow a power law e^{kappa x}
    if (F[0] != 0.0 && F[1] != 0.0 && (F[0] > 0) == (F[1] > 0)) {
        double kappa = std::log(F[1] / F[0]) / h_;
        if (!(kappa > 0.0)) throw DivergentIntegral("integrand does not vanish toward the origin");
        s += F[0] / kappa;
    }
    return s;
}

double NumericGrid::integrate(const std::function<double(double)>& w) const {
    std::vector<double> F(r_.size());
    for (size_t i = 0; i < r_.size(); ++i) F[i] = y_[i] * y_[i] * w(r_[i]) * r_[i] * r_[i];
    return integrate_samples(F);
}

double NumericGrid::integrate(const LaurentPoly& w) const {
    if (w.empty()) return 0.0;
    int kmin = w.min_power();
    if (!(2.0 * P_ + kmin + 2.0 > 1e-12))
        throw DivergentIntegral("<r^" + std::to_string(kmin) + "> diverges at the origin for P = " + std::to_string(P_));
    std::vector<double> F(r_.size());
    for (size_t i = 0; i < r_.size(); ++i) F[i] = y_[i] * y_[i] * w(r_[i]) * r_[i] * r_[i];
    double s = simpson(F, h_);
    double r0 = r_[0], y0 = y_[0];
    for (const auto& t : w.terms()) s += t.coeff * y0 * y0 * std::pow(r0, t.power + 2) / (2.0 * P_ + t.power + 2.0);
    return s;
}

namespace {

bool coulomb_like(const Potential& V) {
    if (std::holds_alternative<Coulomb>(V.kind)) return true;
    if (auto* s = std::get_if<InverseSquarePlus>(&V.kind)) return s->base && std::holds_alternative<Coulomb>(*s->base);
    return false;
}

bool oscillator_like(const Potential& V) {
    if (std::holds_alternative<Oscillator>(V.kind)) return true;
    if (auto* s = std::get_if<InverseSquarePlus>(&V.kind)) return s->base && std::holds_alternative<Oscillator>(*s->base);
    return false;
}

struct Setup {
    std::vector<double> r, base, r2;  // g_i(E) = base_i - k r2_i E
    double h, k, P, c1_num, c2_b0;    // Frobenius data
    double Wm1 = 0.0, W0 = 0.0;
    bool series = false;
};

double numerov_next(double h2, double gm, double g0, double gp, double ym, double y0) {
    return (2.0 * (1.0 + 5.0 * h2 * g0 / 12.0) * y0 - (1.0 - h2 * gm / 12.0) * ym) / (1.0 - h2 * gp / 12.0);
}

std::pair<double, double> series_start(const Setup& s, double E) {
    double c1 = 0.0, c2 = 0.0;
    if (s.series) {
        double bm1 = s.k * s.Wm1, b0 = s.k * (s.W0 - E);
        c1 = bm1 / (2.0 * s.P + 1.0);
        c2 = (bm1 * c1 + b0) / (2.0 * (2.0 * s.P + 2.0));
    }
    auto y = [&](double r) { return std::pow(r, s.P) * (1.0 + c1 * r + c2 * r * r); };
    return {y(s.r[0]), y(s.r[1])};
}

int count_nodes(const Setup& s, double E) {
    double h2 = s.h * s.h;
    auto [ym, y0] = series_start(s, E);
    double gm = s.base[0] - s.k * s.r2[0] * E, g0 = s.base[1] - s.k * s.r2[1] * E;
    int nodes = 0;
    for (size_t i = 2; i < s.r.size(); ++i) {
        double gp = s.base[i] - s.k * s.r2[i] * E;
        double yp = numerov_next(h2, gm, g0, gp, ym, y0);
        if ((yp < 0 && y0 > 0) || (yp > 0 && y0 < 0)) ++nodes;
        ym = y0;
        y0 = yp;
        gm = g0;
        g0 = gp;
        if (std::abs(y0) > 1e200) {
            ym *= 1e-200;
            y0 *= 1e-200;
        }
    }
    return nodes;
}

}  // namespace

RadialState solve_bound_state(const Potential& V, int l, int n_r, const PhysicalParams& params, const GridConfig& cfg) {
    validate(params);
    if (l < 0 || n_r < 0) throw InvalidQuantumNumbers("numeric solve needs l >= 0 and n_r >= 0");
    if (l > max_l || n_r > max_principal) throw EnvelopeError("numeric solve outside the supported n_r <= 12, l <= 6");
    if (!(cfg.step > 0.0) || !(cfg.r_min_factor > 0.0)) throw ConfigError("grid step and r_min factor must be positive");
    OriginBehavior origin = origin_exponent(V, l, params);
    double P = origin.P;
    double L = V.natural_length(params);

    double r_min, r_max;
    if (auto* t = std::get_if<Tabulated>(&V.kind)) {
        r_min = tabulated_r_min(*t);
        r_max = cfg.r_max.value_or(tabulated_r_max(*t));
        if (r_max > tabulated_r_max(*t)) throw ConfigError("r_max beyond the tabulated range");
    } else {
        r_min = cfg.r_min_factor * L;
        if (coulomb_like(V)) {
            double n_eff = n_r + P + 0.5;
            r_max = n_eff * L * (2.0 * n_eff + 40.0);
        } else if (oscillator_like(V)) {
            r_max = L * (std::sqrt(4.0 * n_r + 2.0 * P + 2.0) + 8.0);
        } else {
            r_max = 50.0 * L;
        }
        if (cfg.r_max) r_max = *cfg.r_max;
    }
    if (!(r_max > r_min)) throw ConfigError("grid needs r_max > r_min");

    Setup s;
    double x0 = std::log(r_min), x1 = std::log(r_max);
    size_t N = static_cast<size_t>(std::ceil((x1 - x0) / cfg.step)) + 1;
    if (N % 2 == 0) ++N;
    N = std::max<size_t>(N, 9);
    s.h = (x1 - x0) / double(N - 1);
    s.k = 2.0 * params.mass / (params.hbar * params.hbar);
    s.P = P;
    double lh2 = (l + 0.5) * (l + 0.5);
    s.r.resize(N);
    s.base.resize(N);
    s.r2.resize(N);
    for (size_t i = 0; i < N; ++i) {
        double r = std::exp(x0 + s.h * double(i));
        if (i == N - 1) r = r_max;
        s.r[i] = r;
        s.r2[i] = r * r;
        s.base[i] = lh2 + s.k * r * r * V(r);
    }
    if (auto lp = V.laurent(params)) {
        s.series = true;
        s.Wm1 = lp->coeff(-1);
        s.W0 = lp->coeff(0);
    }

    // g >= 0 on the whole grid below E_lo, so no nodes there
    double E_lo = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < N; ++i) E_lo = std::min(E_lo, s.base[i] / (s.k * s.r2[i]));
    E_lo -= 1e-9 * (1.0 + std::abs(E_lo));
    // the recurrence flips sign (spurious nodes) once h^2 g / 12 exceeds 1
    double stiff = 0.0;
    for (size_t i = 0; i < N; ++i) stiff = std::max(stiff, s.h * s.h * (s.base[i] - s.k * s.r2[i] * E_lo) / 12.0);
    if (stiff >= 1.0)
        throw ConfigError("grid step " + std::to_string(s.h) + " too coarse for this potential (h^2 g / 12 reaches " +
                          std::to_string(stiff) + ")");
    double E_hi = s.base[N - 1] / (s.k * s.r2[N - 1]);
    if (count_nodes(s, E_hi) <= n_r)
        throw BracketingError("no bound state with " + std::to_string(n_r) + " nodes below E = " +
                              std::to_string(E_hi) + " on r <= " + std::to_string(r_max));
    if (count_nodes(s, E_lo) > n_r) throw BracketingError("lower energy bracket already has too many nodes");
    double lo = E_lo, hi = E_hi;
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (count_nodes(s, mid) > n_r ? hi : lo) = mid;
    }
    double E = 0.5 * (lo + hi);

    // outward to the outermost turning point, inward from r_max, spliced
    double h2 = s.h * s.h;
    std::vector<double> gE(N);
    for (size_t i = 0; i < N; ++i) gE[i] = s.base[i] - s.k * s.r2[i] * E;
    size_t m = 0;
    for (size_t i = 0; i < N; ++i)
        if (gE[i] < 0.0) m = i;
    m = std::clamp<size_t>(m, 4, N - 5);

    std::vector<double> y(N);
    std::tie(y[0], y[1]) = series_start(s, E);
    for (size_t i = 2; i <= m + 1; ++i) y[i] = numerov_next(h2, gE[i - 2], gE[i - 1], gE[i], y[i - 2], y[i - 1]);
    double y_m = y[m], dout = (y[m + 1] - y[m - 1]) / (2.0 * s.h);

    std::vector<double> yin(N, 0.0);
    yin[N - 1] = 0.0;
    yin[N - 2] = 1e-30;
    for (size_t i = N - 2; i-- > m - 1;) {
        yin[i] = numerov_next(h2, gE[i + 2], gE[i + 1], gE[i], yin[i + 2], yin[i + 1]);
        if (std::abs(yin[i]) > 1e200)
            for (size_t j = i; j < N; ++j) yin[j] *= 1e-200;
    }
    if (yin[m] == 0.0 || y_m == 0.0) throw BracketingError("eigenfunction vanishes at the matching point");
    double scale = y_m / yin[m];
    double din = scale * (yin[m + 1] - yin[m - 1]) / (2.0 * s.h);
    for (size_t i = m + 1; i < N; ++i) y[i] = scale * yin[i];

    std::vector<double> F(N);
    for (size_t i = 0; i < N; ++i) F[i] = y[i] * y[i] * s.r2[i];
    double norm = simpson(F, s.h) + y[0] * y[0] * s.r2[0] / (2.0 * P + 2.0);
    double inv = 1.0 / std::sqrt(norm);
    for (auto& v : y) v *= inv;

    auto grid = std::make_shared<NumericGrid>(s.r, std::move(y), s.h, P, l, E, V, params);
    grid->match_index = m;
    grid->match_cusp = std::abs(dout - din) / (std::abs(dout) + std::abs(y_m) / 1.0);

    RadialState st;
    st.potential = V;
    st.params = params;
    st.l = l;
    st.n_r = n_r;
    st.energy = E;
    st.origin = origin;
    st.form = std::shared_ptr<const NumericGrid>(grid);
    st.origin = fit_origin_coefficients(st).origin;
    return st;
}

namespace {

// least squares for small dense systems via normal equations
std::vector<double> lsq(const std::vector<std::vector<double>>& A, const std::vector<double>& b) {
    size_t n = A[0].size();
    std::vector<std::vector<double>> M(n, std::vector<double>(n + 1, 0.0));
    for (size_t r = 0; r < A.size(); ++r)
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) M[i][j] += A[r][i] * A[r][j];
            M[i][n] += A[r][i] * b[r];
        }
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        std::swap(M[c], M[piv]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = M[r][c] / M[c][c];
            for (size_t j = c; j <= n; ++j) M[r][j] -= f * M[c][j];
        }
    }
    std::vector<double> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = M[i][n] / M[i][i];
    return x;
}

}  // namespace

OriginFit fit_origin_coefficients(const RadialState& st) {
    const NumericGrid& g = st.grid();
    const auto& r = g.r();
    double r_top = 10.0 * r.front();
    std::vector<size_t> idx;
    for (size_t i = 0; i < r.size() && r[i] <= r_top * (1 + 1e-12); ++i) idx.push_back(i);
    if (idx.size() < 8) throw ContaminatedFit("grid does not resolve a decade next to the origin");
    double rs = r_top;

    std::vector<std::vector<double>> A3, A2;
    std::vector<double> b3, b2;
    for (size_t i : idx) {
        double u = g.u(i);
        if (!(u > 0.0)) throw ContaminatedFit("reduced wave function changes sign next to the origin");
        double lu = std::log(u), lr = std::log(r[i]);
        double x = r[i] / rs;
        A3.push_back({1.0, lr, x, x * x});
        b3.push_back(lu);
        A2.push_back({1.0, x, x * x});
        b2.push_back(lu - (g.P() + 0.5) * lr);
    }
    auto c3 = lsq(A3, b3);
    auto c2 = lsq(A2, b2);
    double res = 0.0;
    for (size_t k = 0; k < A3.size(); ++k) {
        double d = b3[k] - (c3[0] + c3[1] * A3[k][1] + c3[2] * A3[k][2] + c3[3] * A3[k][3]);
        res += d * d;
    }
    res = std::sqrt(res / double(A3.size()));
    if (res > 1e-6) throw ContaminatedFit("origin power-law fit residual " + std::to_string(res) + " above 1e-6");

    OriginFit f;
    f.origin = st.origin;
    f.origin.P = g.P();
    f.origin.leading_power = g.P() - 0.5;
    f.origin.leading_coeff = std::exp(c2[0]);
    f.u_power = c3[1];
    f.u_coeff = std::exp(c3[0]);
    f.residual = res;
    return f;
}

void write_grid_dump(const RadialState& s, const std::string& path) {
    const NumericGrid& g = s.grid();
    std::ofstream out(path);
    if (!out) throw IoError("cannot write grid dump '" + path + "'");
    out.precision(17);
    out << "# E=" << s.energy << "\n";
    out << "# l=" << s.l << "\n";
    out << "# n_r=" << s.n_r << "\n";
    out << "# P=" << s.origin.P << "\n";
    out << "# leading_coeff=" << s.origin.leading_coeff << "\n";
    out << "# potential=" << s.potential.describe() << "\n";
    out << "# hbar=" << s.params.hbar << " mass=" << s.params.mass << "\n";
    out << "# columns: r u R\n";
    for (size_t i = 0; i < g.r().size(); ++i) out << g.r()[i] << " " << g.u(i) << " " << g.R(i) << "\n";
    if (!out) throw IoError("write to '" + path + "' failed");
}

namespace {

std::map<std::string, double> kv_pairs(const std::string& text) {
    std::map<std::string, double> m;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        try {
            m[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
        } catch (const std::logic_error&) {
        }
    }
    return m;
}

Potential potential_from_description(const std::string& d, const PhysicalParams& p) {
    auto kv = kv_pairs(d);
    auto need = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError(std::string("grid dump potential lacks ") + key);
        return it->second;
    };
    if (d.rfind("coulomb", 0) == 0) return make_coulomb(need("e2"), p);
    if (d.rfind("oscillator", 0) == 0) return make_oscillator(need("omega"), p);
    if (d.rfind("kratzer", 0) == 0) return make_kratzer(need("e2"), need("v0"), p);
    if (d.rfind("inverse-square", 0) == 0) {
        auto pos = d.find("base=");
        std::optional<BasePotential> base;
        if (pos != std::string::npos) {
            auto rest = d.substr(pos + 5);
            auto bkv = kv_pairs(rest);
            if (rest.rfind("coulomb", 0) == 0) base = Coulomb{bkv.at("e2")};
            else base = Oscillator{bkv.at("omega")};
        }
        return make_inverse_square(need("v0"), base, p);
    }
    throw ConfigError("grid dump potential '" + d + "' cannot be reconstructed");
}

}  // namespace

RadialState load_grid_dump(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open grid dump '" + path + "'");
    std::map<std::string, std::string> head;
    std::vector<double> r, y;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto body = line.substr(1);
            auto eq = body.find('=');
            if (eq == std::string::npos) continue;
            auto key = body.substr(body.find_first_not_of(' '), eq - body.find_first_not_of(' '));
            head[key] = body.substr(eq + 1);
            continue;
        }
        std::istringstream ls(line);
        double a, u, R;
        if (!(ls >> a >> u >> R)) throw ConfigError("bad grid dump line: " + line);
        r.push_back(a);
        y.push_back(u / std::sqrt(a));
    }
    for (const char* k : {"E", "l", "n_r", "P", "leading_coeff", "potential", "hbar"})
        if (!head.count(k)) throw ConfigError(std::string("grid dump header lacks ") + k);
    if (r.size() < 9 || r.size() % 2 == 0) throw ConfigError("grid dump needs an odd number (>= 9) of rows");
    auto hv = kv_pairs("hbar=" + head["hbar"]);
    PhysicalParams p{hv.at("hbar"), hv.at("mass")};
    RadialState s;
    s.params = p;
    s.potential = potential_from_description(head["potential"], p);
    s.l = std::stoi(head["l"]);
    s.n_r = std::stoi(head["n_r"]);
    s.energy = std::stod(head["E"]);
    s.origin = origin_exponent(s.potential, s.l, p);
    s.origin.P = std::stod(head["P"]);
    s.origin.leading_power = s.origin.P - 0.5;
    s.origin.leading_coeff = std::stod(head["leading_coeff"]);
    double h = (std::log(r.back()) - std::log(r.front())) / double(r.size() - 1);
    s.form = std::shared_ptr<const NumericGrid>(
        std::make_shared<NumericGrid>(std::move(r), std::move(y), h, s.origin.P, s.l, s.energy, s.potential, p));
    return s;
}

}  // namespace radial
