#include "radial/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "radial/errors.hpp"

namespace radial {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const double nan = std::numeric_limits<double>::quiet_NaN();

// flat view shared by every output format
struct Row {
    CaseKey key;
    std::vector<NamedValue> terms;
    double rhs = 0.0, residual = 0.0, scale = 0.0, tolerance = 0.0;
    bool pass = false, delta = false;
    json extra = json::object();
    double lhs = std::numeric_limits<double>::quiet_NaN();  // table summary, sum of terms when unset
};

Row flatten(const Report& rep) {
    Row row;
    std::visit(overloaded{
                   [&](const SumRuleReport& r) {
                       row = {r.key, r.lhs_terms, r.rhs_boundary, r.residual, r.scale, r.tolerance, r.pass,
                              r.delta_triggered};
                       row.extra["combined_mode"] = r.combined_mode;
                   },
                   [&](const ForceBalanceReport& r) {
                       row = {r.key,
                              {{"centrifugal", r.centrifugal}, {"mean_force", r.mean_force},
                               {"boundary_force", r.boundary_force}},
                              0.0,
                              r.balance,
                              r.scale,
                              r.tolerance,
                              r.pass,
                              r.boundary_verdict == PiVerdict::Finite};
                       row.extra["combined_mode"] = r.combined_mode;
                       row.extra["boundary_verdict"] = to_string(r.boundary_verdict);
                   },
                   [&](const CoordinateReport& r) {
                       row = {r.key,
                              {{"re<p_r>", r.pr_expectation.real()}, {"im<p_r>", r.pr_expectation.imag()}},
                              0.0,
                              std::abs(r.pr_expectation),
                              1.0,
                              r.tolerance,
                              r.pass,
                              false};
                       row.extra["pi_verdict"] = to_string(r.pi.verdict);
                       row.extra["pi_margin"] = r.pi.exponent_margin;
                   },
                   [&](const TimeDerivativeReport& r) {
                       row.key = r.key;
                       row.tolerance = r.tolerance;
                       row.pass = r.pass;
                       // worst sample relative to its scale
                       double worst = -1.0;
                       json samples = json::array();
                       for (const auto& s : r.samples) {
                           double rel = s.scale > 0 ? std::abs(s.residual) / s.scale : std::abs(s.residual);
                           if (rel > worst) {
                               worst = rel;
                               row.terms = {{"re d<A>/dt", s.d_dt.real()},
                                            {"im d<A>/dt", s.d_dt.imag()},
                                            {"re (i/hbar)<[H,A]>", s.commutator.real()},
                                            {"im (i/hbar)<[H,A]>", s.commutator.imag()},
                                            {"re Pi", s.pi.real()},
                                            {"im Pi", s.pi.imag()}};
                               row.residual = std::abs(s.residual);
                               row.scale = s.scale;
                               row.delta = s.pi != 0.0;
                           }
                           samples.push_back({{"t", s.t},
                                              {"residual", {s.residual.real(), s.residual.imag()}},
                                              {"residual_without_pi",
                                               {s.residual_without_pi.real(), s.residual_without_pi.imag()}},
                                              {"pi", {s.pi.real(), s.pi.imag()}},
                                              {"scale", s.scale}});
                       }
                       row.extra["samples"] = samples;
                   },
                   [&](const SolveReport& r) {
                       row.key = r.key;
                       row.terms = {{"energy", r.energy}, {"P", r.P}, {"leading_coeff", r.leading_coeff}};
                       row.lhs = r.energy;
                       row.rhs = r.exact_energy;
                       row.residual = std::isnan(r.exact_energy) ? nan : r.energy - r.exact_energy;
                       row.scale = std::abs(r.exact_energy);
                       row.tolerance = r.tolerance;
                       row.pass = r.pass;
                   },
                   [&](const BracketReport& r) {
                       row.key = r.key;
                       row.terms = {{"re Pi bracket", r.pi_numeric.real()},
                                    {"im Pi bracket", r.pi_numeric.imag()},
                                    {"re Pi analytic", r.pi_analytic.real()},
                                    {"im Pi analytic", r.pi_analytic.imag()}};
                       row.lhs = std::abs(r.pi_numeric);
                       row.residual = std::abs(r.pi_numeric - r.pi_analytic);
                       row.scale = std::max(std::abs(r.pi_numeric), std::abs(r.pi_analytic));
                       row.tolerance = r.tolerance;
                       row.pass = r.pass;
                       row.delta = r.analytic_verdict == PiVerdict::Finite;
                       row.extra["analytic_verdict"] = to_string(r.analytic_verdict);
                       row.extra["numeric_verdict"] = to_string(r.numeric_verdict);
                       row.extra["exponent_margin"] = r.exponent_margin;
                       row.extra["fitted_margin"] = r.fitted_margin;
                   },
                   [&](const CaseError& e) {
                       row.key = e.key;
                       row.residual = row.scale = row.tolerance = row.rhs = nan;
                       row.extra["error"] = {{"kind", e.kind}, {"message", e.message}};
                   }},
               rep);
    return row;
}

json to_json(const ReportEntry& e) {
    Row row = flatten(e.report);
    json j;
    j["case"] = {{"theorem", row.key.theorem}, {"potential", row.key.potential}, {"n_r", row.key.n_r},
                 {"l", row.key.l},           {"s_or_f", row.key.s_or_f},       {"mode", row.key.mode}};
    j["lhs_terms"] = json::array();
    for (const auto& t : row.terms) j["lhs_terms"].push_back({{"name", t.name}, {"value", t.value}});
    j["rhs_boundary"] = row.rhs;
    j["residual"] = row.residual;
    j["scale"] = row.scale;
    j["tolerance"] = row.tolerance;
    j["pass"] = row.pass;
    j["delta_triggered"] = row.delta;
    j["params"] = e.params;
    for (auto& [k, v] : row.extra.items()) j[k] = v;
    return j;
}

std::string num(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string short_num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace

const CaseKey& report_key(const Report& r) {
    return std::visit([](const auto& x) -> const CaseKey& { return x.key; }, r);
}

bool report_pass(const Report& r) {
    return std::visit(overloaded{[](const CaseError&) { return false; }, [](const auto& x) { return x.pass; }}, r);
}

bool key_less(const CaseKey& a, const CaseKey& b) {
    auto as_int = [](const std::string& s, long& out) {
        if (s.empty()) return false;
        size_t pos = 0;
        try {
            out = std::stol(s, &pos);
        } catch (...) {
            return false;
        }
        return pos == s.size();
    };
    if (a.theorem != b.theorem) return a.theorem < b.theorem;
    if (a.potential != b.potential) return a.potential < b.potential;
    if (a.n_r != b.n_r) return a.n_r < b.n_r;
    if (a.l != b.l) return a.l < b.l;
    if (a.s_or_f != b.s_or_f) {
        long x, y;
        if (as_int(a.s_or_f, x) && as_int(b.s_or_f, y)) return x < y;
        return a.s_or_f < b.s_or_f;
    }
    return a.mode < b.mode;
}

std::string error_kind(const std::exception& e) {
#define KIND(T) \
    if (dynamic_cast<const T*>(&e)) return #T
    KIND(DomainError);
    KIND(EnvelopeError);
    KIND(InvalidQuantumNumbers);
    KIND(ClassificationError);
    KIND(FallingToCenter);
    KIND(UnsupportedExtension);
    KIND(DivergentIntegral);
    KIND(QuadratureError);
    KIND(ExtrapolationError);
    KIND(ExtrapolationFailure);
    KIND(IncompatibleStates);
    KIND(NotImplemented);
    KIND(DegenerateLeadingTerm);
    KIND(BracketingError);
    KIND(ContaminatedFit);
    KIND(ConfigError);
    KIND(IoError);
#undef KIND
    return "Error";
}

Format parse_format(const std::string& s) {
    if (s == "table") return Format::Table;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw ConfigError("unknown format '" + s + "' (table, json, csv)");
}

void emit_report(const std::vector<ReportEntry>& reports, Format fmt, std::ostream& out) {
    if (fmt == Format::Json) {
        json arr = json::array();
        for (const auto& e : reports) arr.push_back(to_json(e));
        out << arr.dump(2) << "\n";
        return;
    }
    if (fmt == Format::Csv) {
        out << "theorem,potential,n_r,l,s_or_f,mode,lhs_terms,rhs_boundary,residual,scale,tolerance,pass,"
               "delta_triggered,error\n";
        for (const auto& e : reports) {
            Row row = flatten(e.report);
            std::string terms;
            for (const auto& t : row.terms) terms += (terms.empty() ? "" : ";") + t.name + "=" + num(t.value);
            std::string err = row.extra.contains("error") ? row.extra["error"]["kind"].get<std::string>() + ": " +
                                                                row.extra["error"]["message"].get<std::string>()
                                                          : "";
            out << csv_field(row.key.theorem) << ',' << csv_field(row.key.potential) << ',' << row.key.n_r << ','
                << row.key.l << ',' << csv_field(row.key.s_or_f) << ',' << csv_field(row.key.mode) << ','
                << csv_field(terms) << ',' << num(row.rhs) << ',' << num(row.residual) << ',' << num(row.scale)
                << ',' << num(row.tolerance) << ',' << (row.pass ? "true" : "false") << ','
                << (row.delta ? "true" : "false") << ',' << csv_field(err) << '\n';
        }
        return;
    }
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"", "theorem", "potential", "n_r", "l", "s/f", "mode", "lhs", "rhs", "residual", "scale", "delta"});
    for (const auto& e : reports) {
        Row row = flatten(e.report);
        double sum = 0.0;
        for (const auto& t : row.terms) sum += t.value;
        std::string lhs = short_num(std::isnan(row.lhs) ? sum : row.lhs);
        std::vector<std::string> c = {row.pass ? "ok" : "FAIL", row.key.theorem, row.key.potential,
                                      std::to_string(row.key.n_r), std::to_string(row.key.l), row.key.s_or_f,
                                      row.key.mode, lhs, short_num(row.rhs), short_num(row.residual),
                                      short_num(row.scale), row.delta ? "yes" : ""};
        if (row.extra.contains("error")) {
            c[7] = row.extra["error"]["kind"].get<std::string>();
            c[8] = c[9] = c[10] = "";
        }
        cells.push_back(c);
    }
    std::vector<size_t> width(cells[0].size(), 0);
    for (const auto& c : cells)
        for (size_t i = 0; i < c.size(); ++i) width[i] = std::max(width[i], c[i].size());
    for (const auto& c : cells) {
        for (size_t i = 0; i < c.size(); ++i) out << std::left << std::setw(int(width[i]) + 2) << c[i];
        out << '\n';
    }
    for (const auto& e : reports)
        if (auto* err = std::get_if<CaseError>(&e.report))
            out << "error [" << err->key.theorem << " n_r=" << err->key.n_r << " l=" << err->key.l << " "
                << err->key.s_or_f << "]: " << err->kind << ": " << err->message << '\n';
}

void write_report(const std::vector<ReportEntry>& reports, Format fmt, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    emit_report(reports, fmt, f);
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace radial
