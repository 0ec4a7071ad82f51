#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "radial/theorems.hpp"

namespace radial {

struct SolveReport {
    CaseKey key;
    double energy = 0.0;
    double exact_energy = 0.0;  // NaN when no closed form is known
    double P = 0.0;
    double leading_coeff = 0.0;
    double tolerance = 1e-6;
    bool pass = true;
};

struct BracketReport {
    CaseKey key;
    PiVerdict analytic_verdict = PiVerdict::Zero;
    PiVerdict numeric_verdict = PiVerdict::Zero;
    cplx pi_analytic = 0.0;
    cplx pi_numeric = 0.0;
    double exponent_margin = 0.0;
    double fitted_margin = 0.0;
    double tolerance = 1e-6;
    bool pass = false;
};

struct CaseError {
    CaseKey key;
    std::string kind;
    std::string message;
};

using Report = std::variant<SumRuleReport, ForceBalanceReport, CoordinateReport, TimeDerivativeReport, SolveReport,
                            BracketReport, CaseError>;

struct ReportEntry {
    Report report;
    std::map<std::string, double> params;
};

const CaseKey& report_key(const Report& r);
bool report_pass(const Report& r);
// ordering used for deterministic output
bool key_less(const CaseKey& a, const CaseKey& b);

std::string error_kind(const std::exception& e);

enum class Format { Table, Json, Csv };
Format parse_format(const std::string& s);

void emit_report(const std::vector<ReportEntry>& reports, Format fmt, std::ostream& out);
// throws IoError when the path cannot be written
void write_report(const std::vector<ReportEntry>& reports, Format fmt, const std::string& path);

}  // namespace radial
