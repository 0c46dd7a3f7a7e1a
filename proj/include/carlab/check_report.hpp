#ifndef CARLAB_CHECK_REPORT_HPP
#define CARLAB_CHECK_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace carlab {

/// One sweep point of an inequality check. Weighted norms overflow double
/// range at large tau, so term magnitudes are reported as log10.
struct CheckRow {
    double tau = 0.0;
    std::map<std::string, double> lhs_terms_log10;
    double lhs_total_log10 = 0.0;
    double rhs_log10 = 0.0;
    double ratio = 0.0;  // lhs_total / rhs
};

/// Structured result of an inequality check across a tau sweep (or a
/// family, with the sweep column reused as the family parameter).
struct CheckReport {
    std::string tag;  // check id, e.g. "prop3.2" or "thm3.I"
    std::vector<CheckRow> rows;
    double fitted_C = 0.0;
    double tau0_hat = 0.0;
    bool stabilized = false;
    bool passed = false;
    std::string metadata;
    std::string note;
};

}  // namespace carlab

#endif
