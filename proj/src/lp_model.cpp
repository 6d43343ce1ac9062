#include "dcsched/lp_model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace dcsched {

namespace {

void write_term(std::ofstream& out, double coeff, const std::string& name, bool first) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", std::abs(coeff));
    if (first) {
        out << (coeff < 0 ? "- " : "") << buf << " " << name;
    } else {
        out << (coeff < 0 ? " - " : " + ") << buf << " " << name;
    }
}

} // namespace

void LpModel::write_lp_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    char buf[64];

    out << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < num_vars(); ++j) {
        if (objective_[j] == 0.0) continue;
        out << " ";
        write_term(out, objective_[j], names_[j], first);
        first = false;
    }
    if (first) out << " 0 " << (num_vars() > 0 ? names_[0] : "x0");
    out << "\nSubject To\n";
    for (int i = 0; i < num_rows(); ++i) {
        const LpRow& row = rows_[i];
        out << " r" << i << ":";
        bool rf = true;
        for (size_t j = 0; j < row.vars.size(); ++j) {
            if (row.coeffs[j] == 0.0) continue;
            out << " ";
            write_term(out, row.coeffs[j], names_[row.vars[j]], rf);
            rf = false;
        }
        if (rf) out << " 0 " << names_.at(0);
        const char* rel = row.sense == RowSense::LE ? "<=" : row.sense == RowSense::GE ? ">=" : "=";
        std::snprintf(buf, sizeof(buf), "%.17g", row.rhs);
        out << " " << rel << " " << buf << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < num_vars(); ++j) {
        const double lo = lower_[j], hi = upper_[j];
        if (!std::isfinite(lo) && !std::isfinite(hi)) {
            out << " " << names_[j] << " free\n";
        } else if (!std::isfinite(lo)) {
            std::snprintf(buf, sizeof(buf), "%.17g", hi);
            out << " -inf <= " << names_[j] << " <= " << buf << "\n";
        } else if (!std::isfinite(hi)) {
            if (lo != 0.0) {
                std::snprintf(buf, sizeof(buf), "%.17g", lo);
                out << " " << names_[j] << " >= " << buf << "\n";
            }
        } else {
            char lbuf[64];
            std::snprintf(lbuf, sizeof(lbuf), "%.17g", lo);
            std::snprintf(buf, sizeof(buf), "%.17g", hi);
            out << " " << lbuf << " <= " << names_[j] << " <= " << buf << "\n";
        }
    }
    out << "End\n";
    if (!out) throw IoError("write failed for " + path);
}

} // namespace dcsched
