#pragma once

#include <limits>
#include <string>
#include <vector>

#include "dcsched/errors.hpp"

namespace dcsched {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LE, GE, EQ };

struct LpRow {
    std::vector<int> vars;
    std::vector<double> coeffs;
    RowSense sense = RowSense::LE;
    double rhs = 0.0;
};

/// Backend-neutral sparse LP: minimize c'x subject to rows and bounds.
/// Rows reference variables by index; names exist for export and debugging.
class LpModel {
  public:
    int add_variable(std::string name, double lb, double ub, double obj = 0.0) {
        if (lb > ub)
            throw ConfigError("LpModel: variable " + name + " has lb > ub");
        names_.push_back(std::move(name));
        lower_.push_back(lb);
        upper_.push_back(ub);
        objective_.push_back(obj);
        return static_cast<int>(names_.size()) - 1;
    }

    void set_objective(int var, double coeff) { objective_.at(var) = coeff; }

    int add_row(RowSense sense, double rhs, std::vector<int> vars,
                std::vector<double> coeffs) {
        if (vars.size() != coeffs.size())
            throw ConfigError("LpModel: row vars/coeffs length mismatch");
        for (int v : vars)
            if (v < 0 || v >= num_vars())
                throw ConfigError("LpModel: row references undeclared variable");
        rows_.push_back({std::move(vars), std::move(coeffs), sense, rhs});
        return static_cast<int>(rows_.size()) - 1;
    }

    int num_vars() const { return static_cast<int>(names_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }

    const std::vector<LpRow>& rows() const { return rows_; }
    const std::vector<double>& objective() const { return objective_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    const std::string& name(int var) const { return names_.at(var); }

    double row_activity(const LpRow& row, const std::vector<double>& x) const {
        double a = 0.0;
        for (size_t j = 0; j < row.vars.size(); ++j) a += row.coeffs[j] * x[row.vars[j]];
        return a;
    }

    /// Signed violation of one row at x: positive means infeasible by that amount.
    double row_violation(const LpRow& row, const std::vector<double>& x) const {
        const double a = row_activity(row, x);
        switch (row.sense) {
            case RowSense::LE: return a - row.rhs;
            case RowSense::GE: return row.rhs - a;
            case RowSense::EQ: return std::abs(a - row.rhs);
        }
        return 0.0;
    }

    double objective_value(const std::vector<double>& x) const {
        double z = 0.0;
        for (int j = 0; j < num_vars(); ++j) z += objective_[j] * x[j];
        return z;
    }

    /// Writes the model in CPLEX LP text format for cross-checking against
    /// external solvers.
    void write_lp_file(const std::string& path) const;

  private:
    std::vector<std::string> names_;
    std::vector<double> lower_, upper_, objective_;
    std::vector<LpRow> rows_;
};

} // namespace dcsched
