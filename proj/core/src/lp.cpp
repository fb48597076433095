#include "hubflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hubflow/lp_builder.hpp"

namespace hubflow {

int LinearProgram::add_column(double objective, double lower, double upper) {
    if (std::isnan(lower) || std::isnan(upper) || lower > upper)
        throw std::runtime_error("LinearProgram: bad bounds for new column");
    objective_.push_back(objective);
    lower_.push_back(lower);
    upper_.push_back(upper);
    return num_cols() - 1;
}

int LinearProgram::add_row(RowKind kind, double rhs,
                           std::span<const std::pair<int, double>> entries) {
    if (!std::isfinite(rhs)) throw std::runtime_error("LinearProgram: non-finite rhs");
    for (const auto& [col, value] : entries) {
        if (col < 0 || col >= num_cols())
            throw std::runtime_error("LinearProgram: row entry column out of range");
        if (!std::isfinite(value))
            throw std::runtime_error("LinearProgram: non-finite coefficient");
        if (value != 0.0) values_.push_back({col, value});
    }
    // Reject duplicate columns within the freshly appended slice.
    const std::size_t begin = row_starts_.back();
    for (std::size_t i = begin; i < values_.size(); ++i)
        for (std::size_t j = i + 1; j < values_.size(); ++j)
            if (values_[i].col == values_[j].col)
                throw std::runtime_error("LinearProgram: duplicate column in row");
    kinds_.push_back(kind);
    rhs_.push_back(rhs);
    row_starts_.push_back(values_.size());
    return num_rows() - 1;
}

void LinearProgram::set_bounds(int col, double lower, double upper) {
    if (std::isnan(lower) || std::isnan(upper) || lower > upper)
        throw std::runtime_error("LinearProgram: bad bounds");
    lower_[col] = lower;
    upper_[col] = upper;
}

std::span<const LinearProgram::RowEntry> LinearProgram::row(int r) const {
    return {values_.data() + row_starts_[r], row_starts_[r + 1] - row_starts_[r]};
}

double LinearProgram::rhs_scale() const {
    double scale = 1.0;
    for (double b : rhs_) scale = std::max(scale, std::abs(b));
    return scale;
}

void LinearProgram::check_consistency() const {
    for (int j = 0; j < num_cols(); ++j) {
        if (lower_[j] > upper_[j])
            throw std::runtime_error("LinearProgram: lower > upper at column " +
                                     std::to_string(j));
        if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || !std::isfinite(objective_[j]))
            throw std::runtime_error("LinearProgram: bad column data at " + std::to_string(j));
    }
    for (double b : rhs_)
        if (!std::isfinite(b)) throw std::runtime_error("LinearProgram: non-finite rhs");
    for (const auto& e : values_) {
        if (e.col < 0 || e.col >= num_cols())
            throw std::runtime_error("LinearProgram: entry column out of range");
        if (e.value == 0.0) throw std::runtime_error("LinearProgram: stored explicit zero");
    }
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration_limit";
        case SolveStatus::NumericalBreakdown: return "numerical_breakdown";
    }
    return "?";
}

ResidualReport check_residuals(const LinearProgram& lp, std::span<const double> values,
                               const ConstraintCatalog* catalog) {
    if (static_cast<int>(values.size()) != lp.num_cols())
        throw std::invalid_argument("check_residuals: value vector length mismatch");
    ResidualReport report;
    report.row_residuals.resize(lp.num_rows(), 0.0);
    std::map<std::string, double> by_tag;
    for (int r = 0; r < lp.num_rows(); ++r) {
        double ax = 0.0;
        for (const auto& e : lp.row(r)) ax += e.value * values[e.col];
        double resid = 0.0;
        switch (lp.row_kind(r)) {
            case RowKind::Equal: resid = std::abs(ax - lp.rhs(r)); break;
            case RowKind::LessEqual: resid = std::max(0.0, ax - lp.rhs(r)); break;
            case RowKind::GreaterEqual: resid = std::max(0.0, lp.rhs(r) - ax); break;
        }
        report.row_residuals[r] = resid;
        if (resid > report.max_row_residual) {
            report.max_row_residual = resid;
            report.worst_row = r;
        }
        if (catalog) {
            const std::string tag = catalog->tag_name(r);
            auto [it, inserted] = by_tag.try_emplace(tag, resid);
            if (!inserted) it->second = std::max(it->second, resid);
        }
    }
    for (int j = 0; j < lp.num_cols(); ++j) {
        const double v = values[j];
        const double viol = std::max(lp.lower(j) - v, v - lp.upper(j));
        if (viol > report.max_bound_violation) {
            report.max_bound_violation = viol;
            report.worst_col = j;
        }
    }
    if (catalog && report.worst_row >= 0)
        report.worst_row_label = catalog->name(report.worst_row);
    report.by_tag.assign(by_tag.begin(), by_tag.end());
    return report;
}

}  // namespace hubflow
