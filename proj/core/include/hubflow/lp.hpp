#ifndef HUBFLOW_LP_HPP
#define HUBFLOW_LP_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hubflow {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowKind : std::uint8_t { Equal, LessEqual, GreaterEqual };

/// Sparse minimization program. Rows are stored CSR-style in emission
/// order; no explicit zeros are kept. Column bounds default to [0, +inf).
/// The builder emits equality rows only; LessEqual/GreaterEqual rows are
/// accepted for imported files and handled by slack augmentation inside
/// the solver.
class LinearProgram {
  public:
    int add_column(double objective, double lower = 0.0, double upper = kInfinity);
    /// Entries with value 0 are dropped; duplicate columns within one row
    /// are rejected.
    int add_row(RowKind kind, double rhs,
                std::span<const std::pair<int, double>> entries);

    int num_cols() const { return static_cast<int>(objective_.size()); }
    int num_rows() const { return static_cast<int>(rhs_.size()); }
    std::size_t num_nonzeros() const { return values_.size(); }

    double objective_coeff(int col) const { return objective_[col]; }
    double lower(int col) const { return lower_[col]; }
    double upper(int col) const { return upper_[col]; }
    void set_bounds(int col, double lower, double upper);
    void set_objective_coeff(int col, double v) { objective_[col] = v; }

    RowKind row_kind(int row) const { return kinds_[row]; }
    double rhs(int row) const { return rhs_[row]; }

    struct RowEntry {
        int col;
        double value;
    };
    std::span<const RowEntry> row(int r) const;

    const std::vector<double>& objective() const { return objective_; }
    const std::vector<double>& lower_bounds() const { return lower_; }
    const std::vector<double>& upper_bounds() const { return upper_; }

    /// max(1, ||rhs||_inf), the scale used by feasibility tolerances.
    double rhs_scale() const;

    /// Invariant check (bounds ordered, finite rhs, indices in range);
    /// throws std::runtime_error on violation.
    void check_consistency() const;

  private:
    std::vector<double> objective_, lower_, upper_;
    std::vector<RowKind> kinds_;
    std::vector<double> rhs_;
    std::vector<std::size_t> row_starts_{0};
    std::vector<RowEntry> values_;
};

enum class SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NumericalBreakdown,
};

const char* to_string(SolveStatus s);

struct SolveOptions {
    /// 0 means the default cap of 50 * (rows + cols).
    long max_iterations = 0;
    double feasibility_tol = 1e-6;  // scaled by (1 + ||rhs||_inf)
    double optimality_tol = 1e-9;   // on reduced costs
    double pivot_tol = 1e-9;        // smallest acceptable pivot magnitude
    int refactor_interval = 100;    // basis updates between refactorizations
    int stall_window = 50;          // degenerate pivots before Bland's rule
};

struct Solution {
    SolveStatus status = SolveStatus::NumericalBreakdown;
    std::vector<double> values;
    double objective = 0.0;
    double max_residual = 0.0;
    double max_bound_violation = 0.0;
    /// Max reduced-cost optimality violation under the final basis; at
    /// Optimal this is <= the optimality tolerance.
    double dual_infeasibility = 0.0;
    long iterations = 0;
    long phase1_iterations = 0;
    /// Lower bound on total constraint violation when Infeasible.
    double infeasibility = 0.0;
    std::string diagnostic;
};

class ConstraintCatalog;  // lp_builder owns naming; residuals only label rows

struct ResidualReport {
    double max_row_residual = 0.0;
    int worst_row = -1;
    std::string worst_row_label;
    double max_bound_violation = 0.0;
    int worst_col = -1;
    std::vector<double> row_residuals;
    /// Per constraint-tag maxima when a catalog is supplied.
    std::vector<std::pair<std::string, double>> by_tag;
};

/// Absolute row residuals |a.x - b| (one-sided for inequality rows) and
/// bound violations for a candidate point. Labels rows through `catalog`
/// when given.
ResidualReport check_residuals(const LinearProgram& lp, std::span<const double> values,
                               const ConstraintCatalog* catalog = nullptr);

}  // namespace hubflow

#endif
