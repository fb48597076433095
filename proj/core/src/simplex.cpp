#include "hubflow/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hubflow/util.hpp"
#include "sparse_lu.hpp"

namespace hubflow {

int choose_entering(std::span<const double> reduced_costs,
                    std::span<const int> eligibility, bool bland, double tol) {
    const int n = static_cast<int>(reduced_costs.size());
    int best = -1;
    double best_violation = tol;
    for (int j = 0; j < n; ++j) {
        const int e = eligibility[j];
        if (e == 0) continue;
        const double d = reduced_costs[j];
        double violation = 0.0;
        if (e == 1 && d < -tol) violation = -d;
        else if (e == -1 && d > tol) violation = d;
        else if (e == 2 && std::abs(d) > tol) violation = std::abs(d);
        if (violation <= 0.0) continue;
        if (bland) return j;
        if (violation > best_violation) {
            best_violation = violation;
            best = j;
        }
    }
    return best;
}

namespace {

enum VarStatus : char { kBasic, kAtLower, kAtUpper, kFree };

class SimplexSolver {
  public:
    SimplexSolver(const LinearProgram& lp, const SolveOptions& opt)
        : lp_(lp), opt_(opt) {}

    Solution run(bool phase1_only, Phase1Result* p1_out);

  private:
    const LinearProgram& lp_;
    SolveOptions opt_;

    int m_ = 0;        // rows
    int n_orig_ = 0;   // columns of the caller's program
    int n_aug_ = 0;    // + slack columns for inequality rows
    int n_tot_ = 0;    // + one artificial per row

    // CSC of the augmented structural part; artificial j >= n_aug_ is the
    // unit column e_{j - n_aug_}.
    std::vector<int> aptr_, arow_;
    std::vector<double> aval_;

    std::vector<double> cost_;   // active-phase costs
    std::vector<double> lower_, upper_, x_;
    std::vector<int> basic_;     // position -> column
    std::vector<char> vstat_;    // column -> VarStatus
    std::vector<double> rhs_;

    BasisFactor factor_;
    struct Eta {
        int pos;
        double diag;
        std::vector<std::pair<int, double>> entries;  // position, w_i (i != pos)
    };
    std::vector<Eta> etas_;

    std::vector<double> w_, y_, work_;
    std::vector<int> w_nz_;
    std::vector<double> reduced_;
    std::vector<int> elig_;

    long iterations_ = 0;
    long phase1_iterations_ = 0;
    long max_iterations_ = 0;
    int degenerate_run_ = 0;
    bool bland_ = false;
    double objective_ = 0.0;  // active-phase objective, tracked incrementally
    std::string diagnostic_;

    double rhs_scale_ = 1.0;

    void build();
    void column_entries(int j, std::vector<std::pair<int, double>>& out) const;
    template <typename Fn>
    void for_column(int j, Fn&& fn) const {
        if (j < n_aug_) {
            for (int k = aptr_[j]; k < aptr_[j + 1]; ++k) fn(arow_[k], aval_[k]);
        } else {
            fn(j - n_aug_, 1.0);
        }
    }

    bool refactorize();
    void recompute_basic_values();
    double recompute_objective() const;
    void ftran(std::vector<double>& v) const;
    void btran(std::vector<double>& v) const;
    void price();
    enum class StepOutcome { Pivot, Flip, Unbounded, Stall };
    StepOutcome step(int entering);

    enum class LoopExit { DualFeasible, IterationLimit, Unbounded, Breakdown };
    LoopExit iterate();

    void set_phase1_costs();
    void set_phase2_costs();
    void pin_artificials();
    double artificial_sum() const;
    Solution finish(SolveStatus status);
};

void SimplexSolver::build() {
    m_ = lp_.num_rows();
    n_orig_ = lp_.num_cols();
    rhs_scale_ = lp_.rhs_scale();

    // Slack augmentation turns every inequality row into an equality.
    int slacks = 0;
    for (int r = 0; r < m_; ++r)
        if (lp_.row_kind(r) != RowKind::Equal) ++slacks;
    n_aug_ = n_orig_ + slacks;
    n_tot_ = n_aug_ + m_;

    cost_.assign(n_tot_, 0.0);
    lower_.assign(n_tot_, 0.0);
    upper_.assign(n_tot_, 0.0);
    x_.assign(n_tot_, 0.0);
    vstat_.assign(n_tot_, kAtLower);
    rhs_.assign(m_, 0.0);

    for (int j = 0; j < n_orig_; ++j) {
        lower_[j] = lp_.lower(j);
        upper_[j] = lp_.upper(j);
    }

    // Column-wise copy of the row-stored program.
    std::vector<int> counts(n_aug_, 0);
    for (int r = 0; r < m_; ++r)
        for (const auto& e : lp_.row(r)) ++counts[e.col];
    int slack_id = n_orig_;
    std::vector<int> slack_of_row(m_, -1);
    for (int r = 0; r < m_; ++r)
        if (lp_.row_kind(r) != RowKind::Equal) {
            counts[slack_id] = 1;
            slack_of_row[r] = slack_id++;
        }
    aptr_.assign(n_aug_ + 1, 0);
    for (int j = 0; j < n_aug_; ++j) aptr_[j + 1] = aptr_[j] + counts[j];
    arow_.assign(aptr_[n_aug_], 0);
    aval_.assign(aptr_[n_aug_], 0.0);
    std::vector<int> fill(aptr_.begin(), aptr_.end() - 1);
    for (int r = 0; r < m_; ++r) {
        rhs_[r] = lp_.rhs(r);
        for (const auto& e : lp_.row(r)) {
            arow_[fill[e.col]] = r;
            aval_[fill[e.col]] = e.value;
            ++fill[e.col];
        }
        if (slack_of_row[r] >= 0) {
            const int s = slack_of_row[r];
            arow_[fill[s]] = r;
            aval_[fill[s]] = 1.0;
            ++fill[s];
            if (lp_.row_kind(r) == RowKind::LessEqual) {
                lower_[s] = 0.0;
                upper_[s] = kInfinity;
            } else {
                lower_[s] = -kInfinity;
                upper_[s] = 0.0;
            }
        }
    }

    // Nonbasic start: every structural/slack at its preferred bound.
    for (int j = 0; j < n_aug_; ++j) {
        if (std::isfinite(lower_[j])) {
            x_[j] = lower_[j];
            vstat_[j] = kAtLower;
        } else if (std::isfinite(upper_[j])) {
            x_[j] = upper_[j];
            vstat_[j] = kAtUpper;
        } else {
            x_[j] = 0.0;
            vstat_[j] = kFree;
        }
    }

    // Residuals seed the artificial basis.
    std::vector<double> resid = rhs_;
    for (int j = 0; j < n_aug_; ++j) {
        const double v = x_[j];
        if (v == 0.0) continue;
        for (int k = aptr_[j]; k < aptr_[j + 1]; ++k) resid[arow_[k]] -= aval_[k] * v;
    }
    basic_.resize(m_);
    for (int r = 0; r < m_; ++r) {
        const int a = n_aug_ + r;
        basic_[r] = a;
        vstat_[a] = kBasic;
        x_[a] = resid[r];
        if (resid[r] >= 0.0) {
            lower_[a] = 0.0;
            upper_[a] = kInfinity;
        } else {
            lower_[a] = -kInfinity;
            upper_[a] = 0.0;
        }
    }

    w_.assign(m_, 0.0);
    y_.assign(m_, 0.0);
    work_.assign(m_, 0.0);
    reduced_.assign(n_tot_, 0.0);
    elig_.assign(n_tot_, 0);

    max_iterations_ = opt_.max_iterations > 0
                          ? opt_.max_iterations
                          : 50L * (static_cast<long>(n_tot_) + m_);
    refactorize();
}

void SimplexSolver::column_entries(int j, std::vector<std::pair<int, double>>& out) const {
    out.clear();
    for_column(j, [&](int r, double v) { out.emplace_back(r, v); });
}

bool SimplexSolver::refactorize() {
    etas_.clear();
    std::vector<int> cptr(m_ + 1, 0), crow;
    std::vector<double> cval;
    crow.reserve(aptr_[n_aug_]);
    cval.reserve(aptr_[n_aug_]);
    for (int p = 0; p < m_; ++p) {
        for_column(basic_[p], [&](int r, double v) {
            crow.push_back(r);
            cval.push_back(v);
        });
        cptr[p + 1] = static_cast<int>(crow.size());
    }
    auto info = factor_.factorize(m_, cptr, crow, cval, opt_.pivot_tol);
    if (!info.ok()) {
        // Replace the dependent columns by the artificials of the unpivoted
        // rows; the displaced variables go nonbasic at their nearest bound.
        for (std::size_t k = 0; k < info.positions.size(); ++k) {
            const int pos = info.positions[k];
            const int row = info.rows[k];
            const int old = basic_[pos];
            const double v = x_[old];
            if (std::isfinite(lower_[old]) &&
                (!std::isfinite(upper_[old]) ||
                 std::abs(v - lower_[old]) <= std::abs(upper_[old] - v))) {
                x_[old] = lower_[old];
                vstat_[old] = kAtLower;
            } else if (std::isfinite(upper_[old])) {
                x_[old] = upper_[old];
                vstat_[old] = kAtUpper;
            } else {
                x_[old] = 0.0;
                vstat_[old] = kFree;
            }
            const int art = n_aug_ + row;
            basic_[pos] = art;
            vstat_[art] = kBasic;
        }
        std::vector<int> cptr2(m_ + 1, 0);
        crow.clear();
        cval.clear();
        for (int p = 0; p < m_; ++p) {
            for_column(basic_[p], [&](int r, double v) {
                crow.push_back(r);
                cval.push_back(v);
            });
            cptr2[p + 1] = static_cast<int>(crow.size());
        }
        info = factor_.factorize(m_, cptr2, crow, cval, opt_.pivot_tol);
        if (!info.ok()) {
            diagnostic_ = "basis factorization failed after repair";
            return false;
        }
    }
    recompute_basic_values();
    objective_ = recompute_objective();
    return true;
}

void SimplexSolver::recompute_basic_values() {
    std::vector<double> resid = rhs_;
    for (int j = 0; j < n_tot_; ++j) {
        if (vstat_[j] == kBasic) continue;
        const double v = x_[j];
        if (v == 0.0) continue;
        for_column(j, [&](int r, double a) { resid[r] -= a * v; });
    }
    factor_.ftran(resid);
    for (auto& eta : etas_) {
        const double xp = resid[eta.pos] / eta.diag;
        for (const auto& [i, wi] : eta.entries) resid[i] -= wi * xp;
        resid[eta.pos] = xp;
    }
    for (int p = 0; p < m_; ++p) x_[basic_[p]] = resid[p];
}

double SimplexSolver::recompute_objective() const {
    double obj = 0.0;
    for (int j = 0; j < n_tot_; ++j)
        if (cost_[j] != 0.0 && x_[j] != 0.0) obj += cost_[j] * x_[j];
    return obj;
}

void SimplexSolver::ftran(std::vector<double>& v) const {
    factor_.ftran(v);
    for (const auto& eta : etas_) {
        const double xp = v[eta.pos] / eta.diag;
        for (const auto& [i, wi] : eta.entries) v[i] -= wi * xp;
        v[eta.pos] = xp;
    }
}

void SimplexSolver::btran(std::vector<double>& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
        double cp = v[it->pos];
        for (const auto& [i, wi] : it->entries) cp -= wi * v[i];
        v[it->pos] = cp / it->diag;
    }
    factor_.btran(v);
}

void SimplexSolver::price() {
    y_.assign(m_, 0.0);
    for (int p = 0; p < m_; ++p) y_[p] = cost_[basic_[p]];
    btran(y_);
    for (int j = 0; j < n_tot_; ++j) {
        if (vstat_[j] == kBasic || lower_[j] == upper_[j]) {
            elig_[j] = 0;
            reduced_[j] = 0.0;
            continue;
        }
        double d = cost_[j];
        for_column(j, [&](int r, double a) { d -= y_[r] * a; });
        reduced_[j] = d;
        elig_[j] = vstat_[j] == kAtLower ? 1 : (vstat_[j] == kAtUpper ? -1 : 2);
    }
}

SimplexSolver::StepOutcome SimplexSolver::step(int entering) {
    const double d = reduced_[entering];
    // Direction of improvement for a minimization problem.
    const double sigma =
        (vstat_[entering] == kAtUpper || (vstat_[entering] == kFree && d > 0.0)) ? -1.0
                                                                                 : 1.0;
    w_.assign(m_, 0.0);
    for_column(entering, [&](int r, double a) { w_[r] = a; });
    ftran(w_);
    w_nz_.clear();
    for (int p = 0; p < m_; ++p)
        if (w_[p] != 0.0) w_nz_.push_back(p);

    const double wtol = 1e-11;
    const double tie_tol = 1e-12;
    double theta_basic = kInfinity;
    int leave_pos = -1;
    bool leave_at_upper = false;

    for (int p : w_nz_) {
        const double wp = w_[p];
        if (std::abs(wp) <= wtol) continue;
        const int b = basic_[p];
        const double xb = x_[b];
        double limit;
        bool at_upper;
        if (sigma * wp > 0.0) {
            if (!std::isfinite(lower_[b])) continue;
            limit = (xb - lower_[b]) / (sigma * wp);
            at_upper = false;
        } else {
            if (!std::isfinite(upper_[b])) continue;
            limit = (upper_[b] - xb) / (-sigma * wp);
            at_upper = true;
        }
        if (limit < 0.0) limit = 0.0;  // drift guard
        if (limit < theta_basic - tie_tol) {
            theta_basic = limit;
            leave_pos = p;
            leave_at_upper = at_upper;
        } else if (limit <= theta_basic + tie_tol && leave_pos >= 0 &&
                   basic_[p] < basic_[leave_pos]) {
            // Tie: lowest leaving variable index.
            leave_pos = p;
            leave_at_upper = at_upper;
        }
    }

    // Bound-to-bound move of the entering variable itself.
    const double span = upper_[entering] - lower_[entering];
    double theta = theta_basic;
    if (std::isfinite(span) && span < theta_basic - tie_tol) {
        theta = span;
        leave_pos = -1;
    }

    if (!std::isfinite(theta)) {
        diagnostic_ = "unbounded ray along column " + std::to_string(entering);
        return StepOutcome::Unbounded;
    }
    theta = std::max(theta, 0.0);

    if (leave_pos < 0) {
        // Bound flip: entering jumps to its opposite bound.
        for (int p : w_nz_) x_[basic_[p]] -= sigma * theta * w_[p];
        x_[entering] += sigma * theta;
        vstat_[entering] = vstat_[entering] == kAtLower ? kAtUpper : kAtLower;
        objective_ += d * sigma * theta;
        degenerate_run_ = 0;
        return StepOutcome::Flip;
    }

    const double wp = w_[leave_pos];
    const double wmax = [&] {
        double m = 0.0;
        for (int p : w_nz_) m = std::max(m, std::abs(w_[p]));
        return m;
    }();
    if (std::abs(wp) < std::max(opt_.pivot_tol, 1e-9 * wmax)) return StepOutcome::Stall;

    for (int p : w_nz_) x_[basic_[p]] -= sigma * theta * w_[p];
    x_[entering] += sigma * theta;
    objective_ += d * sigma * theta;

    const int leaving = basic_[leave_pos];
    if (leave_at_upper) {
        x_[leaving] = upper_[leaving];
        vstat_[leaving] = kAtUpper;
    } else {
        x_[leaving] = lower_[leaving];
        vstat_[leaving] = kAtLower;
    }
    // An artificial that leaves the basis is retired for good.
    if (leaving >= n_aug_) {
        lower_[leaving] = 0.0;
        upper_[leaving] = 0.0;
        x_[leaving] = 0.0;
        vstat_[leaving] = kAtLower;
    }
    basic_[leave_pos] = entering;
    vstat_[entering] = kBasic;

    Eta eta;
    eta.pos = leave_pos;
    eta.diag = wp;
    eta.entries.reserve(w_nz_.size());
    for (int p : w_nz_)
        if (p != leave_pos) eta.entries.emplace_back(p, w_[p]);
    etas_.push_back(std::move(eta));

    degenerate_run_ = theta <= 1e-11 ? degenerate_run_ + 1 : 0;
    return StepOutcome::Pivot;
}

SimplexSolver::LoopExit SimplexSolver::iterate() {
    int stalled_retry = 0;
    while (true) {
        if (iterations_ >= max_iterations_) return LoopExit::IterationLimit;
        if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
            if (!refactorize()) return LoopExit::Breakdown;
        }
        bland_ = degenerate_run_ >= opt_.stall_window;
        price();
        const int entering = choose_entering(reduced_, elig_, bland_, opt_.optimality_tol);
        if (entering < 0) {
            // Confirm on a fresh factorization before declaring the phase done.
            if (!etas_.empty()) {
                if (!refactorize()) return LoopExit::Breakdown;
                price();
                if (choose_entering(reduced_, elig_, bland_, opt_.optimality_tol) >= 0)
                    continue;
            }
            return LoopExit::DualFeasible;
        }
        ++iterations_;
        switch (step(entering)) {
            case StepOutcome::Pivot:
            case StepOutcome::Flip:
                stalled_retry = 0;
                break;
            case StepOutcome::Unbounded:
                return LoopExit::Unbounded;
            case StepOutcome::Stall:
                // Tiny pivot element: refresh the factorization once, then
                // give up to avoid a wrong answer.
                if (++stalled_retry > 2) {
                    diagnostic_ = "pivot element below tolerance; basis numerically singular";
                    return LoopExit::Breakdown;
                }
                if (!refactorize()) return LoopExit::Breakdown;
                break;
        }
    }
}

void SimplexSolver::set_phase1_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int r = 0; r < m_; ++r) {
        const int a = n_aug_ + r;
        cost_[a] = upper_[a] == 0.0 && std::isinf(lower_[a]) ? -1.0 : 1.0;
        if (lower_[a] == 0.0 && upper_[a] == 0.0) cost_[a] = 0.0;  // retired
    }
    objective_ = recompute_objective();
}

void SimplexSolver::set_phase2_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_orig_; ++j) cost_[j] = lp_.objective_coeff(j);
    objective_ = recompute_objective();
}

void SimplexSolver::pin_artificials() {
    for (int r = 0; r < m_; ++r) {
        const int a = n_aug_ + r;
        if (vstat_[a] == kBasic) {
            // Stays in the basis at (numerical) zero with frozen bounds.
            lower_[a] = 0.0;
            upper_[a] = 0.0;
        } else {
            lower_[a] = 0.0;
            upper_[a] = 0.0;
            x_[a] = 0.0;
            vstat_[a] = kAtLower;
        }
    }
}

double SimplexSolver::artificial_sum() const {
    double s = 0.0;
    for (int r = 0; r < m_; ++r) s += std::abs(x_[n_aug_ + r]);
    return s;
}

Solution SimplexSolver::finish(SolveStatus status) {
    Solution sol;
    sol.status = status;
    sol.iterations = iterations_;
    sol.phase1_iterations = phase1_iterations_;
    sol.diagnostic = diagnostic_;
    sol.values.assign(x_.begin(), x_.begin() + n_orig_);
    double obj = 0.0;
    for (int j = 0; j < n_orig_; ++j) obj += lp_.objective_coeff(j) * x_[j];
    sol.objective = obj;
    const auto report = check_residuals(lp_, sol.values, nullptr);
    sol.max_residual = report.max_row_residual;
    sol.max_bound_violation = report.max_bound_violation;
    if (status == SolveStatus::Optimal) {
        double dual_inf = 0.0;
        for (int j = 0; j < n_tot_; ++j) {
            if (elig_[j] == 0) continue;
            const double dd = reduced_[j];
            if (elig_[j] == 1) dual_inf = std::max(dual_inf, -dd);
            else if (elig_[j] == -1) dual_inf = std::max(dual_inf, dd);
            else dual_inf = std::max(dual_inf, std::abs(dd));
        }
        sol.dual_infeasibility = dual_inf;
    }
    return sol;
}

Solution SimplexSolver::run(bool phase1_only, Phase1Result* p1_out) {
    build();

    const double phase1_tol = 1e-9 * rhs_scale_;
    set_phase1_costs();

    LoopExit exit = iterate();
    phase1_iterations_ = iterations_;
    const double infeas = artificial_sum();

    if (p1_out) {
        p1_out->iterations = iterations_;
        p1_out->infeasibility = infeas;
        p1_out->values.assign(x_.begin(), x_.begin() + n_orig_);
    }

    switch (exit) {
        case LoopExit::IterationLimit:
            if (p1_out) p1_out->status = SolveStatus::IterationLimit;
            return finish(SolveStatus::IterationLimit);
        case LoopExit::Breakdown:
            if (p1_out) p1_out->status = SolveStatus::NumericalBreakdown;
            return finish(SolveStatus::NumericalBreakdown);
        case LoopExit::Unbounded:
            // The phase-1 objective is bounded below by zero; a ray means
            // numerical trouble, not unboundedness.
            diagnostic_ = "phase-1 ray detected";
            if (p1_out) p1_out->status = SolveStatus::NumericalBreakdown;
            return finish(SolveStatus::NumericalBreakdown);
        case LoopExit::DualFeasible:
            break;
    }

    if (infeas > phase1_tol && infeas > opt_.feasibility_tol * rhs_scale_) {
        if (p1_out) p1_out->status = SolveStatus::Infeasible;
        Solution sol = finish(SolveStatus::Infeasible);
        sol.infeasibility = infeas;
        return sol;
    }
    if (p1_out) {
        p1_out->status = SolveStatus::Optimal;
        if (phase1_only) return finish(SolveStatus::Optimal);
    }

    pin_artificials();
    set_phase2_costs();

    exit = iterate();
    switch (exit) {
        case LoopExit::IterationLimit:
            return finish(SolveStatus::IterationLimit);
        case LoopExit::Breakdown:
            return finish(SolveStatus::NumericalBreakdown);
        case LoopExit::Unbounded:
            return finish(SolveStatus::Unbounded);
        case LoopExit::DualFeasible:
            break;
    }

    // Final clean point on a fresh factorization.
    if (!refactorize()) return finish(SolveStatus::NumericalBreakdown);
    price();
    Solution sol = finish(SolveStatus::Optimal);
    const double feas_tol = opt_.feasibility_tol * (1.0 + rhs_scale_);
    if (sol.max_residual > feas_tol || sol.max_bound_violation > 1e-9 * rhs_scale_) {
        sol.status = SolveStatus::NumericalBreakdown;
        sol.diagnostic = "final point violates feasibility tolerances";
    }
    return sol;
}

}  // namespace

Solution solve(const LinearProgram& lp, const SolveOptions& options) {
    lp.check_consistency();
    SimplexSolver solver(lp, options);
    return solver.run(false, nullptr);
}

Phase1Result phase1(const LinearProgram& lp, const SolveOptions& options) {
    lp.check_consistency();
    Phase1Result out;
    SimplexSolver solver(lp, options);
    solver.run(true, &out);
    return out;
}

}  // namespace hubflow
