#include "sparse_lu.hpp"

#include <algorithm>
#include <cmath>

namespace hubflow {

namespace {

struct Entry {
    int pos;
    double val;
};

using SparseRow = std::vector<Entry>;

double row_value_at(const SparseRow& row, int pos) {
    auto it = std::lower_bound(row.begin(), row.end(), pos,
                               [](const Entry& e, int p) { return e.pos < p; });
    return (it != row.end() && it->pos == pos) ? it->val : 0.0;
}

void erase_value(std::vector<int>& v, int x) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == x) {
            v[i] = v.back();
            v.pop_back();
            return;
        }
}

}  // namespace

BasisFactor::SingularInfo BasisFactor::factorize(int m, std::span<const int> col_ptr,
                                                 std::span<const int> row_idx,
                                                 std::span<const double> values,
                                                 double pivot_floor) {
    m_ = m;
    pivot_row_.clear();
    pivot_pos_.clear();
    pivot_val_.clear();
    l_start_.assign(1, 0);
    l_row_.clear();
    l_val_.clear();
    u_start_.assign(1, 0);
    u_pos_.clear();
    u_val_.clear();
    row_to_k_.assign(m, -1);
    if (m == 0) {
        build_transposes();
        return {};
    }


    // Static row-wise copy. The singleton cascade never changes values, so
    // the static arrays stay authoritative until the kernel phase.
    std::vector<SparseRow> srows(m);
    for (int p = 0; p < m; ++p)
        for (int j = col_ptr[p]; j < col_ptr[p + 1]; ++j)
            srows[row_idx[j]].push_back({p, values[j]});
    for (auto& r : srows)
        std::sort(r.begin(), r.end(),
                  [](const Entry& a, const Entry& b) { return a.pos < b.pos; });

    std::vector<char> row_active(m, 1), col_active(m, 1);
    std::vector<int> row_count(m), col_count(m);
    for (int p = 0; p < m; ++p) col_count[p] = col_ptr[p + 1] - col_ptr[p];
    for (int i = 0; i < m; ++i) row_count[i] = static_cast<int>(srows[i].size());

    auto record_pivot = [&](int r, int p, double v) {
        row_to_k_[r] = static_cast<int>(pivot_row_.size());
        pivot_row_.push_back(r);
        pivot_pos_.push_back(p);
        pivot_val_.push_back(v);
    };
    auto finish_pivot = [&] {
        l_start_.push_back(static_cast<int>(l_row_.size()));
        u_start_.push_back(static_cast<int>(u_pos_.size()));
    };

    std::vector<int> col_queue, row_queue;
    int remaining = m;

    // ---- Phase 1: singleton cascade on the static structure ----------------
    for (int p = 0; p < m; ++p)
        if (col_count[p] == 1) col_queue.push_back(p);
    for (int i = 0; i < m; ++i)
        if (row_count[i] == 1) row_queue.push_back(i);

    while (!col_queue.empty() || !row_queue.empty()) {
        if (!col_queue.empty()) {
            const int p = col_queue.back();
            col_queue.pop_back();
            if (!col_active[p] || col_count[p] != 1) continue;
            int r = -1;
            double v = 0.0;
            for (int j = col_ptr[p]; j < col_ptr[p + 1]; ++j)
                if (row_active[row_idx[j]]) {
                    r = row_idx[j];
                    v = values[j];
                }
            if (r < 0 || std::abs(v) < pivot_floor) continue;  // kernel decides
            record_pivot(r, p, v);
            for (const Entry& e : srows[r]) {
                if (e.pos == p || !col_active[e.pos]) continue;
                u_pos_.push_back(e.pos);
                u_val_.push_back(e.val);
                if (--col_count[e.pos] == 1) col_queue.push_back(e.pos);
            }
            finish_pivot();
            row_active[r] = 0;
            col_active[p] = 0;
            --remaining;
        } else {
            const int r = row_queue.back();
            row_queue.pop_back();
            if (!row_active[r] || row_count[r] != 1) continue;
            int p = -1;
            double v = 0.0;
            for (const Entry& e : srows[r])
                if (col_active[e.pos]) {
                    p = e.pos;
                    v = e.val;
                }
            if (p < 0 || std::abs(v) < pivot_floor) continue;
            record_pivot(r, p, v);
            for (int j = col_ptr[p]; j < col_ptr[p + 1]; ++j) {
                const int i = row_idx[j];
                if (i == r || !row_active[i]) continue;
                l_row_.push_back(i);
                l_val_.push_back(values[j] / v);
                if (--row_count[i] == 1) row_queue.push_back(i);
            }
            finish_pivot();
            row_active[r] = 0;
            col_active[p] = 0;
            --remaining;
        }
    }

    // ---- Phase 2: Markowitz kernel with dynamic rows -----------------------
    if (remaining > 0) {
        std::vector<SparseRow> work(m);
        std::vector<std::vector<int>> colrows(m);
        std::vector<int> kcols;
        for (int i = 0; i < m; ++i) {
            if (!row_active[i]) continue;
            for (const Entry& e : srows[i])
                if (col_active[e.pos]) {
                    work[i].push_back(e);
                    colrows[e.pos].push_back(i);
                }
            row_count[i] = static_cast<int>(work[i].size());
        }
        for (int p = 0; p < m; ++p)
            if (col_active[p]) {
                kcols.push_back(p);
                col_count[p] = static_cast<int>(colrows[p].size());
            }

        col_queue.clear();
        row_queue.clear();
        for (int p : kcols)
            if (col_count[p] == 1) col_queue.push_back(p);
        for (int i = 0; i < m; ++i)
            if (row_active[i] && row_count[i] == 1) row_queue.push_back(i);

        auto retire = [&](int r, int p) {
            row_active[r] = 0;
            col_active[p] = 0;
            erase_value(kcols, p);
            work[r].clear();
            colrows[p].clear();
            col_count[p] = 0;
            row_count[r] = 0;
            --remaining;
        };

        // Zero-fill pivot on a column with a single active row.
        auto pivot_col_singleton = [&](int p, int r, double v) {
            record_pivot(r, p, v);
            for (const Entry& e : work[r]) {
                if (e.pos == p) continue;
                u_pos_.push_back(e.pos);
                u_val_.push_back(e.val);
                erase_value(colrows[e.pos], r);
                if (--col_count[e.pos] == 1) col_queue.push_back(e.pos);
            }
            finish_pivot();
            retire(r, p);
        };

        // Zero-fill pivot on a row with a single active entry.
        auto pivot_row_singleton = [&](int r, int p, double v) {
            record_pivot(r, p, v);
            for (int i : colrows[p]) {
                if (i == r) continue;
                const double aip = row_value_at(work[i], p);
                l_row_.push_back(i);
                l_val_.push_back(aip / v);
                auto it = std::lower_bound(
                    work[i].begin(), work[i].end(), p,
                    [](const Entry& e, int pos) { return e.pos < pos; });
                work[i].erase(it);
                if (--row_count[i] == 1) row_queue.push_back(i);
            }
            finish_pivot();
            retire(r, p);
        };

        // General pivot with elimination and fill.
        auto pivot_general = [&](int r, int p, double v) {
            record_pivot(r, p, v);
            for (const Entry& e : work[r]) {
                if (e.pos == p) continue;
                u_pos_.push_back(e.pos);
                u_val_.push_back(e.val);
            }
            const std::vector<int> rows_in_col = colrows[p];
            for (int i : rows_in_col) {
                if (i == r) continue;
                const double aip = row_value_at(work[i], p);
                if (aip == 0.0) continue;
                const double mult = aip / v;
                l_row_.push_back(i);
                l_val_.push_back(mult);
                SparseRow merged;
                merged.reserve(work[i].size() + work[r].size());
                auto a = work[i].begin();
                const auto aend = work[i].end();
                auto b = work[r].begin();
                const auto bend = work[r].end();
                while (a != aend || b != bend) {
                    if (b == bend || (a != aend && a->pos < b->pos)) {
                        if (a->pos != p) merged.push_back(*a);
                        ++a;
                    } else if (a == aend || b->pos < a->pos) {
                        if (b->pos != p) {
                            merged.push_back({b->pos, -mult * b->val});
                            colrows[b->pos].push_back(i);
                            ++col_count[b->pos];
                        }
                        ++b;
                    } else {
                        if (a->pos != p) {
                            const double nv = a->val - mult * b->val;
                            if (nv != 0.0) {
                                merged.push_back({a->pos, nv});
                            } else {
                                erase_value(colrows[a->pos], i);
                                if (--col_count[a->pos] == 1)
                                    col_queue.push_back(a->pos);
                            }
                        }
                        ++a;
                        ++b;
                    }
                }
                work[i] = std::move(merged);
                row_count[i] = static_cast<int>(work[i].size());
                if (row_count[i] == 1) row_queue.push_back(i);
            }
            // Retire the pivot row's remaining entries from the column lists.
            for (const Entry& e : work[r]) {
                if (e.pos == p) continue;
                erase_value(colrows[e.pos], r);
                if (--col_count[e.pos] == 1) col_queue.push_back(e.pos);
            }
            finish_pivot();
            retire(r, p);
        };

        std::size_t cursor = 0;
        while (remaining > 0) {
            // Prefer zero-fill singleton pivots.
            bool advanced = false;
            while (!col_queue.empty() || !row_queue.empty()) {
                if (!col_queue.empty()) {
                    const int p = col_queue.back();
                    col_queue.pop_back();
                    if (!col_active[p] || col_count[p] != 1) continue;
                    const int r = colrows[p][0];
                    const double v = row_value_at(work[r], p);
                    if (std::abs(v) < pivot_floor) continue;
                    pivot_col_singleton(p, r, v);
                    advanced = true;
                } else {
                    const int r = row_queue.back();
                    row_queue.pop_back();
                    if (!row_active[r] || row_count[r] != 1) continue;
                    const int p = work[r][0].pos;
                    const double v = work[r][0].val;
                    if (std::abs(v) < pivot_floor) continue;
                    pivot_row_singleton(r, p, v);
                    advanced = true;
                }
            }
            if (remaining == 0) break;

            // Markowitz choice over a bounded rotating window of columns.
            const std::size_t window = std::min<std::size_t>(kcols.size(), 16);
            int best_r = -1, best_p = -1;
            double best_v = 0.0;
            long best_score = -1;
            for (std::size_t s = 0; s < window; ++s) {
                const int p = kcols[(cursor + s) % kcols.size()];
                double colmax = 0.0;
                for (int i : colrows[p])
                    colmax = std::max(colmax, std::abs(row_value_at(work[i], p)));
                if (colmax < pivot_floor) continue;
                const double threshold = std::max(pivot_floor, 0.1 * colmax);
                for (int i : colrows[p]) {
                    const double v = row_value_at(work[i], p);
                    if (std::abs(v) < threshold) continue;
                    const long score = static_cast<long>(row_count[i] - 1) *
                                       static_cast<long>(col_count[p] - 1);
                    if (best_score < 0 || score < best_score ||
                        (score == best_score && std::abs(v) > std::abs(best_v))) {
                        best_score = score;
                        best_r = i;
                        best_p = p;
                        best_v = v;
                    }
                }
            }
            if (best_r < 0) {
                // Try the full column set once before declaring the rest
                // unpivotable.
                for (int p : kcols) {
                    double colmax = 0.0;
                    for (int i : colrows[p])
                        colmax = std::max(colmax, std::abs(row_value_at(work[i], p)));
                    if (colmax < pivot_floor) continue;
                    const double threshold = std::max(pivot_floor, 0.1 * colmax);
                    for (int i : colrows[p]) {
                        const double v = row_value_at(work[i], p);
                        if (std::abs(v) < threshold) continue;
                        const long score = static_cast<long>(row_count[i] - 1) *
                                           static_cast<long>(col_count[p] - 1);
                        if (best_score < 0 || score < best_score ||
                            (score == best_score && std::abs(v) > std::abs(best_v))) {
                            best_score = score;
                            best_r = i;
                            best_p = p;
                            best_v = v;
                        }
                    }
                }
            }
            if (best_r < 0) break;  // singular remainder
            if (!kcols.empty()) cursor = (cursor + 1) % kcols.size();
            pivot_general(best_r, best_p, best_v);
            advanced = true;
            (void)advanced;
        }
    }

    SingularInfo info;
    for (int i = 0; i < m; ++i)
        if (row_active[i]) info.rows.push_back(i);
    for (int p = 0; p < m; ++p)
        if (col_active[p]) info.positions.push_back(p);
    if (info.ok()) build_transposes();
    return info;
}

void BasisFactor::build_transposes() {
    const int K = static_cast<int>(pivot_row_.size());
    ucol_start_.assign(m_ + 1, 0);
    ucol_k_.assign(u_pos_.size(), 0);
    ucol_val_.assign(u_pos_.size(), 0.0);
    std::vector<int> counts(m_, 0);
    for (std::size_t j = 0; j < u_pos_.size(); ++j) ++counts[u_pos_[j]];
    for (int p = 0; p < m_; ++p) ucol_start_[p + 1] = ucol_start_[p] + counts[p];
    std::vector<int> fill = ucol_start_;
    for (int k = 0; k < K; ++k)
        for (int j = u_start_[k]; j < u_start_[k + 1]; ++j) {
            const int p = u_pos_[j];
            ucol_k_[fill[p]] = k;
            ucol_val_[fill[p]] = u_val_[j];
            ++fill[p];
        }
}

void BasisFactor::ftran(std::vector<double>& vec) const {
    const int K = static_cast<int>(pivot_row_.size());
    for (int k = 0; k < K; ++k) {
        const double br = vec[pivot_row_[k]];
        if (br == 0.0) continue;
        for (int j = l_start_[k]; j < l_start_[k + 1]; ++j)
            vec[l_row_[j]] -= l_val_[j] * br;
    }
    scratch_.assign(m_, 0.0);
    for (int k = K - 1; k >= 0; --k) {
        double v = vec[pivot_row_[k]];
        for (int j = u_start_[k]; j < u_start_[k + 1]; ++j)
            v -= u_val_[j] * scratch_[u_pos_[j]];
        scratch_[pivot_pos_[k]] = v / pivot_val_[k];
    }
    vec.swap(scratch_);
}

void BasisFactor::btran(std::vector<double>& vec) const {
    const int K = static_cast<int>(pivot_row_.size());
    scratch_.assign(m_, 0.0);
    for (int k = 0; k < K; ++k) {
        const int p = pivot_pos_[k];
        double v = vec[p];
        for (int j = ucol_start_[p]; j < ucol_start_[p + 1]; ++j)
            v -= ucol_val_[j] * scratch_[ucol_k_[j]];
        scratch_[k] = v / pivot_val_[k];
    }
    for (int k = K - 1; k >= 0; --k) {
        double acc = scratch_[k];
        for (int j = l_start_[k]; j < l_start_[k + 1]; ++j)
            acc -= l_val_[j] * scratch_[row_to_k_[l_row_[j]]];
        scratch_[k] = acc;
    }
    vec.assign(m_, 0.0);
    for (int k = 0; k < K; ++k) vec[pivot_row_[k]] = scratch_[k];
}

}  // namespace hubflow
