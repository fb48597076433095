#ifndef HUBFLOW_SPARSE_LU_HPP
#define HUBFLOW_SPARSE_LU_HPP

#include <span>
#include <vector>

namespace hubflow {

/// LU factorization of a square sparse basis, pivot order chosen for
/// sparsity: singleton rows/columns are eliminated first (no fill, no
/// value updates), the remaining kernel runs Markowitz elimination with
/// threshold partial pivoting.
///
/// Terminology: "row" is a constraint row index, "position" is the basic
/// slot (column of the basis matrix). ftran maps a row-indexed vector b
/// to the position-indexed solution of B x = b; btran maps a
/// position-indexed vector c to the row-indexed solution of B^T y = c.
class BasisFactor {
  public:
    struct SingularInfo {
        std::vector<int> rows;       // unpivoted rows
        std::vector<int> positions;  // unpivoted basic slots, same count
        bool ok() const { return rows.empty(); }
    };

    /// Factorizes the m x m matrix whose position-p column is
    /// row_idx/values[col_ptr[p] .. col_ptr[p+1]). Entries with magnitude
    /// below pivot_floor are never chosen as pivots. On partial failure the
    /// factorization is unusable and the caller must repair the basis
    /// (replace the columns at the reported positions) and retry.
    SingularInfo factorize(int m, std::span<const int> col_ptr,
                           std::span<const int> row_idx,
                           std::span<const double> values, double pivot_floor);

    /// b (by row) -> x (by position), in place.
    void ftran(std::vector<double>& vec) const;
    /// c (by position) -> y (by row), in place.
    void btran(std::vector<double>& vec) const;

    std::size_t factor_nonzeros() const { return l_row_.size() + u_pos_.size(); }
    int dim() const { return m_; }

  private:
    int m_ = 0;
    std::vector<int> pivot_row_, pivot_pos_;
    std::vector<double> pivot_val_;
    std::vector<int> row_to_k_;
    // L multipliers per pivot k, acting on still-active rows.
    std::vector<int> l_start_;
    std::vector<int> l_row_;
    std::vector<double> l_val_;
    // U entries per pivot k, keyed by position (pivoted later than k).
    std::vector<int> u_start_;
    std::vector<int> u_pos_;
    std::vector<double> u_val_;
    // U by position for btran: lists of (pivot k, value), ascending k.
    std::vector<int> ucol_start_, ucol_k_;
    std::vector<double> ucol_val_;

    mutable std::vector<double> scratch_;

    void build_transposes();
};

}  // namespace hubflow

#endif
