#ifndef DOFCOUNT_LINALG_HPP
#define DOFCOUNT_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/SVD>

#include "dofcount/error.hpp"
#include "dofcount/quantum.hpp"
#include "dofcount/rational.hpp"

namespace dofcount {

/// Row-major dense matrix stored as a list of rows.
template <typename T>
using RowMatrix = std::vector<std::vector<T>>;

template <typename T>
std::size_t column_count(const RowMatrix<T>& rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "matrix has no rows");
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorCode::RaggedMatrix, "rows have different lengths");
  }
  return cols;
}

/// Incremental row echelon form over an exact field. Each added row is
/// reduced against the current pivots; a nonzero remainder becomes a pivot.
template <typename T>
class ExactEchelon {
 public:
  explicit ExactEchelon(std::size_t columns) : columns_(columns) {}

  /// Returns true if `row` increased the rank.
  bool add(std::vector<T> row) {
    if (row.size() != columns_) throw Error(ErrorCode::RaggedMatrix, "row length differs from column count");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const std::size_t col = pivot_cols_[i];
      if (row[col] == 0) continue;
      const T factor = row[col];
      const auto& p = pivots_[i];
      for (std::size_t c = col; c < columns_; ++c) {
        if (p[c] != 0) row[c] -= factor * p[c];
      }
    }
    const auto lead = std::find_if(row.begin(), row.end(), [](const T& x) { return x != 0; });
    if (lead == row.end()) return false;
    const std::size_t col = static_cast<std::size_t>(lead - row.begin());
    const T inv = T(1) / row[col];
    for (std::size_t c = col; c < columns_; ++c) row[c] *= inv;
    pivots_.push_back(std::move(row));
    pivot_cols_.push_back(col);
    return true;
  }

  std::size_t rank() const noexcept { return pivots_.size(); }
  bool full() const noexcept { return pivots_.size() == columns_; }

 private:
  std::size_t columns_;
  std::vector<std::vector<T>> pivots_;
  std::vector<std::size_t> pivot_cols_;
};

/// Rank over the rationals by Gaussian elimination; no tolerance.
inline std::size_t matrix_rank_exact(const RowMatrix<Rational>& rows) {
  ExactEchelon<Rational> echelon(column_count(rows));
  for (const auto& r : rows) {
    echelon.add(r);
    if (echelon.full()) break;
  }
  return echelon.rank();
}

/// Number of singular values above `tol` times the largest one.
inline std::size_t matrix_rank_numeric(const RowMatrix<double>& rows, double tol = tolerance::rank_relative) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rank tolerance must be positive");
  const std::size_t cols = column_count(rows);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = rows[i][j];
      if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "matrix has a non-finite entry");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x;
    }
  }
  if (cols == 0) return 0;
  const Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double threshold = tol * sigma(0);
  return static_cast<std::size_t>((sigma.array() > threshold).count());
}

}  // namespace dofcount

#endif  // DOFCOUNT_LINALG_HPP
