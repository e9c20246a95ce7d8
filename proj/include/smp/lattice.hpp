#pragma once

// Exact integer linear algebra over Z: fraction-free determinants, the
// row-operation triangularization A = E*B with unimodular E, lattice rank,
// affine dimension and the reduction of a frequency set to full dimension.

#include "smp/errors.hpp"
#include "smp/frequency_set.hpp"
#include "smp/integer.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace smp {

/// Determinant by Bareiss fraction-free elimination. Every intermediate is
/// an exact minor of the input, so Scalar only needs exact division of
/// integral quotients (BigInt, or int64 for small inputs).
template <typename Derived>
typename Derived::Scalar det_bareiss(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw DimensionError("det_exact: matrix is not square");
  const Eigen::Index n = input.rows();
  if (n == 0) return Scalar(1);
  Matrix<Scalar> m = input;
  Scalar sign(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return Scalar(0);
      m.row(k).swap(m.row(swap_row));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline BigInt det_exact(const IntMatrix& m) { return det_bareiss(m); }

/// Result of the row-operation triangularization A = E * B.
template <typename Scalar>
struct Triangularization {
  Matrix<Scalar> E;  ///< rows x rows, det = +-1
  Matrix<Scalar> U;  ///< E^{-1}, so U * A = B
  Matrix<Scalar> B;  ///< row echelon, pivots positive
  std::vector<Eigen::Index> pivot_cols;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_cols.size()); }
};

namespace detail {
template <typename Scalar>
Scalar abs_of(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

// Quotient q minimising |a - q*b| (ties resolved toward zero), b != 0.
template <typename Scalar>
Scalar nearest_quotient(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;  // truncating
  Scalar r = a - q * b;
  if (Scalar(2) * abs_of(r) > abs_of(b)) q += ((r < 0) == (b < 0)) ? Scalar(1) : Scalar(-1);
  return q;
}
}  // namespace detail

/// Euclidean sweep using only row swaps, adding multiples of one row to
/// another, and negating a row. Column by column, the nonzero entry of
/// smallest absolute value (lowest row index on ties) is moved to the pivot
/// row and the entries below it are reduced against it until they vanish.
/// Columns with no nonzero entry at or below the pivot row are skipped, so
/// rectangular and singular inputs come out in row echelon form. Entries
/// above the pivots are left as the sweep produces them.
template <typename Derived>
Triangularization<typename Derived::Scalar> hnf(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Triangularization<Scalar> out;
  Matrix<Scalar>& w = out.B;
  Matrix<Scalar>& e = out.E;
  Matrix<Scalar>& u = out.U;
  w = a;
  const Eigen::Index rows = w.rows();
  const Eigen::Index cols = w.cols();
  e = Matrix<Scalar>::Identity(rows, rows);
  u = Matrix<Scalar>::Identity(rows, rows);

  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < cols && r < rows; ++j) {
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index i = r; i < rows; ++i) {
        if (w(i, j) == 0) continue;
        if (best < 0 || detail::abs_of(w(i, j)) < detail::abs_of(w(best, j))) best = i;
      }
      if (best < 0) break;
      if (best != r) {
        w.row(r).swap(w.row(best));
        u.row(r).swap(u.row(best));
        e.col(r).swap(e.col(best));
      }
      bool cleared = true;
      for (Eigen::Index i = r + 1; i < rows; ++i) {
        if (w(i, j) == 0) continue;
        const Scalar q = detail::nearest_quotient(Scalar(w(i, j)), Scalar(w(r, j)));
        // row_i -= q row_r  on W   <=>   col_r += q col_i  on E
        w.row(i) -= q * w.row(r);
        u.row(i) -= q * u.row(r);
        e.col(r) += q * e.col(i);
        if (w(i, j) != 0) cleared = false;
      }
      if (cleared) {
        if (w(r, j) < 0) {
          w.row(r) = -w.row(r);
          u.row(r) = -u.row(r);
          e.col(r) = -e.col(r);
        }
        out.pivot_cols.push_back(j);
        ++r;
        break;
      }
    }
  }
  return out;
}

/// Rank of an integer matrix.
Eigen::Index lattice_rank(const IntMatrix& m);

/// Basis (as columns) of the integer lattice {u in Z^cols : m u = 0}. The
/// basis is saturated: every integer null vector is an integer combination.
IntMatrix integer_null_space(const IntMatrix& m);

/// det(~n_0, ..., ~n_d) for d+1 points in Z^d, where ~n = (1, n).
BigInt lifted_det(const std::vector<Point>& points);

/// Rank of the lattice spanned by {n - n_0 : n in the first prefix_len
/// points}.
int affine_dimension(const FrequencySet& set, std::size_t prefix_len);
int affine_dimension(const std::vector<Point>& points);

/// True iff the first prefix_len points are affinely independent.
bool is_affinely_independent(const FrequencySet& set, std::size_t prefix_len);
bool is_affinely_independent(const std::vector<Point>& points);

/// set = n_star + A * reduced, with A in Z^{d x d'} of rank d' and the
/// reduced set of full affine dimension d' in Z^{d'}.
struct FullDimReduction {
  Point n_star;
  IntMatrix basis;  ///< A, d x d'
  FrequencySet reduced;

  int reduced_dim() const { return reduced.dim(); }
  /// n_star + A * reduced point.
  Point lift(const Point& reduced_point) const;
};

/// Uses the first listed point as n_star. Works on the listed points; a
/// generator, if present, is ignored.
FullDimReduction reduce_full_dim(const FrequencySet& set);

enum class Abundance { Yes, No, Inconclusive };

struct AbundanceReport {
  Abundance verdict = Abundance::Inconclusive;
  int affine_dim = -1;                ///< -1 when not established
  std::vector<Point> simplex;         ///< d+1 affinely independent stream points
  std::vector<Point> tuple;           ///< the d-tuple n_1..n_d witnessing abundance
  std::size_t distinct_values = 0;    ///< distinct det(~n, ~n_1..~n_d) seen
  std::size_t points_scanned = 0;
  std::string reason;
};

/// Looks for a d-tuple n_1..n_d whose lifted determinants against streamed
/// points take more than scan_budget distinct values.
AbundanceReport is_affinely_abundant(const FrequencySet& set, std::size_t scan_budget);

}  // namespace smp
