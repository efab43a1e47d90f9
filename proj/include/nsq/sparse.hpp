#pragma once

/// \file sparse.hpp
/// Sparse vectors over the exact scalar field and an incremental row-space
/// (echelon) container with dependency tracking.  The row space is the
/// workhorse for span/independence questions, kernels, and for expressing a
/// dependent vector as an exact linear combination of earlier insertions.

#include <optional>
#include <vector>

#include "nsq/matrix.hpp"

namespace nsq {

struct SpEntry {
  long idx;
  Scalar val;
};

/// Sorted-by-index sparse vector with no explicit zeros.
class SpVec {
 public:
  SpVec() = default;

  static SpVec from_dense(const Vec& v);
  /// Row-major flattening of a matrix.
  static SpVec flatten(const Mat& m);
  Vec to_dense(long n) const;

  /// Append an entry with index beyond all current ones (build in order).
  void push(long idx, Scalar val);

  bool is_zero() const { return e_.empty(); }
  long nnz() const { return static_cast<long>(e_.size()); }
  const std::vector<SpEntry>& entries() const { return e_; }
  /// Lowest index with a nonzero value; -1 when zero.
  long leading_index() const { return e_.empty() ? -1 : e_.front().idx; }
  const Scalar& leading_value() const { return e_.front().val; }
  /// Value at an index (zero when absent).
  const Scalar& at(long idx) const;

  SpVec scaled(const Scalar& s) const;
  /// a + s * b.
  static SpVec axpy(const SpVec& a, const Scalar& s, const SpVec& b);

  bool operator==(const SpVec& o) const;

 private:
  std::vector<SpEntry> e_;
};

/// Incremental echelon row space.  Rows are kept fully reduced (each pivot
/// value 1, pivot column eliminated from every other row).  Optionally
/// tracks, for every dependent insertion, its exact expression over the
/// previously accepted (independent) insertions.
class RowSpace {
 public:
  explicit RowSpace(bool track = false) : track_(track) {}

  struct AddResult {
    bool independent = false;
    /// When dependent and tracking is on: the inserted vector equals
    /// sum_i combo[i] * accepted[i] over accepted insertions in order.
    std::vector<Scalar> combo;
  };

  AddResult add(const SpVec& v);
  long dim() const { return static_cast<long>(rows_.size()); }

  /// Remainder of v after full reduction against the rows.
  SpVec reduce(SpVec v) const;
  bool contains(const SpVec& v) const { return reduce(v).is_zero(); }
  /// Coordinates of v over the accepted insertions; nullopt when v is
  /// outside the span.  Requires tracking.
  std::optional<std::vector<Scalar>> express(const SpVec& v) const;

  const std::vector<SpVec>& rows() const { return rows_; }
  const std::vector<long>& pivots() const { return pivots_; }

 private:
  bool track_;
  std::vector<SpVec> rows_;
  std::vector<long> pivots_;
  // rows_[j] == sum_i basis_combo_[j][i] * accepted[i]
  std::vector<std::vector<Scalar>> basis_combo_;
};

/// Right kernel of a dense matrix: all x with A x = 0, echelonized.
std::vector<Vec> kernel_basis(const Mat& a);

/// Left kernel: all x with x^T A = 0.
std::vector<Vec> left_kernel_basis(const Mat& a);

/// Solve A x = b; nullopt when inconsistent.  A need not be square.
std::optional<Vec> solve(const Mat& a, const Vec& b);

/// Inverse of a square matrix; throws std::domain_error when singular.
Mat inverse(const Mat& a);

/// Exact rank via row reduction.
long rank(const Mat& a);

/// tr(A*B) without forming the product.
Scalar trace_product(const Mat& a, const Mat& b);

}  // namespace nsq
