#pragma once

/// \file matrix.hpp
/// Dense matrices and vectors over the exact scalar field.  Sizes in this
/// project stay small (ambient spaces up to 256, coordinate algebras up to
/// ~120), so a dense representation with zero-skipping arithmetic is both
/// simple and fast enough; sparsity is exploited where it matters via the
/// sparse vector type in sparse.hpp.

#include <functional>
#include <vector>

#include "nsq/scalar.hpp"

namespace nsq {

using Vec = std::vector<Scalar>;

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec mul_scalar(const Vec& a, const Scalar& s);
/// a += s * b
void axpy(Vec& a, const Scalar& s, const Vec& b);
Scalar dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& a);

class Mat {
 public:
  Mat() = default;
  Mat(long rows, long cols)
      : r_(rows), c_(cols),
        d_(static_cast<std::size_t>(rows * cols), Scalar::zero()) {}

  static Mat identity(long n);
  /// Diagonal matrix from a vector.
  static Mat diag(const Vec& d);

  long rows() const { return r_; }
  long cols() const { return c_; }
  Scalar& at(long i, long j) { return d_[static_cast<std::size_t>(i * c_ + j)]; }
  const Scalar& at(long i, long j) const {
    return d_[static_cast<std::size_t>(i * c_ + j)];
  }

  bool is_zero() const;
  bool operator==(const Mat& o) const = default;

  Mat operator-() const;
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  Mat& operator+=(const Mat& o) { return *this = *this + o; }
  Mat& operator-=(const Mat& o) { return *this = *this - o; }
  Mat mul_scalar(const Scalar& s) const;
  /// Integer power (n >= 0).
  Mat pow(long n) const;

  Vec apply(const Vec& v) const;
  /// Row vector times matrix.
  Vec apply_left(const Vec& v) const;

  Mat transpose() const;
  Scalar trace() const;
  /// Kronecker product, index convention (i1*rows2+i2, j1*cols2+j2).
  static Mat kron(const Mat& a, const Mat& b);

  /// Count of structurally nonzero entries.
  long nnz() const;

  /// Entrywise map.
  Mat map(const std::function<Scalar(const Scalar&)>& f) const;

  std::string str() const;

 private:
  long r_ = 0, c_ = 0;
  std::vector<Scalar> d_;
};

/// Matrix over exact quadratic numbers, used for fast rank/independence
/// probes at a rational point.  Elimination is plain Gauss over Q(sqrt(d)).
class QMat {
 public:
  QMat() = default;
  QMat(long rows, long cols)
      : r_(rows), c_(cols), d_(static_cast<std::size_t>(rows * cols)) {}
  long rows() const { return r_; }
  long cols() const { return c_; }
  QuadNum& at(long i, long j) { return d_[static_cast<std::size_t>(i * c_ + j)]; }
  const QuadNum& at(long i, long j) const {
    return d_[static_cast<std::size_t>(i * c_ + j)];
  }
  /// Rank by Gaussian elimination (destroys a working copy).
  long rank() const;

 private:
  long r_ = 0, c_ = 0;
  std::vector<QuadNum> d_;
};

/// Evaluate a symbolic matrix at v = v0 (q = v0^2).
QMat eval_at_v(const Mat& m, const Rat& v0);

/// Rank of the specialized matrix at v = v0; a lower bound for the symbolic
/// rank, with equality certified separately when needed.
long rank_probe(const Mat& m, const Rat& v0);

}  // namespace nsq
