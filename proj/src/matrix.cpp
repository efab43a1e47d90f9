#include "nsq/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace nsq {

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec mul_scalar(const Vec& a, const Scalar& s) {
  Vec r = a;
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vec& a, const Scalar& s, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += s * b[i];
}

Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Scalar r = Scalar::zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) r += a[i] * b[i];
  return r;
}

bool is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

Mat Mat::identity(long n) {
  Mat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = Scalar::one();
  return m;
}

Mat Mat::diag(const Vec& d) {
  Mat m(static_cast<long>(d.size()), static_cast<long>(d.size()));
  for (long i = 0; i < m.rows(); ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : d_)
    if (!x.is_zero()) return false;
  return true;
}

Mat Mat::operator-() const {
  Mat m = *this;
  for (auto& x : m.d_) x = -x;
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_)
    throw std::invalid_argument("matrix shape mismatch");
  Mat m = a;
  for (std::size_t i = 0; i < m.d_.size(); ++i)
    if (!b.d_[i].is_zero()) m.d_[i] += b.d_[i];
  return m;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_)
    throw std::invalid_argument("matrix shape mismatch");
  Mat m = a;
  for (std::size_t i = 0; i < m.d_.size(); ++i)
    if (!b.d_[i].is_zero()) m.d_[i] -= b.d_[i];
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
  Mat m(a.r_, b.c_);
  for (long i = 0; i < a.r_; ++i)
    for (long k = 0; k < a.c_; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (long j = 0; j < b.c_; ++j) {
        const Scalar& bkj = b.at(k, j);
        if (!bkj.is_zero()) m.at(i, j) += aik * bkj;
      }
    }
  return m;
}

Mat Mat::mul_scalar(const Scalar& s) const {
  Mat m = *this;
  for (auto& x : m.d_)
    if (!x.is_zero()) x *= s;
  return m;
}

Mat Mat::pow(long n) const {
  if (r_ != c_) throw std::invalid_argument("pow of a non-square matrix");
  if (n < 0) throw std::invalid_argument("negative matrix power");
  Mat r = identity(r_);
  Mat base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    if (n >>= 1) base = base * base;
  }
  return r;
}

Vec Mat::apply(const Vec& v) const {
  if (static_cast<long>(v.size()) != c_)
    throw std::invalid_argument("matrix/vector size mismatch");
  Vec r(static_cast<std::size_t>(r_), Scalar::zero());
  for (long i = 0; i < r_; ++i)
    for (long j = 0; j < c_; ++j) {
      const Scalar& a = at(i, j);
      if (!a.is_zero() && !v[static_cast<std::size_t>(j)].is_zero())
        r[static_cast<std::size_t>(i)] += a * v[static_cast<std::size_t>(j)];
    }
  return r;
}

Vec Mat::apply_left(const Vec& v) const {
  if (static_cast<long>(v.size()) != r_)
    throw std::invalid_argument("matrix/vector size mismatch");
  Vec r(static_cast<std::size_t>(c_), Scalar::zero());
  for (long i = 0; i < r_; ++i) {
    const Scalar& vi = v[static_cast<std::size_t>(i)];
    if (vi.is_zero()) continue;
    for (long j = 0; j < c_; ++j) {
      const Scalar& a = at(i, j);
      if (!a.is_zero()) r[static_cast<std::size_t>(j)] += vi * a;
    }
  }
  return r;
}

Mat Mat::transpose() const {
  Mat m(c_, r_);
  for (long i = 0; i < r_; ++i)
    for (long j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Scalar Mat::trace() const {
  if (r_ != c_) throw std::invalid_argument("trace of a non-square matrix");
  Scalar t = Scalar::zero();
  for (long i = 0; i < r_; ++i) t += at(i, i);
  return t;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
  Mat m(a.r_ * b.r_, a.c_ * b.c_);
  for (long i1 = 0; i1 < a.r_; ++i1)
    for (long j1 = 0; j1 < a.c_; ++j1) {
      const Scalar& x = a.at(i1, j1);
      if (x.is_zero()) continue;
      for (long i2 = 0; i2 < b.r_; ++i2)
        for (long j2 = 0; j2 < b.c_; ++j2) {
          const Scalar& y = b.at(i2, j2);
          if (!y.is_zero()) m.at(i1 * b.r_ + i2, j1 * b.c_ + j2) = x * y;
        }
    }
  return m;
}

long Mat::nnz() const {
  long n = 0;
  for (const auto& x : d_)
    if (!x.is_zero()) ++n;
  return n;
}

Mat Mat::map(const std::function<Scalar(const Scalar&)>& f) const {
  Mat m = *this;
  for (auto& x : m.d_) x = f(x);
  return m;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (long i = 0; i < r_; ++i) {
    os << (i == 0 ? "[" : " ") << "[";
    for (long j = 0; j < c_; ++j)
      os << (j ? ", " : "") << at(i, j).str();
    os << "]" << (i + 1 == r_ ? "]" : ",\n");
  }
  return os.str();
}

long QMat::rank() const {
  QMat w = *this;
  long rank = 0;
  for (long col = 0; col < w.c_ && rank < w.r_; ++col) {
    long piv = -1;
    for (long i = rank; i < w.r_; ++i)
      if (!w.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (long j = col; j < w.c_; ++j) std::swap(w.at(piv, j), w.at(rank, j));
    QuadNum inv = w.at(rank, col).inv();
    for (long i = rank + 1; i < w.r_; ++i) {
      if (w.at(i, col).is_zero()) continue;
      QuadNum f = w.at(i, col) * inv;
      for (long j = col; j < w.c_; ++j)
        w.at(i, j) -= f * w.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

QMat eval_at_v(const Mat& m, const Rat& v0) {
  QMat q(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) q.at(i, j) = m.at(i, j).eval_v(v0);
  return q;
}

long rank_probe(const Mat& m, const Rat& v0) {
  return eval_at_v(m, v0).rank();
}

}  // namespace nsq
