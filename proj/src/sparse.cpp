#include "nsq/sparse.hpp"

#include <stdexcept>

namespace nsq {

SpVec SpVec::from_dense(const Vec& v) {
  SpVec r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.e_.push_back({static_cast<long>(i), v[i]});
  return r;
}

SpVec SpVec::flatten(const Mat& m) {
  SpVec r;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero())
        r.e_.push_back({i * m.cols() + j, m.at(i, j)});
  return r;
}

Vec SpVec::to_dense(long n) const {
  Vec v(static_cast<std::size_t>(n), Scalar::zero());
  for (const auto& e : e_) v[static_cast<std::size_t>(e.idx)] = e.val;
  return v;
}

void SpVec::push(long idx, Scalar val) {
  if (val.is_zero()) return;
  if (!e_.empty() && e_.back().idx >= idx)
    throw std::invalid_argument("SpVec::push indices must increase");
  e_.push_back({idx, std::move(val)});
}

const Scalar& SpVec::at(long idx) const {
  static const Scalar kZero = Scalar::zero();
  long lo = 0, hi = static_cast<long>(e_.size()) - 1;
  while (lo <= hi) {
    long mid = (lo + hi) / 2;
    if (e_[static_cast<std::size_t>(mid)].idx == idx)
      return e_[static_cast<std::size_t>(mid)].val;
    if (e_[static_cast<std::size_t>(mid)].idx < idx)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  return kZero;
}

SpVec SpVec::scaled(const Scalar& s) const {
  SpVec r;
  if (s.is_zero()) return r;
  r.e_.reserve(e_.size());
  for (const auto& e : e_) r.e_.push_back({e.idx, e.val * s});
  return r;
}

SpVec SpVec::axpy(const SpVec& a, const Scalar& s, const SpVec& b) {
  if (s.is_zero()) return a;
  SpVec r;
  r.e_.reserve(a.e_.size() + b.e_.size());
  std::size_t i = 0, j = 0;
  while (i < a.e_.size() || j < b.e_.size()) {
    if (j >= b.e_.size() ||
        (i < a.e_.size() && a.e_[i].idx < b.e_[j].idx)) {
      r.e_.push_back(a.e_[i]);
      ++i;
    } else if (i >= a.e_.size() || b.e_[j].idx < a.e_[i].idx) {
      r.e_.push_back({b.e_[j].idx, s * b.e_[j].val});
      ++j;
    } else {
      Scalar v = a.e_[i].val + s * b.e_[j].val;
      if (!v.is_zero()) r.e_.push_back({a.e_[i].idx, std::move(v)});
      ++i;
      ++j;
    }
  }
  return r;
}

bool SpVec::operator==(const SpVec& o) const {
  if (e_.size() != o.e_.size()) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i].idx != o.e_[i].idx || !(e_[i].val == o.e_[i].val)) return false;
  return true;
}

RowSpace::AddResult RowSpace::add(const SpVec& v) {
  AddResult res;
  SpVec w = v;
  // alpha[j]: coefficient of rows_[j] removed from w.
  std::vector<Scalar> alpha(rows_.size(), Scalar::zero());
  // Every stored row is supported on its own pivot plus free columns only,
  // so a single pass clears every pivot column from w.
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    Scalar c = w.at(pivots_[j]);
    if (c.is_zero()) continue;
    if (track_) alpha[j] += c;
    w = SpVec::axpy(w, -c, rows_[j]);
  }
  if (w.is_zero()) {
    res.independent = false;
    if (track_) {
      // v = sum_j alpha[j] rows_[j]; convert to accepted-insertion combos.
      std::size_t n_acc = basis_combo_.empty() ? 0 : basis_combo_[0].size();
      // All combo rows share length == number of accepted insertions.
      res.combo.assign(n_acc, Scalar::zero());
      for (std::size_t j = 0; j < rows_.size(); ++j) {
        if (alpha[j].is_zero()) continue;
        for (std::size_t i = 0; i < n_acc; ++i)
          if (!basis_combo_[j][i].is_zero())
            res.combo[i] += alpha[j] * basis_combo_[j][i];
      }
    }
    return res;
  }
  res.independent = true;
  // Normalize pivot to 1.
  Scalar p = w.leading_value();
  SpVec row = w.scaled(p.inv());
  long piv = row.leading_index();
  std::vector<Scalar> combo;
  if (track_) {
    std::size_t n_acc = basis_combo_.empty() ? 0 : basis_combo_[0].size();
    combo.assign(n_acc + 1, Scalar::zero());
    Scalar pinv = p.inv();
    combo[n_acc] = pinv;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      if (alpha[j].is_zero()) continue;
      for (std::size_t i = 0; i < n_acc; ++i)
        if (!basis_combo_[j][i].is_zero())
          combo[i] -= pinv * alpha[j] * basis_combo_[j][i];
    }
    // Existing combo rows grow by one (coefficient 0 on the new insertion).
    for (auto& bc : basis_combo_) bc.push_back(Scalar::zero());
  }
  // Back-eliminate the new pivot from existing rows.
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const Scalar& c = rows_[j].at(piv);
    if (c.is_zero()) continue;
    Scalar mc = -c;
    rows_[j] = SpVec::axpy(rows_[j], mc, row);
    if (track_)
      for (std::size_t i = 0; i < combo.size(); ++i)
        if (!combo[i].is_zero()) basis_combo_[j][i] += mc * combo[i];
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(piv);
  if (track_) basis_combo_.push_back(std::move(combo));
  return res;
}

SpVec RowSpace::reduce(SpVec v) const {
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    Scalar c = v.at(pivots_[j]);
    if (c.is_zero()) continue;
    v = SpVec::axpy(v, -c, rows_[j]);
  }
  return v;
}

std::optional<std::vector<Scalar>> RowSpace::express(const SpVec& v) const {
  if (!track_) throw std::logic_error("RowSpace::express needs tracking");
  SpVec w = v;
  std::size_t n_acc = basis_combo_.empty() ? 0 : basis_combo_[0].size();
  std::vector<Scalar> combo(n_acc, Scalar::zero());
  for (;;) {
    long lead = w.leading_index();
    if (lead < 0) break;
    long hit = -1;
    for (std::size_t j = 0; j < pivots_.size(); ++j)
      if (pivots_[j] == lead) {
        hit = static_cast<long>(j);
        break;
      }
    if (hit < 0) return std::nullopt;
    Scalar c = w.leading_value();
    for (std::size_t i = 0; i < n_acc; ++i)
      if (!basis_combo_[static_cast<std::size_t>(hit)][i].is_zero())
        combo[i] += c * basis_combo_[static_cast<std::size_t>(hit)][i];
    w = SpVec::axpy(w, -c, rows_[static_cast<std::size_t>(hit)]);
  }
  return combo;
}

std::vector<Vec> kernel_basis(const Mat& a) {
  // Feed columns into a tracked row space; a dependent column yields a
  // kernel vector (its expression over earlier independent columns).
  RowSpace rs(true);
  std::vector<long> accepted;  // column index per accepted insertion
  std::vector<Vec> kernel;
  for (long j = 0; j < a.cols(); ++j) {
    Vec col(static_cast<std::size_t>(a.rows()));
    for (long i = 0; i < a.rows(); ++i) col[static_cast<std::size_t>(i)] = a.at(i, j);
    auto res = rs.add(SpVec::from_dense(col));
    if (res.independent) {
      accepted.push_back(j);
    } else {
      Vec x(static_cast<std::size_t>(a.cols()), Scalar::zero());
      for (std::size_t i = 0; i < res.combo.size(); ++i)
        x[static_cast<std::size_t>(accepted[i])] = res.combo[i];
      x[static_cast<std::size_t>(j)] = -Scalar::one();
      kernel.push_back(std::move(x));
    }
  }
  return kernel;
}

std::vector<Vec> left_kernel_basis(const Mat& a) {
  return kernel_basis(a.transpose());
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  // Feed columns of A (tracked); then express b.
  RowSpace rs(true);
  std::vector<long> accepted;
  for (long j = 0; j < a.cols(); ++j) {
    Vec col(static_cast<std::size_t>(a.rows()));
    for (long i = 0; i < a.rows(); ++i) col[static_cast<std::size_t>(i)] = a.at(i, j);
    if (rs.add(SpVec::from_dense(col)).independent) accepted.push_back(j);
  }
  auto combo = rs.express(SpVec::from_dense(b));
  if (!combo) return std::nullopt;
  Vec x(static_cast<std::size_t>(a.cols()), Scalar::zero());
  for (std::size_t i = 0; i < combo->size(); ++i)
    x[static_cast<std::size_t>(accepted[i])] = (*combo)[i];
  return x;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw std::domain_error("inverse of non-square");
  long n = a.rows();
  RowSpace rs(true);
  for (long j = 0; j < n; ++j) {
    Vec col(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = a.at(i, j);
    if (!rs.add(SpVec::from_dense(col)).independent)
      throw std::domain_error("matrix is singular");
  }
  Mat inv(n, n);
  for (long i = 0; i < n; ++i) {
    Vec e(static_cast<std::size_t>(n), Scalar::zero());
    e[static_cast<std::size_t>(i)] = Scalar::one();
    auto combo = rs.express(SpVec::from_dense(e));
    if (!combo) throw std::domain_error("matrix is singular");
    // A x = e_i with x over accepted columns 0..n-1 in order.
    for (long k = 0; k < n; ++k) inv.at(k, i) = (*combo)[static_cast<std::size_t>(k)];
  }
  return inv;
}

long rank(const Mat& a) {
  RowSpace rs(false);
  for (long i = 0; i < a.rows(); ++i) {
    Vec row(static_cast<std::size_t>(a.cols()));
    for (long j = 0; j < a.cols(); ++j) row[static_cast<std::size_t>(j)] = a.at(i, j);
    rs.add(SpVec::from_dense(row));
  }
  return rs.dim();
}

Scalar trace_product(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("trace_product shape mismatch");
  Scalar t = Scalar::zero();
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) {
      const Scalar& x = a.at(i, j);
      if (x.is_zero()) continue;
      const Scalar& y = b.at(j, i);
      if (!y.is_zero()) t += x * y;
    }
  return t;
}

}  // namespace nsq
