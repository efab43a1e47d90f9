#include "nsq/algebra.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace nsq {

// ---------------------------------------------------------------- ambient

SpVec MatrixAmbient::unit() const {
  SpVec v;
  for (long i = 0; i < n_; ++i) v.push(i * n_ + i, Scalar::one());
  return v;
}

Mat MatrixAmbient::to_mat(const SpVec& v) const {
  Mat m(n_, n_);
  for (const auto& e : v.entries()) m.at(e.idx / n_, e.idx % n_) = e.val;
  return m;
}

SpVec MatrixAmbient::mul(const SpVec& a, const SpVec& b) const {
  // Sparse row-major product without forming dense intermediates: group b's
  // entries by row, then for every entry a_(i,k) accumulate a_(i,k) * b_(k,j).
  std::vector<std::vector<const SpEntry*>> brows(
      static_cast<std::size_t>(n_));
  for (const auto& e : b.entries())
    brows[static_cast<std::size_t>(e.idx / n_)].push_back(&e);
  std::map<long, Scalar> acc;
  for (const auto& ea : a.entries()) {
    long i = ea.idx / n_, k = ea.idx % n_;
    for (const SpEntry* eb : brows[static_cast<std::size_t>(k)]) {
      long j = eb->idx % n_;
      Scalar term = ea.val * eb->val;
      auto [it, fresh] = acc.emplace(i * n_ + j, term);
      if (!fresh) it->second += term;
    }
  }
  SpVec out;
  for (auto& [idx, val] : acc)
    if (!val.is_zero()) out.push(idx, std::move(val));
  return out;
}

std::string MatrixAmbient::describe() const {
  return "End(" + std::to_string(n_) + "-dim space)";
}

// ------------------------------------------------------------ AlgebraSpan

SpVec AlgebraSpan::element(const std::vector<Scalar>& c) const {
  SpVec acc;
  for (std::size_t i = 0; i < c.size() && i < basis.size(); ++i)
    if (!c[i].is_zero()) acc = SpVec::axpy(acc, c[i], basis[i]);
  return acc;
}

std::vector<Scalar> AlgebraSpan::apply_rmul(
    int k, const std::vector<Scalar>& x) const {
  const Mat& r = rmul.at(static_cast<std::size_t>(k));
  std::vector<Scalar> y(static_cast<std::size_t>(r.rows()), Scalar::zero());
  for (long j = 0; j < r.cols(); ++j) {
    const Scalar& xj = x[static_cast<std::size_t>(j)];
    if (xj.is_zero()) continue;
    for (long i = 0; i < r.rows(); ++i) {
      const Scalar& rij = r.at(i, j);
      if (!rij.is_zero()) y[static_cast<std::size_t>(i)] += rij * xj;
    }
  }
  return y;
}

std::vector<Scalar> AlgebraSpan::mul_coords(
    const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
  if (rmul.empty() && dim() > 1)
    throw std::logic_error("mul_coords needs a word-closure span");
  // Basis words are prefix-closed, so x * basis[j] can be computed for every
  // j in one walk of the word tree, reusing the parent's coordinates.
  std::map<std::vector<int>, long> index;
  for (long i = 0; i < dim(); ++i) index[words[static_cast<std::size_t>(i)]] = i;
  std::vector<std::vector<std::pair<long, int>>> children(
      static_cast<std::size_t>(dim()));
  for (long i = 1; i < dim(); ++i) {
    std::vector<int> w = words[static_cast<std::size_t>(i)];
    int g = w.back();
    w.pop_back();
    children[static_cast<std::size_t>(index.at(w))].emplace_back(i, g);
  }
  std::vector<Scalar> out(static_cast<std::size_t>(dim()), Scalar::zero());
  // DFS with explicit stack: (basis index j, coordinates of x * basis[j]).
  std::vector<std::pair<long, std::vector<Scalar>>> stack;
  stack.emplace_back(0, x);
  while (!stack.empty()) {
    auto [j, cur] = std::move(stack.back());
    stack.pop_back();
    const Scalar& yj = y[static_cast<std::size_t>(j)];
    if (!yj.is_zero())
      for (long i = 0; i < dim(); ++i)
        if (!cur[static_cast<std::size_t>(i)].is_zero())
          out[static_cast<std::size_t>(i)] +=
              yj * cur[static_cast<std::size_t>(i)];
    for (const auto& [child, g] : children[static_cast<std::size_t>(j)])
      stack.emplace_back(child, apply_rmul(g, cur));
  }
  return out;
}

Mat AlgebraSpan::lmul_matrix(const SpVec& z) const {
  Mat m(dim(), dim());
  for (long j = 0; j < dim(); ++j) {
    auto c = express(ambient->mul(z, basis[static_cast<std::size_t>(j)]));
    if (!c) throw std::invalid_argument("lmul_matrix: product leaves the span");
    for (long i = 0; i < static_cast<long>(c->size()); ++i)
      m.at(i, j) = (*c)[static_cast<std::size_t>(i)];
  }
  return m;
}

Mat AlgebraSpan::rmul_matrix(const SpVec& z) const {
  Mat m(dim(), dim());
  for (long j = 0; j < dim(); ++j) {
    auto c = express(ambient->mul(basis[static_cast<std::size_t>(j)], z));
    if (!c) throw std::invalid_argument("rmul_matrix: product leaves the span");
    for (long i = 0; i < static_cast<long>(c->size()); ++i)
      m.at(i, j) = (*c)[static_cast<std::size_t>(i)];
  }
  return m;
}

const MatrixAmbient& AlgebraSpan::matrix_ambient() const {
  const auto* ma = dynamic_cast<const MatrixAmbient*>(ambient.get());
  if (!ma) throw std::logic_error("span does not live in a matrix ambient");
  return *ma;
}

Mat AlgebraSpan::basis_mat(long i) const {
  return matrix_ambient().to_mat(basis.at(static_cast<std::size_t>(i)));
}

// ---------------------------------------------------------------- closure

AlgebraSpan algebra_closure(AmbientPtr ambient, std::vector<SpVec> gens,
                            long max_dim) {
  if (max_dim < 1) throw std::invalid_argument("max_dim must be positive");
  AlgebraSpan s;
  s.ambient = std::move(ambient);
  s.gens = std::move(gens);
  s.space = RowSpace(true);
  const long ng = static_cast<long>(s.gens.size());
  // cols[g][j] = coordinates of basis[j] * gens[g] over the accepted basis
  // (unit vector when the product was accepted as a new basis element).
  std::vector<std::vector<std::vector<Scalar>>> cols(
      static_cast<std::size_t>(ng));

  s.space.add(s.ambient->unit());
  s.basis.push_back(s.ambient->unit());
  s.words.emplace_back();

  for (std::size_t j = 0; j < s.basis.size(); ++j) {
    for (long g = 0; g < ng; ++g) {
      SpVec child =
          s.ambient->mul(s.basis[j], s.gens[static_cast<std::size_t>(g)]);
      auto res = s.space.add(child);
      if (res.independent) {
        if (static_cast<long>(s.basis.size()) + 1 > max_dim)
          throw DimensionExceeded(max_dim);
        std::vector<int> w = s.words[j];
        w.push_back(static_cast<int>(g));
        s.basis.push_back(std::move(child));
        s.words.push_back(std::move(w));
        std::vector<Scalar> e(s.basis.size(), Scalar::zero());
        e.back() = Scalar::one();
        cols[static_cast<std::size_t>(g)].push_back(std::move(e));
      } else {
        cols[static_cast<std::size_t>(g)].push_back(std::move(res.combo));
      }
    }
  }

  const long d = s.dim();
  for (long g = 0; g < ng; ++g) {
    Mat r(d, d);
    for (long j = 0; j < d; ++j) {
      const auto& c = cols[static_cast<std::size_t>(g)][static_cast<std::size_t>(j)];
      for (long i = 0; i < static_cast<long>(c.size()); ++i)
        r.at(i, j) = c[static_cast<std::size_t>(i)];
    }
    s.rmul.push_back(std::move(r));
  }
  return s;
}

AlgebraSpan algebra_closure(const std::vector<Mat>& gens, long max_dim) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  long n = gens.front().rows();
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n)
      throw std::invalid_argument("generators must be square, equal size");
  auto amb = std::make_shared<MatrixAmbient>(n);
  std::vector<SpVec> gv;
  gv.reserve(gens.size());
  for (const auto& g : gens) gv.push_back(SpVec::flatten(g));
  return algebra_closure(amb, std::move(gv), max_dim);
}

AlgebraSpan span_from_closed_basis(const std::vector<Mat>& mats) {
  if (mats.empty()) throw std::invalid_argument("empty basis");
  long n = mats.front().rows();
  AlgebraSpan s;
  s.ambient = std::make_shared<MatrixAmbient>(n);
  s.space = RowSpace(true);
  for (const auto& m : mats) {
    SpVec v = SpVec::flatten(m);
    if (s.space.add(v).independent) s.basis.push_back(std::move(v));
  }
  s.words.assign(s.basis.size(), {});
  return s;
}

bool certify_generator_products(const AlgebraSpan& a) {
  const Scalar minus_one(Rat(-1));
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    for (long j = 0; j < a.dim(); ++j) {
      SpVec p = a.ambient->mul(a.basis[static_cast<std::size_t>(j)], a.gens[g]);
      std::vector<Scalar> c(static_cast<std::size_t>(a.dim()));
      for (long i = 0; i < a.dim(); ++i) c[static_cast<std::size_t>(i)] = a.rmul[g].at(i, j);
      SpVec rec = a.element(c);
      if (!SpVec::axpy(p, minus_one, rec).is_zero()) return false;
    }
  }
  return true;
}

bool certify_pairwise(const AlgebraSpan& a) {
  for (const auto& x : a.basis)
    for (const auto& y : a.basis)
      if (!a.contains(a.ambient->mul(x, y))) return false;
  return true;
}

bool same_span(const AlgebraSpan& a, const AlgebraSpan& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& v : a.basis)
    if (!b.contains(v)) return false;
  for (const auto& v : b.basis)
    if (!a.contains(v)) return false;
  return true;
}

// -------------------------------------------------------------- commutant

namespace {

/// Kernel of the row space (viewed as linear equations over `ncols`
/// unknowns): one vector per free column.
std::vector<SpVec> kernel_of_rows(const RowSpace& rs, long ncols) {
  std::vector<char> is_pivot(static_cast<std::size_t>(ncols), 0);
  for (long p : rs.pivots()) is_pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<SpVec> out;
  for (long f = 0; f < ncols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<std::pair<long, Scalar>> ent;
    ent.emplace_back(f, Scalar::one());
    for (std::size_t r = 0; r < rs.rows().size(); ++r) {
      const Scalar& c = rs.rows()[r].at(f);
      if (!c.is_zero()) ent.emplace_back(rs.pivots()[r], -c);
    }
    std::sort(ent.begin(), ent.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    SpVec v;
    for (auto& [idx, val] : ent) v.push(idx, std::move(val));
    out.push_back(std::move(v));
  }
  return out;
}

struct OpIndex {
  // Nonzero entries of an operator listed by row and by column.
  std::vector<std::vector<std::pair<long, const Scalar*>>> by_row, by_col;
  explicit OpIndex(const Mat& a)
      : by_row(static_cast<std::size_t>(a.rows())),
        by_col(static_cast<std::size_t>(a.cols())) {
    for (long i = 0; i < a.rows(); ++i)
      for (long j = 0; j < a.cols(); ++j)
        if (!a.at(i, j).is_zero()) {
          by_row[static_cast<std::size_t>(i)].emplace_back(j, &a.at(i, j));
          by_col[static_cast<std::size_t>(j)].emplace_back(i, &a.at(i, j));
        }
  }
};

/// Solve [X, op] = 0 for all ops, X supported on the given positions;
/// equations are taken at the positions listed in eq_pos.
std::vector<SpVec> commutant_system(const std::vector<OpIndex>& ops, long n,
                                    const std::vector<long>& unknown_pos,
                                    const std::vector<long>& eq_pos) {
  std::vector<long> uidx(static_cast<std::size_t>(n * n), -1);
  for (std::size_t u = 0; u < unknown_pos.size(); ++u)
    uidx[static_cast<std::size_t>(unknown_pos[u])] = static_cast<long>(u);
  RowSpace rs(false);
  for (const auto& op : ops) {
    for (long pos : eq_pos) {
      long r = pos / n, c = pos % n;
      std::map<long, Scalar> row;
      // (A X)_{rc} = sum_k A_{rk} X_{kc}
      for (const auto& [k, a] : op.by_row[static_cast<std::size_t>(r)]) {
        long u = uidx[static_cast<std::size_t>(k * n + c)];
        if (u < 0) continue;
        auto [it, fresh] = row.emplace(u, *a);
        if (!fresh) it->second += *a;
      }
      // -(X A)_{rc} = -sum_k X_{rk} A_{kc}
      for (const auto& [k, a] : op.by_col[static_cast<std::size_t>(c)]) {
        long u = uidx[static_cast<std::size_t>(r * n + k)];
        if (u < 0) continue;
        auto [it, fresh] = row.emplace(u, -*a);
        if (!fresh) it->second -= *a;
      }
      SpVec v;
      for (auto& [u, val] : row)
        if (!val.is_zero()) v.push(u, std::move(val));
      if (!v.is_zero()) rs.add(v);
    }
  }
  return kernel_of_rows(rs, static_cast<long>(unknown_pos.size()));
}

}  // namespace

std::vector<Mat> commutant_basis(const std::vector<Mat>& mats,
                                 const std::vector<long>& grading,
                                 bool grade_preserving_only) {
  if (mats.empty()) throw std::invalid_argument("no operators");
  long n = mats.front().rows();
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("operators must be square, equal size");
  std::vector<long> labels = grading;
  if (labels.empty()) labels.assign(static_cast<std::size_t>(n), 0);
  if (static_cast<long>(labels.size()) != n)
    throw std::invalid_argument("grading size mismatch");
  if (grade_preserving_only && grading.empty())
    throw std::invalid_argument("grade_preserving_only needs a grading");

  bool preserving = true;
  for (const auto& m : mats)
    for (long i = 0; i < n && preserving; ++i)
      for (long j = 0; j < n; ++j)
        if (!m.at(i, j).is_zero() &&
            labels[static_cast<std::size_t>(i)] !=
                labels[static_cast<std::size_t>(j)]) {
          preserving = false;
          break;
        }

  std::vector<OpIndex> ops;
  ops.reserve(mats.size());
  for (const auto& m : mats) ops.emplace_back(m);

  std::vector<Mat> result;
  auto emit = [&](const std::vector<long>& upos,
                  const std::vector<SpVec>& kernel) {
    for (const auto& v : kernel) {
      Mat x(n, n);
      for (const auto& e : v.entries())
        x.at(upos[static_cast<std::size_t>(e.idx)] / n,
             upos[static_cast<std::size_t>(e.idx)] % n) = e.val;
      result.push_back(std::move(x));
    }
  };

  if (preserving) {
    // Every op maps each graded component to itself, so [X, op] = 0 splits
    // into independent systems per label shift; X's component with
    // shift(i, j) = (label_i, label_j) couples only to equations at
    // positions of the same shift.
    std::map<std::pair<long, long>, std::vector<long>> groups;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        long li = labels[static_cast<std::size_t>(i)];
        long lj = labels[static_cast<std::size_t>(j)];
        if (grade_preserving_only && li != lj) continue;
        groups[{li, lj}].push_back(i * n + j);
      }
    for (const auto& [shift, pos] : groups)
      emit(pos, commutant_system(ops, n, pos, pos));
  } else {
    std::vector<long> upos;
    std::vector<long> eq;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        long p = i * n + j;
        eq.push_back(p);
        if (!grade_preserving_only ||
            labels[static_cast<std::size_t>(i)] ==
                labels[static_cast<std::size_t>(j)])
          upos.push_back(p);
      }
    emit(upos, commutant_system(ops, n, upos, eq));
  }
  return result;
}

AlgebraSpan commutant(const AlgebraSpan& alg, const std::vector<long>& grading,
                      bool grade_preserving_only) {
  std::vector<Mat> ops;
  ops.reserve(static_cast<std::size_t>(alg.dim()));
  for (long i = 0; i < alg.dim(); ++i) ops.push_back(alg.basis_mat(i));
  std::vector<Mat> c = commutant_basis(ops, grading, grade_preserving_only);
  if (c.empty()) {
    // The commutant always contains the identity; an empty kernel would mean
    // an empty unknown support, which cannot happen for square matrices.
    throw std::logic_error("commutant cannot be empty");
  }
  return span_from_closed_basis(c);
}

// --------------------------------------------------- specialized commutant

namespace {

struct QRowSpace {
  // Minimal echelon over QuadNum: rows with distinct pivots, pivot value 1,
  // no back-elimination (rank only).
  std::map<long, std::vector<std::pair<long, QuadNum>>> rows;  // pivot -> row

  bool add(std::vector<std::pair<long, QuadNum>> v) {
    while (!v.empty()) {
      long p = v.front().first;
      auto it = rows.find(p);
      if (it == rows.end()) {
        QuadNum lead = v.front().second;
        for (auto& [i, x] : v) x /= lead;
        rows.emplace(p, std::move(v));
        return true;
      }
      // v -= v[0] * rows[p]   (pivot value of rows[p] is 1)
      QuadNum f = v.front().second;
      std::vector<std::pair<long, QuadNum>> merged;
      merged.reserve(v.size() + it->second.size());
      std::size_t a = 0, b = 0;
      while (a < v.size() || b < it->second.size()) {
        if (b == it->second.size() ||
            (a < v.size() && v[a].first < it->second[b].first)) {
          merged.push_back(v[a++]);
        } else if (a == v.size() || it->second[b].first < v[a].first) {
          merged.emplace_back(it->second[b].first,
                              QuadNum(Rat(0)) - f * it->second[b].second);
          ++b;
        } else {
          QuadNum x = v[a].second - f * it->second[b].second;
          if (!(x == QuadNum(Rat(0)))) merged.emplace_back(v[a].first, x);
          ++a;
          ++b;
        }
      }
      v = std::move(merged);
    }
    return false;
  }
};

}  // namespace

long commutant_dim_bound_at_q(const std::vector<Mat>& ops, const Rat& q0,
                              const std::vector<long>& grading,
                              long stop_at_kernel_dim) {
  if (ops.empty()) throw std::invalid_argument("no operators");
  long n = ops.front().rows();
  std::vector<long> labels = grading;
  if (labels.empty()) labels.assign(static_cast<std::size_t>(n), 0);

  std::vector<long> uidx(static_cast<std::size_t>(n * n), -1);
  std::vector<long> upos;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (labels[static_cast<std::size_t>(i)] ==
          labels[static_cast<std::size_t>(j)]) {
        uidx[static_cast<std::size_t>(i * n + j)] =
            static_cast<long>(upos.size());
        upos.push_back(i * n + j);
      }
  const long nu = static_cast<long>(upos.size());

  // Specialize each operator once.
  struct QOp {
    std::vector<std::vector<std::pair<long, QuadNum>>> by_row, by_col;
  };
  std::vector<QOp> qops;
  for (const auto& m : ops) {
    QOp op;
    op.by_row.resize(static_cast<std::size_t>(n));
    op.by_col.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        const Scalar& s = m.at(i, j);
        if (s.is_zero()) continue;
        QuadNum x = s.eval_q(q0);
        if (x == QuadNum(Rat(0))) continue;
        op.by_row[static_cast<std::size_t>(i)].emplace_back(j, x);
        op.by_col[static_cast<std::size_t>(j)].emplace_back(i, x);
      }
    qops.push_back(std::move(op));
  }

  QRowSpace rs;
  long rank = 0;
  const long target_rank = nu - stop_at_kernel_dim;
  for (const auto& op : qops) {
    for (long r = 0; r < n; ++r) {
      for (long c = 0; c < n; ++c) {
        std::map<long, QuadNum> row;
        for (const auto& [k, a] : op.by_row[static_cast<std::size_t>(r)]) {
          long u = uidx[static_cast<std::size_t>(k * n + c)];
          if (u < 0) continue;
          auto [it, fresh] = row.emplace(u, a);
          if (!fresh) it->second += a;
        }
        for (const auto& [k, a] : op.by_col[static_cast<std::size_t>(c)]) {
          long u = uidx[static_cast<std::size_t>(r * n + k)];
          if (u < 0) continue;
          auto [it, fresh] = row.emplace(u, QuadNum(Rat(0)) - a);
          if (!fresh) it->second -= a;
        }
        std::vector<std::pair<long, QuadNum>> v;
        for (auto& [u, x] : row)
          if (!(x == QuadNum(Rat(0)))) v.emplace_back(u, std::move(x));
        if (v.empty()) continue;
        if (rs.add(std::move(v))) {
          ++rank;
          if (stop_at_kernel_dim > 0 && rank >= target_rank)
            return nu - rank;
        }
      }
    }
  }
  return nu - rank;
}

// ------------------------------------------------------ subspace wrappers

namespace {

Subspace subspace_from_rows(RowSpace rs, long ambient_dim) {
  // Canonical order: sort rows by pivot column.
  std::vector<std::size_t> order(rs.rows().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rs.pivots()[a] < rs.pivots()[b];
  });
  Subspace s;
  s.ambient_dim = ambient_dim;
  for (std::size_t i : order) {
    s.basis.push_back(rs.rows()[i]);
    s.pivots.push_back(rs.pivots()[i]);
  }
  return s;
}

}  // namespace

std::pair<Subspace, long> rref(const Mat& m) {
  RowSpace rs(false);
  for (long i = 0; i < m.rows(); ++i) {
    SpVec v;
    for (long j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) v.push(j, m.at(i, j));
    rs.add(v);
  }
  long rank = rs.dim();
  return {subspace_from_rows(std::move(rs), m.cols()), rank};
}

Subspace kernel(const Mat& m) {
  RowSpace rs(false);
  for (const Vec& v : kernel_basis(m)) rs.add(SpVec::from_dense(v));
  return subspace_from_rows(std::move(rs), m.cols());
}

Subspace trace_radical(const AlgebraSpan& alg) {
  const long d = alg.dim();
  std::vector<Mat> mats;
  mats.reserve(static_cast<std::size_t>(d));
  for (long i = 0; i < d; ++i) mats.push_back(alg.basis_mat(i));
  Mat gram(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j)
      gram.at(i, j) = trace_product(mats[static_cast<std::size_t>(i)],
                                    mats[static_cast<std::size_t>(j)]);
  return kernel(gram);
}

// ------------------------------------------------------------ rank probes

const std::vector<Rat>& probe_points() {
  static const std::vector<Rat> pts = {
      Rat(3, 2),  Rat(2),     Rat(5, 3), Rat(7, 4),  Rat(5, 2),
      Rat(8, 3),  Rat(9, 5),  Rat(11, 4), Rat(7, 2), Rat(13, 5)};
  return pts;
}

namespace {

Rat rat_pow(const Rat& x, long e) {
  Rat base = e >= 0 ? x : Rat(1) / x;
  unsigned long n = static_cast<unsigned long>(e >= 0 ? e : -e);
  Rat p(1);
  while (n) {
    if (n & 1) p *= base;
    base *= base;
    n >>= 1;
  }
  return p;
}

/// Parity-split evaluation: p(v) = e(q) + v * o(q) evaluated at q = q0 as
/// e(q0) + o(q0) * sqrt(q0), exact in Q(sqrt(q0)).
QuadNum laurent_eval_quad(const Laurent& p, const Rat& q0) {
  if (p.is_zero()) return QuadNum(Rat(0));
  Rat e(0), o(0);
  for (long k = p.lo(); k <= p.hi(); ++k) {
    const Rat& c = p.coeff(k);
    if (c == 0) continue;
    if (k % 2 == 0)
      e += c * rat_pow(q0, k / 2);
    else
      o += c * rat_pow(q0, (k - 1) / 2);
  }
  if (o == 0) return QuadNum(e);
  return QuadNum(e, o, q0);
}

QuadNum scalar_eval_quad(const Scalar& s, const Rat& q0) {
  if (!s.is_plain()) return s.eval_q(q0);  // folds a square discriminant
  const RatFunc& f = s.rat();
  QuadNum den = laurent_eval_quad(f.den(), q0);
  if (den == QuadNum(Rat(0)))
    throw std::domain_error("pole at probe point");
  return laurent_eval_quad(f.num(), q0) / den;
}

}  // namespace

QMat eval_at_q(const Mat& m, const Rat& q0) {
  if (q0 == 0) throw std::domain_error("probe point must be nonzero");
  QMat out(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) out.at(i, j) = scalar_eval_quad(m.at(i, j), q0);
  return out;
}

long rank_at_q(const Mat& m, const Rat& q0) { return eval_at_q(m, q0).rank(); }

long random_rank_probe(const Mat& m, long trials) {
  const auto& pts = probe_points();
  long best = -1;
  long used = 0;
  for (const Rat& q0 : pts) {
    if (used >= trials) break;
    try {
      best = std::max(best, rank_at_q(m, q0));
      ++used;
    } catch (const std::domain_error&) {
      // Pole at this point: skip it; it does not count as a trial.
    }
  }
  if (best < 0) throw std::domain_error("all probe points hit poles");
  return best;
}

}  // namespace nsq
