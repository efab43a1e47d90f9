#include "nsq/nonstd.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "nsq/laurent.hpp"
#include "nsq/ratfunc.hpp"

namespace nsq {

namespace {

std::string canonical_case(const std::string& name) {
  if (name == "gl2_cubic" || name == "ex1") return "gl2_cubic";
  if (name == "kronecker" || name == "ex2") return "kronecker";
  throw std::invalid_argument("unknown construction case: " + name);
}

long checked_power(long base, long exp, long cap) {
  long v = 1;
  for (long k = 0; k < exp; ++k) {
    if (v > cap / base)
      throw std::length_error("dim X^r = " + std::to_string(base) + "^" +
                              std::to_string(exp) + " exceeds cap " +
                              std::to_string(cap));
    v *= base;
  }
  return v;
}

/// Base-dim_x digits of a tensor index, position 1 first.
std::vector<long> tensor_digits(long idx, long dim_x, long r) {
  std::vector<long> d(static_cast<std::size_t>(r));
  for (long j = r - 1; j >= 0; --j) {
    d[static_cast<std::size_t>(j)] = idx % dim_x;
    idx /= dim_x;
  }
  return d;
}

/// Conserved weight label per tensor basis index.  For the single case the
/// label is the total weight sum_j (3 - 2 d_j); for the Kronecker case it
/// injectively encodes the pair of factor weights.
std::vector<long> weight_labels(const std::string& cname, long r, long dim_x,
                                long dim) {
  std::vector<long> g(static_cast<std::size_t>(dim));
  for (long idx = 0; idx < dim; ++idx) {
    std::vector<long> d = tensor_digits(idx, dim_x, r);
    if (cname == "gl2_cubic") {
      long w = 0;
      for (long dj : d) w += 3 - 2 * dj;
      g[static_cast<std::size_t>(idx)] = w;
    } else {
      long wv = 0, ww = 0;
      for (long dj : d) {
        wv += 1 - 2 * (dj >> 1);
        ww += 1 - 2 * (dj & 1);
      }
      g[static_cast<std::size_t>(idx)] = (wv + 2 * r) * (4 * r + 1) + ww + 2 * r;
    }
  }
  return g;
}

/// Exact checks of the defining generator identities on X^{(x) r}.
void verify_generator_identities(const ProjectorFamily& fam) {
  auto amb = MatrixAmbient(fam.dim);
  std::vector<SpVec> p, q;
  p.reserve(fam.calP.size());
  q.reserve(fam.calQ.size());
  for (const Mat& m : fam.calP) p.push_back(SpVec::flatten(m));
  for (const Mat& m : fam.calQ) q.push_back(SpVec::flatten(m));
  SpVec unit = amb.unit();
  long n = static_cast<long>(q.size());
  for (long i = 0; i < n; ++i) {
    if (!(amb.mul(q[i], q[i]) == q[i].scaled(fam.q_factor)))
      throw std::logic_error("Q generator is not a scaled idempotent");
    if (!(amb.mul(p[i], p[i]) == p[i].scaled(fam.p_factor)))
      throw std::logic_error("P generator is not a scaled idempotent");
    // Affine split: calP_i / p_factor + calQ_i / q_factor = 1.
    SpVec split = SpVec::axpy(q[i].scaled(fam.q_factor.inv()),
                              fam.p_factor.inv(), p[i]);
    if (!(split == unit))
      throw std::logic_error("P/Q do not split the identity");
    for (long j = i + 2; j < n; ++j) {
      if (!(amb.mul(q[i], q[j]) == amb.mul(q[j], q[i])) ||
          !(amb.mul(p[i], p[j]) == amb.mul(p[j], p[i])))
        throw std::logic_error("distant generators do not commute");
    }
    // Label conservation.
    for (const Mat* m : {&fam.calP[static_cast<std::size_t>(i)],
                         &fam.calQ[static_cast<std::size_t>(i)]}) {
      for (long a = 0; a < fam.dim; ++a)
        for (long b = 0; b < fam.dim; ++b)
          if (!m->at(a, b).is_zero() &&
              fam.grading[static_cast<std::size_t>(a)] !=
                  fam.grading[static_cast<std::size_t>(b)])
            throw std::logic_error("generator does not conserve the grading");
    }
  }
}

/// Index of the Coxeter generator s_i in the group's element list.
long simple_index(const SymmetricGroup& g, int i) { return g.right_gen(0, i); }

/// Shuffle table on tensor indices: idx on X^{(x) r} (X = V (x) W, both
/// 2-dimensional)  ->  xV * 2^r + xW on V^{(x) r} (x) W^{(x) r}.
std::vector<long> factor_shuffle(long r) {
  long dim = checked_power(4, r, 1L << 62);
  std::vector<long> sh(static_cast<std::size_t>(dim));
  for (long idx = 0; idx < dim; ++idx) {
    long xv = 0, xw = 0;
    for (long dj : tensor_digits(idx, 4, r)) {
      xv = 2 * xv + (dj >> 1);
      xw = 2 * xw + (dj & 1);
    }
    sh[static_cast<std::size_t>(idx)] = (xv << r) + xw;
  }
  return sh;
}

/// Build the Hecke-pair realization of the Kronecker family and verify that
/// it maps onto the matrix generators under pair_action.
void attach_pair_realization(ProjectorFamily& fam) {
  auto hecke = std::make_shared<HeckeAlgebra>(fam.r, Scalar::q_pow(2));
  auto hh = std::make_shared<HeckePairAmbient>(hecke);
  long n = hecke->dim();

  // rho_V(T_{s_i}) = v^3 * braiding of the 2-dimensional factor at (i, i+1);
  // its eigenvalues q^2 and -1 match the Hecke parameter p = q^2.
  GL2Irrep two = build_irrep(1, 0);
  RHat rv = build_rhat_single(two);
  std::vector<Mat> gen_images;
  for (long i = 1; i < fam.r; ++i) {
    Mat t = factor_action(rv.matrix, i, fam.r, 2);
    t = t.mul_scalar(Scalar::v_pow(3));
    gen_images.push_back(std::move(t));
  }
  auto rep = std::make_shared<std::vector<Mat>>(hecke->representation(gen_images));

  // Qhat_i = (A_i - q^4)(A_i - 1) / (q^2 (q^2+1)^2) with A_i = T_i (x) T_i:
  // the Lagrange projector onto the -q^2 eigenvalue of A_i, whose image on
  // X^{(x) r} is the negative-sign eigenspace of the braiding at (i, i+1).
  Scalar one = Scalar::one();
  Scalar q4 = Scalar::q_pow(4);
  Scalar denom = Scalar::q_pow(2) * (Scalar::q_pow(2) + one).pow(2);
  for (long i = 1; i < fam.r; ++i) {
    long si = simple_index(hecke->group(), static_cast<int>(i));
    SpVec a;
    a.push(si * n + si, one);
    SpVec a2 = hh->mul(a, a);
    SpVec t = SpVec::axpy(a2, -(q4 + one), a);
    t = SpVec::axpy(t, q4, hh->unit());
    SpVec qhat = t.scaled(denom.inv());
    fam.hh_calQ.push_back(qhat.scaled(fam.q_factor));
    fam.hh_calP.push_back(
        SpVec::axpy(hh->unit(), -one, qhat).scaled(fam.p_factor));
  }

  fam.hecke = hecke;
  fam.hh = hh;
  fam.rep_v = rep;
  fam.rep_w = rep;  // V and W are the same 2-dimensional module

  for (long i = 0; i < fam.r - 1; ++i) {
    if (!(pair_action(fam, fam.hh_calQ[static_cast<std::size_t>(i)]) ==
          fam.calQ[static_cast<std::size_t>(i)]) ||
        !(pair_action(fam, fam.hh_calP[static_cast<std::size_t>(i)]) ==
          fam.calP[static_cast<std::size_t>(i)]))
      throw std::logic_error(
          "pair realization does not act as the matrix generators");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Probe-guided word-algebra engine.
//
// Exact echelon over the ambient coordinates is correct but far too slow
// here: fully reduced rows fill with rational functions whose numerators
// and denominators are wide Laurent polynomials, and every insertion pays
// polynomial-gcd costs on hundreds of entries.  The engine instead makes
// accept/reject decisions by rank over the rationals at a probe point
// q = q0 and then certifies every claim symbolically, so nothing rests on
// the probe alone:
//   * a word accepted at q0 is independent outright, because specializing
//     q can only lower rank;
//   * a word rejected at q0 gets candidate coordinates solved from the
//     square system on the probe-pivot coordinates — invertible at q0
//     since the reduced probe rows are the identity there, hence
//     invertible over the rational functions — and the candidate is then
//     verified as an exact polynomial identity after clearing
//     denominators.  A failed verification means the probe point
//     under-reported the rank, and the whole search restarts at the next
//     probe point (which the verification makes safe, not just likely).
// Dependent words whose parent is itself dependent never touch the ambient
// algebra: their exact coordinates propagate from the verified columns.
// ---------------------------------------------------------------------------
namespace worddetail {

/// Evaluation data for one (family, flavor): the defining ambient algebra,
/// generator coordinates, and the idempotent scaling factor.
struct EvalContext {
  AmbientPtr amb;
  std::vector<SpVec> gens;
  Scalar idem;
};

EvalContext eval_context(const ProjectorFamily& fam, Flavor flavor) {
  EvalContext ctx;
  ctx.idem = fam.idem_factor(flavor);
  if (fam.has_abstract()) {
    ctx.amb = fam.hh;
    ctx.gens = fam.hh_gens(flavor);
  } else {
    ctx.amb = std::make_shared<MatrixAmbient>(fam.dim);
    for (const Mat& g : fam.gens(flavor)) ctx.gens.push_back(SpVec::flatten(g));
  }
  return ctx;
}

/// Ambient value of a word, reusing memoized prefixes (the memo must hold
/// the empty word on entry).
const SpVec& prefix_value(const EvalContext& ctx,
                          std::map<std::string, SpVec>& memo,
                          const std::string& w) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  const SpVec& parent = prefix_value(ctx, memo, w.substr(0, w.size() - 1));
  SpVec v = ctx.amb->mul(parent,
                         ctx.gens[static_cast<std::size_t>(w.back() - '1')]);
  return memo.emplace(w, std::move(v)).first->second;
}

/// Thrown when a probe point is caught under-reporting the rank; the
/// driver retries with the next probe point.
struct ProbeRetry : std::runtime_error {
  explicit ProbeRetry(const std::string& what) : std::runtime_error(what) {}
};

Rat probe_scalar(const Scalar& s, const Rat& q0) {
  QuadNum x = s.eval_q(q0);
  if (!x.is_rational())
    throw std::logic_error("probe evaluation left the rationals");
  return x.a();
}

SpVec probe_vec(const SpVec& v, const Rat& q0) {
  SpVec out;
  for (const SpEntry& e : v.entries()) {
    Rat c = probe_scalar(e.val, q0);
    if (c != 0) out.push(e.idx, Scalar(c));
  }
  return out;
}

/// Dense exact LU with row pivoting (first nonzero), for the square system
/// on the probe-pivot coordinates.
class LuSolver {
 public:
  explicit LuSolver(std::vector<std::vector<Scalar>> m) : lu_(std::move(m)) {
    n_ = static_cast<long>(lu_.size());
    perm_.resize(static_cast<std::size_t>(n_));
    std::iota(perm_.begin(), perm_.end(), 0L);
    for (long k = 0; k < n_; ++k) {
      long hit = -1;
      for (long r = k; r < n_; ++r)
        if (!at(r, k).is_zero()) {
          hit = r;
          break;
        }
      if (hit < 0)
        throw std::logic_error("pivot-coordinate system is singular");
      std::swap(perm_[static_cast<std::size_t>(k)],
                perm_[static_cast<std::size_t>(hit)]);
      const Scalar piv = at(k, k);
      for (long i = k + 1; i < n_; ++i) {
        Scalar& m_ik = at(i, k);
        if (m_ik.is_zero()) continue;
        Scalar f = m_ik / piv;
        for (long j = k + 1; j < n_; ++j)
          if (!at(k, j).is_zero()) at(i, j) -= f * at(k, j);
        m_ik = std::move(f);
      }
    }
  }

  std::vector<Scalar> solve(const std::vector<Scalar>& rhs) const {
    std::vector<Scalar> y(static_cast<std::size_t>(n_));
    for (long i = 0; i < n_; ++i) {
      Scalar s = rhs[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])];
      for (long j = 0; j < i; ++j)
        if (!at(i, j).is_zero() && !y[static_cast<std::size_t>(j)].is_zero())
          s -= at(i, j) * y[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = std::move(s);
    }
    std::vector<Scalar> x(static_cast<std::size_t>(n_));
    for (long i = n_ - 1; i >= 0; --i) {
      Scalar s = std::move(y[static_cast<std::size_t>(i)]);
      for (long j = i + 1; j < n_; ++j)
        if (!at(i, j).is_zero() && !x[static_cast<std::size_t>(j)].is_zero())
          s -= at(i, j) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] = s / at(i, i);
    }
    return x;
  }

 private:
  const Scalar& at(long i, long j) const {
    return lu_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])]
              [static_cast<std::size_t>(j)];
  }
  Scalar& at(long i, long j) {
    return lu_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])]
              [static_cast<std::size_t>(j)];
  }
  long n_ = 0;
  std::vector<std::vector<Scalar>> lu_;
  std::vector<long> perm_;
};

/// Exact check that v == sum_b c[b] * vals[b].  When everything is plain,
/// the combination is multiplied through by the least common denominator of
/// the coefficients first, so the vector arithmetic runs on Laurent
/// polynomials and skips gcd-heavy rational reduction.
bool combination_matches(const SpVec& v, const std::vector<Scalar>& c,
                         const std::vector<SpVec>& vals) {
  bool plain = true;
  for (const Scalar& s : c)
    if (!s.is_plain()) plain = false;
  if (!plain) {
    SpVec acc;
    for (std::size_t b = 0; b < c.size(); ++b)
      if (!c[b].is_zero()) acc = SpVec::axpy(acc, c[b], vals[b]);
    return acc == v;
  }
  Laurent den = Laurent(Rat(1));
  for (const Scalar& s : c) {
    if (s.is_zero()) continue;
    const Laurent& d = s.rat().den();
    if (d.is_one()) continue;
    den = den * d.div_exact(Laurent::gcd(den, d));
  }
  Scalar dens(den);
  SpVec acc;
  for (std::size_t b = 0; b < c.size(); ++b) {
    if (c[b].is_zero()) continue;
    acc = SpVec::axpy(acc, c[b] * dens, vals[b]);
  }
  return acc == v.scaled(dens);
}

/// Search state and certified results; also the backing store for
/// WordAlgebra.
struct Engine {
  EvalContext ctx;
  std::vector<std::string> basis;  ///< accepted words, (length, lex)
  std::vector<SpVec> basis_vals;
  std::unordered_map<std::string, long> basis_index;
  std::vector<long> pivots;  ///< probe pivot coordinate of each basis row
  std::shared_ptr<const LuSolver> solver;
  /// Exact coordinates over basis of every processed word (unit vectors
  /// for the basis words themselves; full length for dependents).
  std::unordered_map<std::string, std::vector<Scalar>> coords;
  std::vector<std::string> dep_words;  ///< dependent words, (length, lex)
  /// Dependent words whose combination was verified by the exact ambient
  /// identity (the directly-reached ones).
  std::set<std::string> verified;
  bool saturated = false;
};

Engine run_engine_at(const ProjectorFamily& fam, Flavor flavor, long max_len,
                     bool adaptive, long max_dim, const Rat& q0) {
  Engine out;
  out.ctx = eval_context(fam, flavor);
  long n_gens = fam.r - 1;

  RowSpace probe;  // accept/reject decisions only; combos are solved exactly
  struct Pending {
    std::string word;
    SpVec value;
    long basis_at;  ///< basis size when the word was reached
  };
  std::vector<Pending> direct;          // dependents with an accepted parent
  std::vector<std::string> propagated;  // dependents with a dependent parent

  {
    SpVec unit = out.ctx.amb->unit();
    probe.add(probe_vec(unit, q0));
    out.basis.push_back("");
    out.basis_vals.push_back(std::move(unit));
    out.basis_index[""] = 0;
  }

  std::vector<std::string> level{""};
  for (long len = 1; adaptive || len <= max_len; ++len) {
    if (adaptive && len > 64)
      throw std::logic_error("word algebra failed to close by level 64");
    std::vector<std::string> words;
    for (const std::string& u : level)
      for (long g = 1; g <= n_gens; ++g) {
        char c = static_cast<char>('0' + g);
        if (u.empty() || u.back() != c) words.push_back(u + c);
      }
    if (words.empty()) {
      out.saturated = true;
      break;
    }
    long accepted_before = probe.dim();
    for (const std::string& w : words) {
      std::string u = w.substr(0, w.size() - 1);
      auto it = out.basis_index.find(u);
      if (it == out.basis_index.end()) {
        propagated.push_back(w);
        continue;
      }
      SpVec val = out.ctx.amb->mul(
          out.basis_vals[static_cast<std::size_t>(it->second)],
          out.ctx.gens[static_cast<std::size_t>(w.back() - '1')]);
      if (probe.add(probe_vec(val, q0)).independent) {
        long k = static_cast<long>(out.basis.size());
        if (adaptive && k + 1 > max_dim) throw DimensionExceeded(max_dim);
        out.basis.push_back(w);
        out.basis_vals.push_back(std::move(val));
        out.basis_index[w] = k;
      } else {
        direct.push_back(
            {w, std::move(val), static_cast<long>(out.basis.size())});
      }
    }
    if (probe.dim() == accepted_before) {
      // A whole level of dependents closes the span under right
      // multiplication by the generators, hence it is the entire algebra;
      // in closure mode there is nothing further to discover.
      out.saturated = true;
      if (adaptive) break;
    }
    level = std::move(words);
  }

  for (std::size_t k = 0; k < out.basis.size(); ++k) {
    std::vector<Scalar> c(k + 1);
    c[k] = Scalar::one();
    out.coords[out.basis[k]] = std::move(c);
  }

  // Exact coordinates for the directly-reached dependents.
  out.pivots = probe.pivots();
  const long n = static_cast<long>(out.basis.size());
  {
    std::vector<std::vector<Scalar>> m(
        static_cast<std::size_t>(n),
        std::vector<Scalar>(static_cast<std::size_t>(n)));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            out.basis_vals[static_cast<std::size_t>(j)].at(out.pivots[static_cast<std::size_t>(i)]);
    out.solver = std::make_shared<LuSolver>(std::move(m));
  }
  for (Pending& p : direct) {
    std::vector<Scalar> rhs(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
      rhs[static_cast<std::size_t>(i)] =
          p.value.at(out.pivots[static_cast<std::size_t>(i)]);
    std::vector<Scalar> c = out.solver->solve(rhs);
    // A genuine dependence can only involve words reached earlier.
    for (std::size_t b = static_cast<std::size_t>(p.basis_at); b < c.size();
         ++b)
      if (!c[b].is_zero())
        throw ProbeRetry("dependence reaches past the probe rank at " +
                         p.word);
    if (!combination_matches(p.value, c, out.basis_vals))
      throw ProbeRetry("probe under-reported the rank at " + p.word);
    out.coords[p.word] = std::move(c);
    out.dep_words.push_back(p.word);
    out.verified.insert(p.word);
  }

  // Words whose parent is itself dependent: with c_u the parent's exact
  // coordinates, value(w) = sum_b c_u[b] * (value(b) * g), and value(b) * g
  // is either idem * value(b) (when b ends in the same letter, by the
  // scaled idempotency) or the value of the word b+g, whose exact verified
  // coordinates are already known — so coordinates propagate exactly
  // without ambient products.
  for (const std::string& w : propagated) {
    const std::string u = w.substr(0, w.size() - 1);
    char gc = w.back();
    const std::vector<Scalar>& cu = out.coords.at(u);
    std::vector<Scalar> c(out.basis.size(), Scalar::zero());
    for (std::size_t b = 0; b < cu.size(); ++b) {
      if (cu[b].is_zero()) continue;
      const std::string& bw = out.basis[b];
      if (!bw.empty() && bw.back() == gc) {
        c[b] += cu[b] * out.ctx.idem;
      } else {
        const std::vector<Scalar>& cb = out.coords.at(bw + gc);
        for (std::size_t j = 0; j < cb.size(); ++j)
          if (!cb[j].is_zero()) c[j] += cu[b] * cb[j];
      }
    }
    out.coords[w] = std::move(c);
    out.dep_words.push_back(w);
  }

  std::sort(out.dep_words.begin(), out.dep_words.end(),
            [](const std::string& a, const std::string& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  return out;
}

Engine run_engine(const ProjectorFamily& fam, Flavor flavor, long max_len,
                  bool adaptive, long max_dim) {
  for (const Rat& q0 : probe_points()) {
    try {
      return run_engine_at(fam, flavor, max_len, adaptive, max_dim, q0);
    } catch (const ProbeRetry&) {
      // Try the next probe point; the verification step keeps this safe.
    }
  }
  throw std::logic_error("no probe point certified the word-algebra search");
}

}  // namespace worddetail

ProjectorFamily build_family(const std::string& case_name, long r,
                             Scaling scaling, long cap_dim) {
  if (r < 2) throw std::invalid_argument("tensor power must be >= 2");
  ProjectorFamily fam;
  fam.case_name = canonical_case(case_name);
  fam.r = r;
  fam.scaling = scaling;
  if (fam.case_name == "gl2_cubic") {
    GL2Irrep x = build_irrep(3, 0);
    fam.dim_x = x.dim;
    fam.rhat = build_rhat_single(x);
  } else {
    GL2Irrep v = build_irrep(1, 0);
    GL2Irrep w = build_irrep(1, 0);
    fam.dim_x = v.dim * w.dim;
    fam.rhat = build_rhat_kronecker(v, w);
  }
  fam.dim = checked_power(fam.dim_x, r, cap_dim);
  fam.pair = spectral_projectors(fam.rhat, scaling);
  fam.p_factor = scaling == Scaling::legacy ? fam.pair.f : fam.pair.f_p;
  fam.q_factor = scaling == Scaling::legacy ? fam.pair.f : fam.pair.f_q;
  for (long i = 1; i < r; ++i) {
    fam.calP.push_back(factor_action(fam.pair.calP, i, r, fam.dim_x));
    fam.calQ.push_back(factor_action(fam.pair.calQ, i, r, fam.dim_x));
  }
  fam.grading = weight_labels(fam.case_name, r, fam.dim_x, fam.dim);
  verify_generator_identities(fam);
  if (fam.case_name == "kronecker") attach_pair_realization(fam);
  return fam;
}

std::vector<std::string> alternating_words(long n_gens, long max_len) {
  if (n_gens < 1 || n_gens > 9)
    throw std::invalid_argument("need between 1 and 9 generators");
  std::vector<std::string> all{""};
  std::vector<std::string> level{""};
  for (long len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const std::string& w : level)
      for (long g = 1; g <= n_gens; ++g) {
        char c = static_cast<char>('0' + g);
        if (w.empty() || w.back() != c) next.push_back(w + c);
      }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

Mat word_value(const ProjectorFamily& fam, Flavor flavor,
               const std::string& word) {
  const std::vector<Mat>& gens = fam.gens(flavor);
  Mat v = Mat::identity(fam.dim);
  for (char c : word) {
    long g = c - '1';
    if (g < 0 || g >= static_cast<long>(gens.size()))
      throw std::invalid_argument("word letter out of range: " + word);
    v = v * gens[static_cast<std::size_t>(g)];
  }
  return v;
}

Mat pair_action(const ProjectorFamily& fam, const SpVec& x) {
  if (!fam.has_abstract())
    throw std::logic_error("pair_action needs the Hecke pair realization");
  long n = fam.hecke->dim();
  long half = 1L << fam.r;
  std::vector<long> sh = factor_shuffle(fam.r);
  std::vector<long> inv(sh.size());
  for (std::size_t i = 0; i < sh.size(); ++i)
    inv[static_cast<std::size_t>(sh[i])] = static_cast<long>(i);
  Mat out(fam.dim, fam.dim);
  for (const SpEntry& e : x.entries()) {
    const Mat& a = (*fam.rep_v)[static_cast<std::size_t>(e.idx / n)];
    const Mat& b = (*fam.rep_w)[static_cast<std::size_t>(e.idx % n)];
    for (long i1 = 0; i1 < half; ++i1)
      for (long j1 = 0; j1 < half; ++j1) {
        if (a.at(i1, j1).is_zero()) continue;
        Scalar ca = e.val * a.at(i1, j1);
        for (long i2 = 0; i2 < half; ++i2)
          for (long j2 = 0; j2 < half; ++j2) {
            if (b.at(i2, j2).is_zero()) continue;
            long row = inv[static_cast<std::size_t>((i1 << fam.r) + i2)];
            long col = inv[static_cast<std::size_t>((j1 << fam.r) + j2)];
            out.at(row, col) += ca * b.at(i2, j2);
          }
      }
  }
  return out;
}

Scalar Relation::coeff(const std::string& word) const {
  for (const RelationTerm& t : terms)
    if (t.word == word) return t.coeff;
  return Scalar::zero();
}

RelationSearch find_relations(const ProjectorFamily& fam, Flavor flavor,
                              long max_len) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  worddetail::Engine eng = worddetail::run_engine(fam, flavor, max_len,
                                                  /*adaptive=*/false, 0);

  RelationSearch out;
  out.flavor = flavor;
  out.scaling = fam.scaling;
  out.saturated = eng.saturated;
  out.basis_words = eng.basis;
  for (const std::string& w : eng.dep_words) {
    const std::vector<Scalar>& combo = eng.coords.at(w);
    Relation rel;
    rel.flavor = flavor;
    rel.scaling = fam.scaling;
    for (std::size_t b = 0; b < combo.size(); ++b)
      if (!combo[b].is_zero()) rel.terms.push_back({eng.basis[b], -combo[b]});
    rel.terms.push_back({w, Scalar::one()});
    out.relations.push_back(std::move(rel));
  }

  // The directly-reached dependents were verified during the search.  The
  // propagated ones are exact by construction; still re-certify a
  // deterministic sample of them (and every small relation) by direct
  // ambient evaluation, seeding the prefix memo with the stored basis
  // values so only the pivot chains need new products.
  std::map<std::string, SpVec> memo;
  for (std::size_t b = 0; b < eng.basis.size(); ++b)
    memo[eng.basis[b]] = eng.basis_vals[b];
  for (std::size_t k = 0; k < out.relations.size(); ++k) {
    const Relation& rel = out.relations[k];
    if (eng.verified.count(rel.pivot())) continue;
    if (k % 16 != 0 && rel.terms.size() > 30) continue;
    SpVec acc;
    for (const RelationTerm& t : rel.terms)
      acc = SpVec::axpy(acc, t.coeff,
                        worddetail::prefix_value(eng.ctx, memo, t.word));
    if (!acc.is_zero())
      throw std::logic_error("relation failed exact re-evaluation: " +
                             rel.pivot());
  }
  return out;
}

/// Backing store for WordAlgebra: the engine results plus derived
/// multiplication data.
struct WordAlgebraImpl {
  worddetail::Engine eng;
  long n_gens = 0;
  std::vector<Mat> rmuls;  ///< per generator, over the basis
  /// Word-tree children of each basis word: (basis index, generator).
  std::vector<std::vector<std::pair<long, int>>> children;
};

WordAlgebra algebra(const ProjectorFamily& fam, Flavor flavor, long max_dim) {
  auto impl = std::make_shared<WordAlgebraImpl>();
  impl->eng = worddetail::run_engine(fam, flavor, 0, /*adaptive=*/true,
                                     max_dim);
  impl->n_gens = fam.r - 1;
  const worddetail::Engine& eng = impl->eng;
  const long n = static_cast<long>(eng.basis.size());
  for (long g = 0; g < impl->n_gens; ++g) {
    char gc = static_cast<char>('1' + g);
    Mat m(n, n);
    for (long j = 0; j < n; ++j) {
      const std::string& bw = eng.basis[static_cast<std::size_t>(j)];
      if (!bw.empty() && bw.back() == gc) {
        m.at(j, j) = eng.ctx.idem;
      } else {
        const std::vector<Scalar>& c = eng.coords.at(bw + gc);
        for (std::size_t i = 0; i < c.size(); ++i)
          if (!c[i].is_zero()) m.at(static_cast<long>(i), j) = c[i];
      }
    }
    impl->rmuls.push_back(std::move(m));
  }
  impl->children.resize(static_cast<std::size_t>(n));
  for (long i = 1; i < n; ++i) {
    const std::string& w = eng.basis[static_cast<std::size_t>(i)];
    long parent = eng.basis_index.at(w.substr(0, w.size() - 1));
    impl->children[static_cast<std::size_t>(parent)].emplace_back(
        i, w.back() - '1');
  }
  return WordAlgebra(std::move(impl));
}

WordAlgebra::WordAlgebra(std::shared_ptr<WordAlgebraImpl> impl)
    : impl_(std::move(impl)) {}

long WordAlgebra::dim() const {
  return static_cast<long>(impl_->eng.basis.size());
}

const AmbientPtr& WordAlgebra::ambient() const { return impl_->eng.ctx.amb; }

long WordAlgebra::n_gens() const { return impl_->n_gens; }

const std::vector<std::string>& WordAlgebra::basis_words() const {
  return impl_->eng.basis;
}

const SpVec& WordAlgebra::basis_value(long i) const {
  return impl_->eng.basis_vals.at(static_cast<std::size_t>(i));
}

bool WordAlgebra::saturated() const { return impl_->eng.saturated; }

std::optional<std::vector<Scalar>> WordAlgebra::express(const SpVec& v) const {
  const worddetail::Engine& eng = impl_->eng;
  const long n = dim();
  std::vector<Scalar> rhs(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    rhs[static_cast<std::size_t>(i)] =
        v.at(eng.pivots[static_cast<std::size_t>(i)]);
  std::vector<Scalar> c = eng.solver->solve(rhs);
  if (!worddetail::combination_matches(v, c, eng.basis_vals))
    return std::nullopt;
  return c;
}

bool WordAlgebra::contains(const SpVec& v) const {
  return express(v).has_value();
}

SpVec WordAlgebra::element(const std::vector<Scalar>& coords) const {
  if (static_cast<long>(coords.size()) > dim())
    throw std::invalid_argument("coordinate vector longer than the basis");
  SpVec acc;
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (!coords[j].is_zero())
      acc = SpVec::axpy(acc, coords[j], impl_->eng.basis_vals[j]);
  return acc;
}

const Mat& WordAlgebra::rmul(long g) const {
  return impl_->rmuls.at(static_cast<std::size_t>(g));
}

std::vector<Scalar> WordAlgebra::mul_coords(
    const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
  const long n = dim();
  if (static_cast<long>(x.size()) > n || static_cast<long>(y.size()) > n)
    throw std::invalid_argument("coordinate vector longer than the basis");
  std::vector<Scalar> out(static_cast<std::size_t>(n), Scalar::zero());
  // Basis words are prefix-closed, so x * basis[j] is computed for every j
  // in one walk of the word tree, reusing the parent's coordinates.
  std::vector<std::pair<long, std::vector<Scalar>>> stack;
  {
    std::vector<Scalar> x0 = x;
    x0.resize(static_cast<std::size_t>(n), Scalar::zero());
    stack.emplace_back(0, std::move(x0));
  }
  while (!stack.empty()) {
    auto [j, cur] = std::move(stack.back());
    stack.pop_back();
    if (j < static_cast<long>(y.size()) &&
        !y[static_cast<std::size_t>(j)].is_zero()) {
      const Scalar& yj = y[static_cast<std::size_t>(j)];
      for (long i = 0; i < n; ++i)
        if (!cur[static_cast<std::size_t>(i)].is_zero())
          out[static_cast<std::size_t>(i)] +=
              yj * cur[static_cast<std::size_t>(i)];
    }
    for (const auto& [child, g] : impl_->children[static_cast<std::size_t>(j)]) {
      const Mat& r = impl_->rmuls[static_cast<std::size_t>(g)];
      std::vector<Scalar> next(static_cast<std::size_t>(n), Scalar::zero());
      for (long col = 0; col < n; ++col) {
        const Scalar& xc = cur[static_cast<std::size_t>(col)];
        if (xc.is_zero()) continue;
        for (long row = 0; row < n; ++row) {
          const Scalar& rc = r.at(row, col);
          if (!rc.is_zero()) next[static_cast<std::size_t>(row)] += rc * xc;
        }
      }
      stack.emplace_back(child, std::move(next));
    }
  }
  return out;
}

void certify_relation(const ProjectorFamily& fam, const Relation& rel) {
  if (rel.scaling != fam.scaling)
    throw std::invalid_argument("relation and family scalings differ");
  worddetail::EvalContext ctx = worddetail::eval_context(fam, rel.flavor);
  std::map<std::string, SpVec> memo;
  memo[""] = ctx.amb->unit();
  SpVec acc;
  for (const RelationTerm& t : rel.terms)
    acc = SpVec::axpy(acc, t.coeff, worddetail::prefix_value(ctx, memo, t.word));
  if (!acc.is_zero())
    throw std::logic_error("relation failed exact re-evaluation: " +
                           rel.pivot());
}

RescaledRelation rescale_relation(const Relation& rel,
                                  const ProjectorFamily& fam) {
  if (rel.scaling != Scaling::legacy)
    throw std::invalid_argument("rescaling starts from the legacy scaling");
  if (fam.case_name != "gl2_cubic" || fam.scaling != Scaling::legacy)
    throw std::invalid_argument(
        "the rescaling chain is specific to the legacy gl2_cubic family");
  ProjectorPair formal = spectral_projectors(fam.rhat, Scaling::formal);
  const Scalar& f_side = rel.flavor == Flavor::Q ? formal.f_q : formal.f_p;
  Scalar qm1 = Scalar::q_pow(1) - Scalar::one();
  Scalar pole = -Scalar::q_pow(1) / (qm1 * qm1);  // -q/(q-1)^2
  Scalar fhat = pole * f_side / fam.pair.f;
  Scalar unpole = pole.inv();  // -(q-1)^2/q

  RescaledRelation out;
  out.flavor = rel.flavor;
  out.pivot = rel.pivot();
  out.fhat = fhat;
  long big = static_cast<long>(out.pivot.size());
  for (const RelationTerm& t : rel.terms) {
    long drop = big - static_cast<long>(t.word.size());
    RescaledTerm rt;
    rt.word = t.word;
    rt.legacy = t.coeff;
    rt.bar = fhat.pow(drop) * t.coeff;
    rt.formal = unpole.pow(drop) * rt.bar;
    Scalar hf = fhat;
    if (rel.flavor == Flavor::Q && t.word == "121212121") hf = fhat * fhat;
    if (rel.flavor == Flavor::P && (t.word.empty() || t.word == "2"))
      hf = pole * pole;
    rt.hat = hf * t.coeff;
    out.terms.push_back(std::move(rt));
  }
  return out;
}

Relation formal_relation(const RescaledRelation& r) {
  Relation out;
  out.flavor = r.flavor;
  out.scaling = Scaling::formal;
  for (const RescaledTerm& t : r.terms) out.terms.push_back({t.word, t.formal});
  return out;
}

namespace {

/// Recentre a palindromic Laurent polynomial: coefficients from the center
/// slot outward over the support stride, sign-normalized so the first
/// entry is positive.
std::vector<Rat> centered_half_vector(const Scalar& s, const std::string& word) {
  if (!s.is_plain() || !s.rat().is_polynomial())
    throw std::domain_error("coefficient of '" + word +
                            "' is not a Laurent polynomial");
  const Laurent& p = s.rat().num();
  if (p.is_zero())
    throw std::domain_error("coefficient of '" + word + "' is zero");
  long lo = p.lo(), hi = p.hi();
  for (long t = 0; lo + t <= hi; ++t)
    if (!(p.coeff(lo + t) == p.coeff(hi - t)))
      throw std::domain_error("coefficient of '" + word +
                              "' is not palindromic");
  long stride = 0;
  long prev = lo;
  for (long k = lo + 1; k <= hi; ++k)
    if (!(p.coeff(k) == Rat(0))) {
      stride = std::gcd(stride, k - prev);
      prev = k;
    }
  if (stride == 0) stride = 1;
  long slots = (hi - lo) / stride + 1;
  std::vector<Rat> vec;
  vec.reserve(static_cast<std::size_t>(slots - slots / 2));
  for (long j = slots / 2; j < slots; ++j) vec.push_back(p.coeff(lo + j * stride));
  if (vec.front() < 0)
    for (Rat& c : vec) c = -c;
  return vec;
}

void classify(PositivityRow& row) {
  const std::vector<Rat>& v = row.vec;
  row.positive = std::all_of(v.begin(), v.end(),
                             [](const Rat& c) { return c > 0; });
  row.nonincreasing = true;
  for (std::size_t k = 0; k + 1 < v.size(); ++k)
    if (v[k] < v[k + 1]) row.nonincreasing = false;
  // Positive nonincreasing prefix, then an all-<= 0 tail.
  std::size_t t = 0;
  while (t < v.size() && v[t] > 0) ++t;
  bool ok = true;
  for (std::size_t k = 0; k + 1 < t; ++k)
    if (v[k] < v[k + 1]) ok = false;
  for (std::size_t k = t; k < v.size(); ++k)
    if (v[k] > 0) ok = false;
  row.unimodal_except_tail = ok;
}

}  // namespace

PositivityReport positivity_report(const RescaledRelation& rel) {
  PositivityReport out;
  out.flavor = rel.flavor;
  for (const RescaledTerm& t : rel.terms) {
    if (t.word == rel.pivot) continue;
    std::vector<Rat> vec = centered_half_vector(t.hat, t.word);
    // Mirror-image words often carry the same coefficient exactly; the
    // terms arrive in (length, lex) order, so the first word of each
    // distinct vector names the row and the rest become aliases.
    bool merged = false;
    for (PositivityRow& row : out.rows)
      if (row.vec == vec) {
        row.aliases.push_back(t.word);
        merged = true;
        break;
      }
    if (merged) continue;
    PositivityRow row;
    row.word = t.word;
    row.vec = std::move(vec);
    classify(row);
    out.rows.push_back(std::move(row));
  }
  for (const PositivityRow& row : out.rows)
    if (!(row.positive && row.nonincreasing)) out.exceptions.push_back(row.word);
  return out;
}

namespace {

Scalar stretch_q(const Scalar& s) {
  const RatFunc& r = s.rat();
  return Scalar(RatFunc(r.num().stretch2(), r.den().stretch2()));
}

}  // namespace

AlignmentResult align_relation(const Relation& rel,
                               const std::map<std::string, Scalar>& table) {
  AlignmentResult out;
  std::set<std::string> ours, theirs;
  for (const RelationTerm& t : rel.terms) ours.insert(t.word);
  for (const auto& [w, c] : table) theirs.insert(w);
  if (ours != theirs) {
    for (const std::string& w : ours)
      if (!theirs.count(w)) out.notes.push_back("missing from table: '" + w + "'");
    for (const std::string& w : theirs)
      if (!ours.count(w)) out.notes.push_back("extra in table: '" + w + "'");
    if (out.notes.size() > 12) out.notes.resize(12);
    out.notes.insert(out.notes.begin(), "support mismatch");
    return out;
  }

  const std::string& piv = rel.pivot();
  long big = static_cast<long>(piv.size());
  static const char* kSubNames[3] = {"q", "table q->q^2", "ours q->q^2"};
  std::vector<std::string> best_notes;
  for (int sub = 0; sub < 3; ++sub) {
    auto table_coeff = [&](const std::string& w) {
      const Scalar& c = table.at(w);
      return sub == 1 ? stretch_q(c) : c;
    };
    auto our_coeff = [&](const std::string& w) {
      Scalar c = rel.coeff(w);
      return sub == 2 ? stretch_q(c) : c;
    };
    Scalar tp = table_coeff(piv);
    if (tp.is_zero()) continue;
    // Solve the gauge from a word one letter shorter than the pivot.
    Scalar mu;
    bool have_mu = false;
    for (const RelationTerm& t : rel.terms)
      if (static_cast<long>(t.word.size()) == big - 1) {
        Scalar ours_c = our_coeff(t.word);
        Scalar theirs_c = table_coeff(t.word);
        if (ours_c.is_zero() || theirs_c.is_zero()) continue;
        mu = ours_c * tp / theirs_c;
        have_mu = true;
        break;
      }
    if (!have_mu) {
      best_notes = {"no word of pivot length - 1 to solve the gauge"};
      continue;
    }
    std::vector<std::string> bad;
    for (const RelationTerm& t : rel.terms) {
      long drop = big - static_cast<long>(t.word.size());
      if (!(our_coeff(t.word) * tp == table_coeff(t.word) * mu.pow(drop)))
        bad.push_back(t.word);
    }
    if (bad.empty()) {
      out.matched = true;
      out.substitution = kSubNames[sub];
      out.gauge = mu;
      out.notes.clear();
      return out;
    }
    std::vector<std::string> notes;
    notes.push_back(std::string("substitution ") + kSubNames[sub] + ": " +
                    std::to_string(bad.size()) + " coefficient mismatches");
    for (std::size_t k = 0; k < bad.size() && k < 4; ++k)
      notes.push_back("  mismatch at '" + bad[k] + "'");
    if (best_notes.empty() || notes.size() < best_notes.size())
      best_notes = std::move(notes);
  }
  out.notes = best_notes;
  return out;
}

}  // namespace nsq
