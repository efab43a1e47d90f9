#include "nsq/qrep.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "nsq/algebra.hpp"

namespace nsq {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("qrep verification failed: " + what);
}

long ipow(long base, long exp) {
  long r = 1;
  for (long k = 0; k < exp; ++k) r *= base;
  return r;
}

Scalar q_minus_qinv() { return Scalar::q_pow(1) - Scalar::q_pow(-1); }

/// Quantum integer [n] = (q^n - q^{-n}) / (q - q^{-1}) = sum_k q^{n-1-2k}.
Scalar q_int(long n) {
  Laurent s;
  for (long k = 0; k < n; ++k) s += Laurent(Rat(1), 2 * (n - 1 - 2 * k));
  return Scalar(RatFunc(s));
}

Scalar q_factorial(long n) {
  Scalar f = Scalar::one();
  for (long k = 2; k <= n; ++k) f *= q_int(k);
  return f;
}

/// tau: x (x) y |-> y (x) x on a d-dimensional factor.
Mat flip_matrix(long d) {
  Mat t(d * d, d * d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) t.at(j * d + i, i * d + j) = Scalar::one();
  return t;
}

/// The defining sl2-type relations for a (possibly composite) action.
void verify_action_relations(const SiteOps& s, const std::string& tag) {
  long n = s.E.rows();
  Mat id = Mat::identity(n);
  require(s.K * s.Kinv == id, tag + ": K K^{-1} = 1");
  require(s.K * s.E == (s.E * s.K).mul_scalar(Scalar::q_pow(2)),
          tag + ": K E K^{-1} = q^2 E");
  require(s.K * s.F == (s.F * s.K).mul_scalar(Scalar::q_pow(-2)),
          tag + ": K F K^{-1} = q^{-2} F");
  Mat lhs = s.E * s.F - s.F * s.E;
  Mat rhs = (s.K - s.Kinv).mul_scalar(q_minus_qinv().inv());
  require(lhs == rhs, tag + ": [E,F] = (K - K^{-1})/(q - q^{-1})");
}

std::vector<EigenInfo> single_eigen_candidates(long m) {
  // X (x) X splits into components j = 0..m with highest weight 2(m-j);
  // the braiding acts on component j by (-1)^j q^{a_j/2} with
  // a_j = 2(m-j)(m-j+1) - m(m+2), a Casimir difference.
  std::vector<EigenInfo> out;
  for (long j = 0; j <= m; ++j) {
    EigenInfo e;
    e.sign = (j % 2 == 0) ? 1 : -1;
    e.half_exp = 2 * (m - j) * (m - j + 1) - m * (m + 2);
    e.value = Scalar::v_pow(e.half_exp);
    if (e.sign < 0) e.value = -e.value;
    e.mult = 2 * (m - j) + 1;
    out.push_back(e);
  }
  return out;
}

/// Raw braiding matrix of X (x) X for a single irrep.
Mat rhat_matrix_single(const GL2Irrep& x) {
  long d = x.dim;
  long m = x.m1 - x.m2;
  // Truncated lowering-raising sum: theta = sum_{n=0}^{m} c_n F^n (x) E^n
  // with c_n = q^{n(n-1)/2} (q - q^{-1})^n / [n]!.  E^n vanishes past n = m.
  Mat theta(d * d, d * d);
  Mat fn = Mat::identity(d);
  Mat en = Mat::identity(d);
  for (long n = 0; n <= m; ++n) {
    if (n > 0) {
      fn = fn * x.F;
      en = en * x.E;
    }
    Scalar c = Scalar::v_pow(n * (n - 1)) * q_minus_qinv().pow(n) / q_factorial(n);
    theta = theta + Mat::kron(fn, en).mul_scalar(c);
  }
  // Cartan twist: x_i (x) x_j |-> q^{wt_i wt_j / 2} with wt_i = m - 2i.
  Mat twist(d * d, d * d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j)
      twist.at(i * d + j, i * d + j) = Scalar::v_pow((m - 2 * i) * (m - 2 * j));
  return flip_matrix(d) * (twist * theta);
}

/// Full verification of an assembled RHat (throws on any failure).
void verify_rhat(const RHat& r) {
  const Mat& m = r.matrix;
  long n = m.rows();
  Mat id = Mat::identity(n);
  require(n == r.dim_x * r.dim_x, r.desc + ": matrix size");

  // Distinct eigenvalues and total multiplicity.
  long total = 0;
  for (std::size_t a = 0; a < r.eigenvalues.size(); ++a) {
    total += r.eigenvalues[a].mult;
    for (std::size_t b = a + 1; b < r.eigenvalues.size(); ++b)
      require(!(r.eigenvalues[a].value == r.eigenvalues[b].value),
              r.desc + ": repeated eigenvalue");
  }
  require(total == n, r.desc + ": eigenvalue multiplicities sum to dim^2");

  // Annihilating polynomial and exact eigenspace dimensions.
  Mat ann = id;
  Scalar tr = Scalar::zero();
  for (const auto& e : r.eigenvalues) {
    require(e.value == (e.sign < 0 ? -Scalar::v_pow(e.half_exp)
                                   : Scalar::v_pow(e.half_exp)),
            r.desc + ": eigenvalue shape sign*q^{a/2}");
    Mat shifted = m - id.mul_scalar(e.value);
    ann = ann * shifted;
    require(kernel(shifted).dim() == e.mult,
            r.desc + ": exact eigenspace dimension");
    tr += Scalar(e.mult) * e.value;
  }
  require(ann.is_zero(), r.desc + ": annihilating polynomial");
  require(tr == m.trace(), r.desc + ": trace identity");

  // Braid relation on X^{(x)3}.
  Mat b1 = factor_action(m, 1, 3, r.dim_x);
  Mat b2 = factor_action(m, 2, 3, r.dim_x);
  require(b1 * b2 * b1 == b2 * b1 * b2, r.desc + ": braid relation");

  // Commutation with the diagonal quantum-group action on X (x) X.
  for (std::size_t g = 0; g < r.symmetry.size(); ++g) {
    SiteOps cop = coproduct_action(r.symmetry[g], 2);
    std::string tag = r.desc + ": commutes with factor " + std::to_string(g);
    require(m * cop.E == cop.E * m, tag + " E");
    require(m * cop.F == cop.F * m, tag + " F");
    require(m * cop.K == cop.K * m, tag + " K");
  }
}

/// Canonical associate of a Laurent polynomial: primitive integer
/// coefficients, positive trailing coefficient, lowest exponent 0.
Laurent canonical_poly(const Laurent& a) {
  Laurent p = a.primitive_part();
  p.shift(-p.lo());
  return p;
}

Laurent poly_lcm(const Laurent& a, const Laurent& b) {
  Laurent g = Laurent::gcd(a, b);
  return canonical_poly((a * b).div_exact(g));
}

}  // namespace

GL2Irrep build_irrep(long m1, long m2) {
  if (m1 < m2) throw std::invalid_argument("build_irrep: weight must have m1 >= m2");
  GL2Irrep x;
  x.m1 = m1;
  x.m2 = m2;
  long m = m1 - m2;
  long d = m + 1;
  x.dim = d;
  x.E = Mat(d, d);
  x.F = Mat(d, d);
  x.K1 = Mat(d, d);
  x.K2 = Mat(d, d);
  x.K1inv = Mat(d, d);
  x.K2inv = Mat(d, d);
  x.K = Mat(d, d);
  x.Kinv = Mat(d, d);
  for (long i = 0; i < d; ++i) {
    if (i + 1 < d) x.F.at(i + 1, i) = Scalar::one();
    if (i > 0) x.E.at(i - 1, i) = q_int(i) * q_int(m - i + 1);
    x.K1.at(i, i) = Scalar::q_pow(m1 - i);
    x.K2.at(i, i) = Scalar::q_pow(m2 + i);
    x.K1inv.at(i, i) = Scalar::q_pow(-(m1 - i));
    x.K2inv.at(i, i) = Scalar::q_pow(-(m2 + i));
    x.K.at(i, i) = Scalar::q_pow(m - 2 * i);
    x.Kinv.at(i, i) = Scalar::q_pow(-(m - 2 * i));
  }

  std::ostringstream tag;
  tag << "irrep(" << m1 << "," << m2 << ")";
  verify_action_relations(site_ops(x), tag.str());
  require(x.K1 * x.K2inv * x.K2 * x.K1inv == Mat::identity(d),
          tag.str() + ": K1, K2 invertible");
  require(x.K == x.K1 * x.K2inv, tag.str() + ": K = K1 K2^{-1}");
  require(x.K1 * x.E == (x.E * x.K1).mul_scalar(Scalar::q_pow(1)),
          tag.str() + ": K1 E K1^{-1} = q E");
  require(x.K2 * x.E == (x.E * x.K2).mul_scalar(Scalar::q_pow(-1)),
          tag.str() + ": K2 E K2^{-1} = q^{-1} E");
  require(x.K1 * x.F == (x.F * x.K1).mul_scalar(Scalar::q_pow(-1)),
          tag.str() + ": K1 F K1^{-1} = q^{-1} F");
  require(x.K2 * x.F == (x.F * x.K2).mul_scalar(Scalar::q_pow(1)),
          tag.str() + ": K2 F K2^{-1} = q F");
  require(x.K1 * x.K2 == Mat::identity(d).mul_scalar(Scalar::q_pow(m1 + m2)),
          tag.str() + ": K1 K2 acts by the central character");

  // Casimir F E + (q K + q^{-1} K^{-1}) / (q - q^{-1})^2 acts by the scalar
  // it takes on the highest weight vector.
  Scalar denom = q_minus_qinv().pow(2);
  Mat cas = x.F * x.E +
            (x.K.mul_scalar(Scalar::q_pow(1)) + x.Kinv.mul_scalar(Scalar::q_pow(-1)))
                .mul_scalar(denom.inv());
  Scalar expect = (Scalar::q_pow(m + 1) + Scalar::q_pow(-(m + 1))) / denom;
  require(cas == Mat::identity(d).mul_scalar(expect),
          tag.str() + ": Casimir acts by a scalar");
  return x;
}

SiteOps site_ops(const GL2Irrep& x) { return SiteOps{x.dim, x.E, x.F, x.K, x.Kinv}; }

std::vector<SiteOps> kronecker_site_ops(const GL2Irrep& v, const GL2Irrep& w) {
  Mat iv = Mat::identity(v.dim);
  Mat iw = Mat::identity(w.dim);
  SiteOps first{v.dim * w.dim, Mat::kron(v.E, iw), Mat::kron(v.F, iw),
                Mat::kron(v.K, iw), Mat::kron(v.Kinv, iw)};
  SiteOps second{v.dim * w.dim, Mat::kron(iv, w.E), Mat::kron(iv, w.F),
                 Mat::kron(iv, w.K), Mat::kron(iv, w.Kinv)};
  return {first, second};
}

SiteOps coproduct_action(const SiteOps& site, long r) {
  if (r < 1) throw std::invalid_argument("coproduct_action: r >= 1 required");
  long d = site.dim;
  long n = ipow(d, r);
  // Prefix tensor powers K^{(x)t} and (K^{-1})^{(x)t}.
  std::vector<Mat> kpow, kinvpow;
  kpow.reserve(static_cast<std::size_t>(r) + 1);
  kinvpow.reserve(static_cast<std::size_t>(r) + 1);
  kpow.push_back(Mat::identity(1));
  kinvpow.push_back(Mat::identity(1));
  for (long t = 1; t <= r; ++t) {
    kpow.push_back(Mat::kron(kpow.back(), site.K));
    kinvpow.push_back(Mat::kron(kinvpow.back(), site.Kinv));
  }
  Mat e(n, n), f(n, n);
  for (long i = 1; i <= r; ++i) {
    Mat left_e = Mat::kron(kpow[static_cast<std::size_t>(i - 1)], site.E);
    e = e + Mat::kron(left_e, Mat::identity(ipow(d, r - i)));
    Mat left_f = Mat::kron(Mat::identity(ipow(d, i - 1)), site.F);
    f = f + Mat::kron(left_f, kinvpow[static_cast<std::size_t>(r - i)]);
  }
  SiteOps out{n, std::move(e), std::move(f), kpow[static_cast<std::size_t>(r)],
              kinvpow[static_cast<std::size_t>(r)]};
  verify_action_relations(out, "coproduct_action(r=" + std::to_string(r) + ")");
  return out;
}

Mat middle_swap(long dim_v, long dim_w) {
  long dx = dim_v * dim_w;
  Mat s(dx * dx, dx * dx);
  for (long a = 0; a < dim_v; ++a)
    for (long b = 0; b < dim_w; ++b)
      for (long c = 0; c < dim_v; ++c)
        for (long d = 0; d < dim_w; ++d) {
          long from = (a * dim_w + b) * dx + (c * dim_w + d);
          long to = ((a * dim_v + c) * dim_w + b) * dim_w + d;
          s.at(to, from) = Scalar::one();
        }
  return s;
}

RHat build_rhat_single(const GL2Irrep& x) {
  RHat r;
  std::ostringstream d;
  d << "braiding single(" << x.m1 << "," << x.m2 << ")";
  r.desc = d.str();
  r.dim_x = x.dim;
  r.matrix = rhat_matrix_single(x);
  r.eigenvalues = single_eigen_candidates(x.m1 - x.m2);
  r.symmetry = {site_ops(x)};
  verify_rhat(r);
  return r;
}

RHat build_rhat_kronecker(const GL2Irrep& v, const GL2Irrep& w) {
  RHat r;
  std::ostringstream d;
  d << "braiding kronecker((" << v.m1 << "," << v.m2 << "),(" << w.m1 << ","
    << w.m2 << "))";
  r.desc = d.str();
  r.dim_x = v.dim * w.dim;

  Mat rv = rhat_matrix_single(v);
  Mat rw = rhat_matrix_single(w);
  Mat s = middle_swap(v.dim, w.dim);
  r.matrix = s.transpose() * Mat::kron(rv, rw) * s;

  // Eigenvalues multiply across the two factors; merge equal products and
  // list them by descending exponent as in the single case.
  std::map<std::pair<long, int>, long> merged;
  for (const auto& ev : single_eigen_candidates(v.m1 - v.m2))
    for (const auto& ew : single_eigen_candidates(w.m1 - w.m2))
      merged[{ev.half_exp + ew.half_exp, ev.sign * ew.sign}] += ev.mult * ew.mult;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    EigenInfo e;
    e.half_exp = it->first.first;
    e.sign = it->first.second;
    e.value = Scalar::v_pow(e.half_exp);
    if (e.sign < 0) e.value = -e.value;
    e.mult = it->second;
    r.eigenvalues.push_back(e);
  }

  r.symmetry = kronecker_site_ops(v, w);
  verify_rhat(r);
  return r;
}

ProjectorPair spectral_projectors(const RHat& r, Scaling scaling) {
  const Mat& m = r.matrix;
  long n = m.rows();
  Mat id = Mat::identity(n);
  for (std::size_t a = 0; a < r.eigenvalues.size(); ++a)
    for (std::size_t b = a + 1; b < r.eigenvalues.size(); ++b)
      if (r.eigenvalues[a].value == r.eigenvalues[b].value)
        throw std::invalid_argument("spectral_projectors: repeated eigenvalue");

  ProjectorPair pp;
  pp.scaling = scaling;
  pp.P = Mat(n, n);
  pp.Q = Mat(n, n);
  pp.f_p = Scalar::one();
  pp.f_q = Scalar::one();
  for (const auto& lam : r.eigenvalues) {
    Mat interp = id;
    Scalar denom = Scalar::one();
    for (const auto& mu : r.eigenvalues) {
      if (mu.value == lam.value) continue;
      interp = interp * (m - id.mul_scalar(mu.value));
      denom *= lam.value - mu.value;
    }
    interp = interp.mul_scalar(denom.inv());
    require(interp.trace() == Scalar(lam.mult),
            r.desc + ": interpolant trace equals multiplicity");
    if (lam.sign > 0) {
      pp.P = pp.P + interp;
      pp.f_p *= denom;
    } else {
      pp.Q = pp.Q + interp;
      pp.f_q *= denom;
    }
  }

  require(pp.P + pp.Q == id, r.desc + ": P + Q = I");
  require(pp.P * pp.P == pp.P, r.desc + ": P idempotent");
  require(pp.Q * pp.Q == pp.Q, r.desc + ": Q idempotent");
  require((pp.P * pp.Q).is_zero(), r.desc + ": P Q = 0");
  require((pp.Q * pp.P).is_zero(), r.desc + ": Q P = 0");
  require(pp.P * m == m * pp.P, r.desc + ": P commutes with the braiding");
  for (const auto& g : r.symmetry) {
    SiteOps cop = coproduct_action(g, 2);
    require(pp.P * cop.E == cop.E * pp.P && pp.P * cop.F == cop.F * pp.P &&
                pp.P * cop.K == cop.K * pp.P,
            r.desc + ": P commutes with the quantum-group action");
  }

  // Legacy common factor: least common multiple of the entry denominators
  // of P and Q, recentered so the exponent window is symmetric about 0
  // (bar-invariant whenever the lcm is palindromic).
  Laurent l = Laurent::one();
  for (const Mat* mat : {&pp.P, &pp.Q})
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        const Scalar& e = mat->at(i, j);
        if (!e.is_zero()) l = poly_lcm(l, e.rat().den());
      }
  l.shift(-((l.lo() + l.hi()) / 2));
  pp.f = Scalar(RatFunc(l));

  const Scalar& fp = scaling == Scaling::legacy ? pp.f : pp.f_p;
  const Scalar& fq = scaling == Scaling::legacy ? pp.f : pp.f_q;
  pp.calP = pp.P.mul_scalar(fp);
  pp.calQ = pp.Q.mul_scalar(fq);
  if (scaling == Scaling::legacy) {
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        require(pp.calP.at(i, j).rat().is_polynomial() &&
                    pp.calQ.at(i, j).rat().is_polynomial(),
                r.desc + ": legacy rescaled entries are Laurent polynomials");
  }
  return pp;
}

Mat factor_action(const Mat& op, long i, long r, long dim_x) {
  if (i < 1 || i >= r)
    throw std::invalid_argument("factor_action: position must satisfy 1 <= i < r");
  if (op.rows() != dim_x * dim_x || op.cols() != dim_x * dim_x)
    throw std::invalid_argument("factor_action: operator must act on X (x) X");
  Mat left = Mat::identity(ipow(dim_x, i - 1));
  Mat right = Mat::identity(ipow(dim_x, r - 1 - i));
  return Mat::kron(left, Mat::kron(op, right));
}

}  // namespace nsq
