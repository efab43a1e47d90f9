#include "nsq/series.hpp"

#include <stdexcept>

namespace nsq {

long Series::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<long>(i);
  return prec();
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Series operator+(const Series& a, const Series& b) {
  long n = std::min(a.prec(), b.prec());
  Series r = Series::constant(Rat(0), n);
  for (long i = 0; i < n; ++i) r[i] = a[i] + b[i];
  return r;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  long n = std::min(a.prec(), b.prec());
  Series r = Series::constant(Rat(0), n);
  for (long i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; i + j < n; ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

Series operator/(const Series& a, const Series& b) {
  long vb = b.valuation();
  if (vb == b.prec()) throw std::domain_error("series division by zero");
  long va = a.valuation();
  if (va < vb)
    throw std::domain_error("series division with negative-valuation quotient");
  // Shift both down by vb, then divide unit series.
  long n = std::min(a.prec(), b.prec()) - vb;
  Series r = Series::constant(Rat(0), n);
  std::vector<Rat> rem(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) rem[static_cast<std::size_t>(i)] = a[i + vb];
  for (long i = 0; i < n; ++i) {
    Rat q = rem[static_cast<std::size_t>(i)] / b[vb];
    r[i] = q;
    if (q != 0)
      for (long j = 0; i + j < n; ++j)
        rem[static_cast<std::size_t>(i + j)] -= q * b[vb + j];
  }
  return r;
}

Series Series::mul_scalar(const Rat& s) const {
  Series r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

Series Series::sqrt() const {
  if (prec() == 0) return *this;
  const Rat& a0 = c_[0];
  if (a0 == 0) throw std::domain_error("series sqrt with zero constant term");
  // Rational square root of the constant term.
  Rat a0c = a0;
  a0c.canonicalize();
  mpz_class num = a0c.get_num(), den = a0c.get_den();
  if (num < 0 || mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
      mpz_perfect_square_p(den.get_mpz_t()) == 0)
    throw std::domain_error("series sqrt: constant term is not a rational square");
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  long n = prec();
  Series r = Series::constant(Rat(sn, sd), n);
  // Newton: r <- (r + this/r)/2, doubling correct terms each pass.
  for (long correct = 1; correct < n; correct *= 2) {
    Series q = *this / r;
    r = (r + q).mul_scalar(Rat(1, 2));
  }
  return r;
}

Series Series::expand_laurent(const Laurent& p, long prec) {
  Series acc = Series::constant(Rat(0), prec);
  if (p.is_zero() || prec <= 0) return acc;
  // sqrt(1+t) as a series: binomial coefficients (1/2 choose k).
  Series sq = Series::constant(Rat(0), prec);
  {
    Rat coef(1);
    sq[0] = coef;
    Rat half(1, 2);
    for (long k = 1; k < prec; ++k) {
      // (1/2 - (k-1)) / k factor
      coef *= (half - Rat(k - 1)) / Rat(k);
      sq[k] = coef;
    }
  }
  Series sq_inv = Series::constant(Rat(1), prec) / sq;
  // v^e for e from p.lo() to p.hi(); iterate multiplicatively.
  Series vpow = Series::constant(Rat(1), prec);
  long e = 0;
  const Laurent& q = p;
  // Raise to p.lo() first.
  while (e > q.lo()) {
    vpow = vpow * sq_inv;
    --e;
  }
  while (e < q.lo()) {
    vpow = vpow * sq;
    ++e;
  }
  for (; e <= q.hi(); ++e, vpow = vpow * sq) {
    const Rat& c = q.coeff(e);
    if (c != 0) acc = acc + vpow.mul_scalar(c);
  }
  return acc;
}

}  // namespace nsq
