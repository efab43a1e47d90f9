#include "nsq/scalar.hpp"

#include <ostream>
#include <sstream>

namespace nsq {

// ---------------------------------------------------------------- QuadNum

QuadNum::QuadNum(Rat a, Rat b, Rat d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (b_ == 0) d_ = 0;
  if (d_ == 0 && b_ != 0)
    throw std::invalid_argument("quadratic number with zero discriminant");
}

static void quad_check(const QuadNum& x, const QuadNum& y, Rat& d) {
  if (x.b() == 0)
    d = y.d();
  else if (y.b() == 0)
    d = x.d();
  else if (x.d() == y.d())
    d = x.d();
  else
    throw std::invalid_argument("incompatible quadratic discriminants");
}

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
  Rat d;
  quad_check(x, y, d);
  return QuadNum(x.a() + y.a(), x.b() + y.b(), d);
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) { return x + (-y); }

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
  Rat d;
  quad_check(x, y, d);
  return QuadNum(x.a() * y.a() + x.b() * y.b() * d,
                 x.a() * y.b() + x.b() * y.a(), d);
}

QuadNum QuadNum::inv() const {
  Rat n = a_ * a_ - b_ * b_ * d_;
  if (n == 0) throw std::domain_error("division by zero quadratic number");
  return QuadNum(a_ / n, -b_ / n, d_);
}

QuadNum operator/(const QuadNum& x, const QuadNum& y) { return x * y.inv(); }

bool QuadNum::operator==(const QuadNum& o) const {
  if (a_ != o.a_ || b_ != o.b_) return false;
  return b_ == 0 || d_ == o.d_;
}

std::string QuadNum::str() const {
  std::ostringstream os;
  if (b_ == 0) return a_.get_str();
  os << a_.get_str() << " + " << b_.get_str() << "*sqrt(" << d_.get_str()
     << ")";
  return os.str();
}

// ----------------------------------------------------------------- Scalar

Scalar::Scalar(RatFunc a, RatFunc b, ExtPtr ctx)
    : a_(std::move(a)), b_(std::move(b)), ctx_(std::move(ctx)) {
  if (!b_.is_zero() && ctx_ == nullptr)
    throw std::invalid_argument("extension part without extension context");
  if (b_.is_zero()) ctx_ = nullptr;
}

const RatFunc& Scalar::rat() const {
  if (!is_plain())
    throw std::domain_error("scalar has a quadratic-extension part");
  return a_;
}

void Scalar::check_compatible(const Scalar& x, const Scalar& y) {
  if (x.ctx_ == nullptr || y.ctx_ == nullptr) return;
  if (x.ctx_ == y.ctx_ || x.ctx_->D == y.ctx_->D) return;
  throw std::invalid_argument("incompatible quadratic extension contexts");
}

Scalar Scalar::operator-() const { return Scalar(-a_, -b_, ctx_); }

Scalar operator+(const Scalar& x, const Scalar& y) {
  Scalar::check_compatible(x, y);
  return Scalar(x.a_ + y.a_, x.b_ + y.b_, x.ctx_ ? x.ctx_ : y.ctx_);
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  Scalar::check_compatible(x, y);
  ExtPtr ctx = x.ctx_ ? x.ctx_ : y.ctx_;
  if (ctx == nullptr) return Scalar(x.a_ * y.a_);
  const RatFunc& D = ctx->D;
  return Scalar(x.a_ * y.a_ + x.b_ * y.b_ * D, x.a_ * y.b_ + x.b_ * y.a_,
                ctx);
}

Scalar Scalar::inv() const {
  if (is_plain()) {
    if (a_.is_zero()) throw std::domain_error("division by zero scalar");
    return Scalar(a_.inv());
  }
  RatFunc n = a_ * a_ - b_ * b_ * ctx_->D;
  if (n.is_zero())
    throw std::domain_error("scalar is a zero divisor (discriminant is a square)");
  return Scalar(a_ / n, -(b_ / n), ctx_);
}

Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

Scalar Scalar::pow(long n) const {
  Scalar base = *this;
  if (n < 0) {
    base = inv();
    n = -n;
  }
  Scalar r = Scalar::one();
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_plain() != o.is_plain()) return false;
  if (is_plain()) return a_ == o.a_;
  check_compatible(*this, o);
  return a_ == o.a_ && b_ == o.b_;
}

Scalar Scalar::bar() const {
  if (is_plain()) return Scalar(a_.bar());
  if (!(ctx_->D.bar() == ctx_->D))
    throw std::domain_error(
        "bar involution undefined: extension discriminant is not "
        "bar-invariant");
  return Scalar(a_.bar(), b_.bar(), ctx_);
}

Scalar Scalar::conj() const {
  if (is_plain()) return *this;
  return Scalar(a_, -b_, ctx_);
}

QuadNum Scalar::eval_q(const Rat& q0) const {
  if (is_plain()) return QuadNum(a_.eval_q(q0));
  Rat d = ctx_->D.eval_q(q0);
  Rat bb = b_.eval_q(q0);
  if (d == 0 || bb == 0) return QuadNum(a_.eval_q(q0) /* + b*0 or b* sqrt0 */);
  // Fold a perfect-square d into the rational part.
  Rat dn = d;
  dn.canonicalize();
  mpz_class num = dn.get_num(), den = dn.get_den();
  if (num > 0 && mpz_perfect_square_p(num.get_mpz_t()) &&
      mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return QuadNum(a_.eval_q(q0) + bb * Rat(sn, sd));
  }
  return QuadNum(a_.eval_q(q0), bb, d);
}

QuadNum Scalar::eval_v(const Rat& v0) const {
  if (is_plain()) return QuadNum(a_.eval_v(v0));
  Rat q0 = v0 * v0;
  Rat d = ctx_->D.eval_v(v0);
  Rat bb = b_.eval_v(v0);
  if (d == 0 || bb == 0) return QuadNum(a_.eval_v(v0));
  Rat dn = d;
  dn.canonicalize();
  mpz_class num = dn.get_num(), den = dn.get_den();
  if (num > 0 && mpz_perfect_square_p(num.get_mpz_t()) &&
      mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return QuadNum(a_.eval_v(v0) + bb * Rat(sn, sd));
  }
  return QuadNum(a_.eval_v(v0), bb, d);
}

namespace {

// Expand a rational function around q = 1 as (valuation, unit power series
// of the given precision): f = t^{val} * unit with unit(0) != 0, t = q - 1.
std::pair<long, Series> ratfunc_local(const RatFunc& f, long prec) {
  long vn = f.num().val_at_one();
  long vd = f.den().is_one() ? 0 : f.den().val_at_one();
  // Strip the (v-1)-adic parts: (q-1) = (v-1)(v+1), and (v+1) is a unit at
  // q = 1, so (v-1)-valuation equals (q-1)-valuation.
  Laurent nu = f.num().div_v_minus_one(vn);
  Laurent de = f.den().div_v_minus_one(vd);
  Series sn = Series::expand_laurent(nu, prec);
  Series sd = Series::expand_laurent(de, prec);
  Series unit = sn / sd;
  long val = vn - vd;
  // We stripped (v-1)^val but the expansion variable is t = q - 1 =
  // (v-1)(v+1), so compensate by (v+1)^{-val} (a unit at q = 1).
  if (val != 0) {
    Series w =
        Series::expand_laurent(Laurent::v_pow(1) + Laurent::one(), prec);
    Series wp = Series::constant(Rat(1), prec);
    for (long i = 0; i < (val > 0 ? val : -val); ++i) wp = wp * w;
    unit = val > 0 ? unit / wp : unit * wp;
  }
  return {val, unit};
}

}  // namespace

long Scalar::q1_valuation() const {
  if (is_plain()) return a_.q1_valuation();
  if (b_.is_zero()) return a_.q1_valuation();
  const RatFunc& D = ctx_->D;
  if (D.is_zero()) throw std::domain_error("zero extension discriminant");
  if (D.q1_valuation() != 0)
    throw std::domain_error(
        "valuation at q = 1 needs a discriminant that is a unit at q = 1");
  {
    Rat d1 = D.eval_q(Rat(1));
    Rat dn = d1;
    dn.canonicalize();
    mpz_class num = dn.get_num(), den = dn.get_den();
    if (num <= 0 || !mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
      throw std::domain_error(
          "valuation at q = 1 needs D(1) to be a positive rational square");
  }
  // norm = a^2 - b^2 D is plain; val(a + b x) + val(a - b x) = val(norm),
  // and val(a - b x) >= min(val a, val b), so val(a + b x) is bounded by
  // val(norm) - min(val a, val b).  Expand to that precision and read off.
  RatFunc norm = a_ * a_ - b_ * b_ * D;
  long va = a_.is_zero() ? 0 : a_.q1_valuation();
  long vb = b_.q1_valuation();
  long m = a_.is_zero() ? vb : std::min(va, vb);
  if (norm.is_zero())
    throw std::domain_error("scalar is a zero divisor (norm vanishes)");
  long bound = norm.q1_valuation() - m;  // >= actual valuation - m
  long prec = bound - m + 2;
  if (prec < 2) prec = 2;
  auto [sa_val, sa] =
      a_.is_zero() ? std::pair<long, Series>{0, Series::constant(Rat(0), prec)}
                   : ratfunc_local(a_, prec);
  auto [sb_val, sb] = ratfunc_local(b_, prec);
  auto [sd_val, sd] = ratfunc_local(D, prec);
  (void)sd_val;
  Series sqrtD = sd.sqrt();
  // Align a and b*sqrt(D) to the common shift m.
  auto shift_up = [&](Series s, long by) {
    Series r = Series::constant(Rat(0), prec);
    for (long i = 0; i + by < prec; ++i) r[i + by] = s[i];
    return r;
  };
  Series total = Series::constant(Rat(0), prec);
  if (!a_.is_zero()) total = total + shift_up(sa, sa_val - m);
  total = total + shift_up(sb * sqrtD, sb_val - m);
  long v = total.valuation();
  if (v == prec)
    throw std::domain_error("valuation precision exhausted (internal error)");
  return m + v;
}

Series Scalar::q1_series(long prec) const {
  if (prec <= 0) return Series::constant(Rat(0), 0);
  if (is_zero()) return Series::constant(Rat(0), prec);
  if (q1_valuation() < 0)
    throw std::domain_error("series expansion at a pole of q = 1");
  if (is_plain()) {
    auto [val, unit] = ratfunc_local(a_, prec);
    Series r = Series::constant(Rat(0), prec);
    for (long i = 0; i + val < prec; ++i) r[i + val] = unit[i];
    return r;
  }
  // The x part may cancel a pole of the plain part, so expand both around a
  // common downward shift t^m (m <= 0) and read the tail back off.
  long va = a_.is_zero() ? 0 : a_.q1_valuation();
  long vb = b_.q1_valuation();
  long m = std::min(a_.is_zero() ? vb : std::min(va, vb), 0L);
  long wide = prec - m;
  auto [sa_val, sa] =
      a_.is_zero()
          ? std::pair<long, Series>{0, Series::constant(Rat(0), wide)}
          : ratfunc_local(a_, wide);
  auto [sb_val, sb] = ratfunc_local(b_, wide);
  auto [sd_val, sd] = ratfunc_local(ctx_->D, wide);
  (void)sd_val;
  Series sqrtD = sd.sqrt();
  auto shift_up = [&](const Series& s, long by) {
    Series r = Series::constant(Rat(0), wide);
    for (long i = 0; i + by < wide; ++i) r[i + by] = s[i];
    return r;
  };
  Series total = Series::constant(Rat(0), wide);
  if (!a_.is_zero()) total = total + shift_up(sa, sa_val - m);
  total = total + shift_up(sb * sqrtD, sb_val - m);
  Series r = Series::constant(Rat(0), prec);
  for (long j = 0; j < prec; ++j) r[j] = total[j - m];
  return r;
}

Rat Scalar::q1_limit() const {
  if (is_zero()) return Rat(0);
  long v = q1_valuation();
  if (v < 0) throw std::domain_error("limit at a pole of q = 1");
  if (v > 0) return Rat(0);
  return q1_series(1)[0];
}

std::string Scalar::str() const {
  if (is_plain()) return a_.str();
  std::ostringstream os;
  os << "(" << a_.str() << ") + (" << b_.str() << ")*x";
  return os.str();
}

std::size_t Scalar::hash() const {
  std::size_t h = a_.hash();
  if (!is_plain()) h ^= b_.hash() * 0x9e3779b97f4a7c15ULL + 1;
  return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

}  // namespace nsq
