#include "nsq/ratfunc.hpp"

#include <ostream>
#include <stdexcept>

namespace nsq {

void RatFunc::normalize() {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  if (num_.is_zero()) {
    den_ = Laurent::one();
    return;
  }
  // Fold the denominator's unit v^k and rational content into num.
  long k = den_.lo();
  den_.shift(-k);
  num_.shift(-k);
  Rat dc = den_.content();
  den_.mul_scalar(Rat(1) / dc);
  num_.mul_scalar(Rat(1) / dc);
  if (den_.is_one()) return;
  Laurent g = Laurent::gcd(num_, den_);
  if (!g.is_one() && !g.is_zero()) {
    num_ = num_.div_exact(g);
    den_ = den_.div_exact(g);
  }
  // gcd may reintroduce a content/unit on den; re-pin.
  long k2 = den_.lo();
  if (k2 != 0) {
    den_.shift(-k2);
    num_.shift(-k2);
  }
  Rat dc2 = den_.content();
  if (dc2 != 1) {
    den_.mul_scalar(Rat(1) / dc2);
    num_.mul_scalar(Rat(1) / dc2);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  // Cross-reduce first to keep intermediate products small.
  Laurent g1 = Laurent::gcd(a.num_, b.den_);
  Laurent g2 = Laurent::gcd(b.num_, a.den_);
  Laurent n1 = g1.is_one() ? a.num_ : a.num_.div_exact(g1);
  Laurent d2 = g1.is_one() ? b.den_ : b.den_.div_exact(g1);
  Laurent n2 = g2.is_one() ? b.num_ : b.num_.div_exact(g2);
  Laurent d1 = g2.is_one() ? a.den_ : a.den_.div_exact(g2);
  return RatFunc(n1 * n2, d1 * d2);
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw std::domain_error("RatFunc::inv of zero");
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

RatFunc RatFunc::bar() const {
  if (is_zero()) return RatFunc();
  return RatFunc(num_.bar(), den_.bar());
}

Rat RatFunc::eval_q(const Rat& q0) const {
  Rat d = den_.eval_q(q0);
  if (d == 0) throw std::domain_error("RatFunc::eval_q: pole at q0");
  return num_.eval_q(q0) / d;
}

Rat RatFunc::eval_v(const Rat& v0) const {
  Rat d = den_.eval_v(v0);
  if (d == 0) throw std::domain_error("RatFunc::eval_v: pole at v0");
  return num_.eval_v(v0) / d;
}

long RatFunc::q1_valuation() const {
  if (is_zero()) throw std::domain_error("RatFunc::q1_valuation of zero");
  return num_.val_at_one() - den_.val_at_one();
}

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::size_t RatFunc::hash() const {
  return num_.hash() * 1099511628211u + den_.hash();
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) {
  return os << f.str();
}

}  // namespace nsq
