#pragma once

/// \file scalar.hpp
/// The scalar type for all exact linear algebra: an element of Q(q^{1/2}) or
/// of a quadratic extension Q(q^{1/2})[x]/(x^2 - D).  Plain values carry no
/// extension context; extension values share one context object, and mixing
/// values from different contexts is an error.  An extension value whose x
/// part vanishes demotes to a plain value, so equality is value equality.

#include <memory>
#include <stdexcept>
#include <string>

#include "nsq/ratfunc.hpp"
#include "nsq/series.hpp"

namespace nsq {

/// A quadratic extension of the rational-function field: x^2 = D.
struct ExtContext {
  RatFunc D;
  explicit ExtContext(RatFunc d) : D(std::move(d)) {}
};
using ExtPtr = std::shared_ptr<const ExtContext>;

/// Exact number a + b*sqrt(d) with rational a, b, d — the result type of
/// specializing a scalar at a rational point.  Values with b == 0 are plain
/// rationals and compare across any d; otherwise d must match.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(Rat a) : a_(std::move(a)) {}  // NOLINT: implicit by design
  QuadNum(Rat a, Rat b, Rat d);

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Rat& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadNum operator-() const { return QuadNum(-a_, -b_, d_); }
  friend QuadNum operator+(const QuadNum& x, const QuadNum& y);
  friend QuadNum operator-(const QuadNum& x, const QuadNum& y);
  friend QuadNum operator*(const QuadNum& x, const QuadNum& y);
  friend QuadNum operator/(const QuadNum& x, const QuadNum& y);
  QuadNum& operator+=(const QuadNum& o) { return *this = *this + o; }
  QuadNum& operator-=(const QuadNum& o) { return *this = *this - o; }
  QuadNum& operator*=(const QuadNum& o) { return *this = *this * o; }
  QuadNum& operator/=(const QuadNum& o) { return *this = *this / o; }
  QuadNum inv() const;

  bool operator==(const QuadNum& o) const;

  std::string str() const;

 private:
  Rat a_{0}, b_{0}, d_{0};
};

/// Field scalar: plain rational function, or a + b*x with x^2 = D.
class Scalar {
 public:
  Scalar() = default;
  Scalar(RatFunc a) : a_(std::move(a)) {}  // NOLINT: implicit by design
  Scalar(Laurent a) : a_(std::move(a)) {}  // NOLINT: implicit by design
  explicit Scalar(const Rat& c) : a_(RatFunc(c)) {}
  explicit Scalar(long n) : a_(RatFunc(n)) {}
  /// a + b*x in the given extension; demotes to plain when b == 0.
  Scalar(RatFunc a, RatFunc b, ExtPtr ctx);

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar q_pow(long n) { return Scalar(RatFunc::q_pow(n)); }
  static Scalar v_pow(long k) { return Scalar(RatFunc::v_pow(k)); }
  /// The extension generator x itself.
  static Scalar ext_gen(ExtPtr ctx) {
    return Scalar(RatFunc::zero(), RatFunc::one(), std::move(ctx));
  }

  bool is_plain() const { return ctx_ == nullptr; }
  bool is_zero() const { return is_plain() && a_.is_zero(); }
  bool is_one() const { return is_plain() && a_.is_one(); }
  /// Rational-function part (the whole value when plain).
  const RatFunc& a() const { return a_; }
  /// Coefficient of x (zero when plain).
  const RatFunc& b() const { return b_; }
  const ExtPtr& ext() const { return ctx_; }
  /// The whole value as a rational function; throws when an x part is present.
  const RatFunc& rat() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar inv() const;
  /// Integer power (binary), negative exponents via inv().
  Scalar pow(long n) const;

  bool operator==(const Scalar& o) const;

  /// Bar involution q -> q^{-1}, fixing x; requires bar(D) == D.
  Scalar bar() const;

  /// Galois conjugate a - b*x (identity on plain values).
  Scalar conj() const;

  /// Exact specialization at q = q0 (rational, possibly quadratic when an
  /// x part is present).  Half powers of q need a rational sqrt of q0.
  QuadNum eval_q(const Rat& q0) const;
  /// Exact specialization at v = v0, i.e. q = v0^2.
  QuadNum eval_v(const Rat& v0) const;

  /// Order of vanishing at q = 1 (negative for poles).  Requires a nonzero
  /// value; extension values require D(1) to be a nonzero rational square.
  long q1_valuation() const;
  /// Power-series expansion at q = 1 in t = q - 1, truncated to prec terms;
  /// requires q1_valuation() >= 0 (or zero value).
  Series q1_series(long prec) const;
  /// Value of the limit q -> 1; requires q1_valuation() >= 0.
  Rat q1_limit() const;

  std::string str() const;
  std::size_t hash() const;

 private:
  static void check_compatible(const Scalar& x, const Scalar& y);
  RatFunc a_;
  RatFunc b_;
  ExtPtr ctx_;  // null <=> plain
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace nsq
