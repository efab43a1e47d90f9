#pragma once

/// \file ratfunc.hpp
/// Exact rational functions in q^{1/2} with a pinned canonical form, so that
/// structural equality is value equality and printing is deterministic.
///
/// Canonical form of num/den:
///  * den == 1 whenever the value is a Laurent polynomial (in particular 0);
///  * otherwise den is a primitive integer polynomial in v with den(0) != 0
///    (the unit monomial v^k is folded into num), positive trailing
///    coefficient, and gcd(primitive(num), den) == 1 in Q[v].

#include <string>

#include "nsq/laurent.hpp"

namespace nsq {

class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(const Laurent& n) : num_(n) {}  // NOLINT: implicit by design
  RatFunc(const Laurent& n, const Laurent& d) : num_(n), den_(d) {
    normalize();
  }
  explicit RatFunc(const Rat& c) : num_(Laurent(c)) {}
  explicit RatFunc(long n) : num_(Laurent(n)) {}

  static RatFunc zero() { return RatFunc(); }
  static RatFunc one() { return RatFunc(1); }
  static RatFunc q_pow(long n) { return RatFunc(Laurent::q_pow(n)); }
  static RatFunc v_pow(long k) { return RatFunc(Laurent::v_pow(k)); }

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc inv() const;

  bool operator==(const RatFunc& o) const = default;

  /// Bar involution q -> q^{-1} (canonicalized).
  RatFunc bar() const;
  /// Exact evaluation at q = q0 > 0 (see Laurent::eval_q for half powers).
  Rat eval_q(const Rat& q0) const;
  /// Exact evaluation at v = v0 (q = v0^2).
  Rat eval_v(const Rat& v0) const;
  /// Order of vanishing at q = 1 (negative for poles).  Nonzero input.
  long q1_valuation() const;

  std::string str() const;
  std::size_t hash() const;

 private:
  void normalize();
  Laurent num_;
  Laurent den_ = Laurent::one();
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace nsq
