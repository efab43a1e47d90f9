#pragma once

/// \file laurent.hpp
/// Exact Laurent polynomials in the half-power variable v = q^{1/2}.
///
/// A Laurent value is a finite sum  sum_k c_k v^k  with k ranging over a
/// contiguous integer window and exact rational coefficients.  The canonical
/// form trims zero coefficients at both ends, so structural equality is value
/// equality.  Exponents of v are half-exponents of q: v^k == q^{k/2}.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nsq {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense Laurent polynomial over Q in v = q^{1/2}.
class Laurent {
 public:
  Laurent() = default;
  /// Constant polynomial.
  explicit Laurent(const Rat& c);
  explicit Laurent(long n);
  /// Monomial c * v^k.
  Laurent(const Rat& c, long k);

  static Laurent zero() { return Laurent(); }
  static Laurent one() { return Laurent(1); }
  /// v^k == q^{k/2}.
  static Laurent v_pow(long k) { return Laurent(Rat(1), k); }
  /// q^n == v^{2n}.
  static Laurent q_pow(long n) { return Laurent(Rat(1), 2 * n); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  /// True when the value is a single term c * v^k.
  bool is_monomial() const { return c_.size() == 1; }

  /// Lowest exponent of v (requires nonzero).
  long lo() const;
  /// Highest exponent of v (requires nonzero).
  long hi() const;
  /// Coefficient of v^k (zero outside the window).
  const Rat& coeff(long k) const;
  /// Leading (highest-exponent) coefficient; zero polynomial yields 0.
  Rat lead() const;
  /// Trailing (lowest-exponent) coefficient; zero polynomial yields 0.
  Rat trail() const;
  /// Number of stored coefficients (window width).
  std::size_t width() const { return c_.size(); }
  /// True when every exponent of v is even, i.e. the value lies in Q[q,q^-1].
  bool integral_q_powers() const;

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  Laurent& mul_scalar(const Rat& s);
  /// Multiply by v^k.
  Laurent& shift(long k);

  bool operator==(const Laurent& o) const = default;

  /// Exact division; throws std::domain_error when the remainder is nonzero.
  Laurent div_exact(const Laurent& d) const;
  /// Euclidean division by the polynomial part of d (both viewed in Q[v]
  /// after shifting lowest exponents to zero is NOT applied here; remainder
  /// is with respect to v-degree).  Used internally by gcd.
  static void div_mod(const Laurent& a, const Laurent& b, Laurent& q,
                      Laurent& r);

  /// Monic-normalized polynomial gcd in Q[v], returned as a primitive
  /// integer Laurent with positive trailing coefficient and lo() == 0.
  /// gcd(0,0) == 0.
  static Laurent gcd(const Laurent& a, const Laurent& b);

  /// Rational content: the value equals content() * primitive_part(), where
  /// the primitive part has coprime integer coefficients, positive trailing
  /// coefficient and unchanged exponent window.  Zero has content 0.
  Rat content() const;
  /// See content().  Zero stays zero.
  Laurent primitive_part() const;

  /// Bar involution v^k -> v^{-k} (q -> q^{-1}).
  Laurent bar() const;

  /// Substitute v -> v0 (exact).
  Rat eval_v(const Rat& v0) const;
  /// Substitute q -> q0; requires even exponents or a rational square root
  /// of q0 (throws std::domain_error otherwise).
  Rat eval_q(const Rat& q0) const;

  /// Order of vanishing at q = 1, i.e. the (v-1)-adic valuation.
  /// Requires nonzero (throws std::domain_error on zero).
  long val_at_one() const;
  /// Divide out (v-1)^k exactly.
  Laurent div_v_minus_one(long k) const;

  /// Derivative with respect to v.
  Laurent d_dv() const;

  /// Substitute v -> v^2 (doubles every exponent; q-polys become v-polys
  /// with the same coefficient list).
  Laurent stretch2() const;

  /// True when the value equals s^2 for some Laurent s; on success stores s
  /// (normalized to positive leading coefficient).
  bool sqrt(Laurent& out) const;

  /// Canonical text, e.g. "3*q^(2) + 1*q^(-1/2) + -2".  Zero prints "0".
  std::string str() const;

  std::size_t hash() const;

  /// Coefficient vector of q-powers from low to high; requires
  /// integral_q_powers().  Returns {lo_q, coeffs}.
  std::pair<long, std::vector<Rat>> q_coeffs() const;

 private:
  void trim();
  // Invariant: c_ empty (zero) or c_.front() != 0 and c_.back() != 0.
  long lo_ = 0;
  std::vector<Rat> c_;
};

std::ostream& operator<<(std::ostream& os, const Laurent& p);

}  // namespace nsq
