#pragma once

/// \file series.hpp
/// Truncated power series over Q in a local parameter t, used for exact
/// (q-1)-adic expansions: limits, valuations and square roots near q = 1.
/// A series carries its truncation order: coefficients c[0..n-1] represent
/// the value modulo t^n.

#include <vector>

#include "nsq/laurent.hpp"

namespace nsq {

class Series {
 public:
  Series() = default;
  Series(std::vector<Rat> c, long prec) : c_(std::move(c)) {
    c_.resize(static_cast<std::size_t>(prec), Rat(0));
  }
  static Series constant(const Rat& x, long prec) {
    Series s;
    s.c_.assign(static_cast<std::size_t>(prec), Rat(0));
    if (prec > 0) s.c_[0] = x;
    return s;
  }

  long prec() const { return static_cast<long>(c_.size()); }
  const Rat& operator[](long i) const { return c_[static_cast<std::size_t>(i)]; }
  Rat& operator[](long i) { return c_[static_cast<std::size_t>(i)]; }

  /// Index of the first nonzero coefficient, or prec() when all stored
  /// coefficients vanish (i.e. valuation >= prec, undetermined).
  long valuation() const;
  bool all_zero() const { return valuation() == prec(); }

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  /// Division; requires b's valuation <= a's valuation (exact local division
  /// after shifting), throws std::domain_error otherwise.
  friend Series operator/(const Series& a, const Series& b);
  Series mul_scalar(const Rat& s) const;

  /// Square root with s[0] a nonzero rational square; Newton iteration.
  Series sqrt() const;

  /// Expansion of a Laurent polynomial in v = q^{1/2} around q = 1:
  /// substitute q = 1 + t, v = sqrt(1 + t) (binomial series), truncate.
  static Series expand_laurent(const Laurent& p, long prec);

 private:
  std::vector<Rat> c_;
};

}  // namespace nsq
