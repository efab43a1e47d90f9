#include "nsq/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nsq {

namespace {
const Rat kZero = Rat(0);
}

Laurent::Laurent(const Rat& c) {
  if (c != 0) c_.push_back(c);
}

Laurent::Laurent(long n) {
  if (n != 0) c_.push_back(Rat(n));
}

Laurent::Laurent(const Rat& c, long k) : lo_(k) {
  if (c != 0)
    c_.push_back(c);
  else
    lo_ = 0;
}

bool Laurent::is_one() const {
  return c_.size() == 1 && lo_ == 0 && c_[0] == 1;
}

long Laurent::lo() const {
  if (is_zero()) throw std::domain_error("Laurent::lo on zero");
  return lo_;
}

long Laurent::hi() const {
  if (is_zero()) throw std::domain_error("Laurent::hi on zero");
  return lo_ + static_cast<long>(c_.size()) - 1;
}

const Rat& Laurent::coeff(long k) const {
  long i = k - lo_;
  if (i < 0 || i >= static_cast<long>(c_.size())) return kZero;
  return c_[static_cast<std::size_t>(i)];
}

Rat Laurent::lead() const { return is_zero() ? Rat(0) : c_.back(); }
Rat Laurent::trail() const { return is_zero() ? Rat(0) : c_.front(); }

bool Laurent::integral_q_powers() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0 && ((lo_ + static_cast<long>(i)) % 2 != 0)) return false;
  return true;
}

void Laurent::trim() {
  std::size_t b = 0, e = c_.size();
  while (b < e && c_[b] == 0) ++b;
  while (e > b && c_[e - 1] == 0) --e;
  if (b == e) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (b > 0 || e < c_.size()) {
    std::vector<Rat> out(c_.begin() + static_cast<long>(b),
                         c_.begin() + static_cast<long>(e));
    c_.swap(out);
    lo_ += static_cast<long>(b);
  }
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  long nlo = std::min(lo_, o.lo_);
  long nhi = std::max(hi(), o.hi());
  std::vector<Rat> out(static_cast<std::size_t>(nhi - nlo + 1), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    out[static_cast<std::size_t>(lo_ - nlo) + i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    out[static_cast<std::size_t>(o.lo_ - nlo) + i] += o.c_[i];
  lo_ = nlo;
  c_.swap(out);
  trim();
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = -o;
  long nlo = std::min(lo_, o.lo_);
  long nhi = std::max(hi(), o.hi());
  std::vector<Rat> out(static_cast<std::size_t>(nhi - nlo + 1), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    out[static_cast<std::size_t>(lo_ - nlo) + i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    out[static_cast<std::size_t>(o.lo_ - nlo) + i] -= o.c_[i];
  lo_ = nlo;
  c_.swap(out);
  trim();
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return Laurent();
  Laurent r;
  r.lo_ = a.lo_ + b.lo_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
  // Schoolbook convolution; operand sizes in this library stay modest.
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

Laurent& Laurent::mul_scalar(const Rat& s) {
  if (s == 0) {
    c_.clear();
    lo_ = 0;
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

Laurent& Laurent::shift(long k) {
  if (!is_zero()) lo_ += k;
  return *this;
}

void Laurent::div_mod(const Laurent& a, const Laurent& b, Laurent& q,
                      Laurent& r) {
  if (b.is_zero()) throw std::domain_error("Laurent::div_mod by zero");
  q = Laurent();
  r = a;
  // Divide in Q[v] on v-degrees; exponent windows may be negative, which is
  // fine: we cancel leading terms until deg r < deg b.
  while (!r.is_zero() && r.hi() >= b.hi()) {
    Rat f = r.lead() / b.lead();
    long k = r.hi() - b.hi();
    Laurent t(f, k);
    q += t;
    r -= t * b;
  }
}

Laurent Laurent::div_exact(const Laurent& d) const {
  if (d.is_zero()) throw std::domain_error("Laurent::div_exact by zero");
  if (is_zero()) return Laurent();
  // Shift both windows to lo = 0 so the polynomial division below can also
  // produce quotient terms v^k with k below the naive degree difference.
  Laurent a = *this, b = d;
  long sh = a.lo() - b.lo();
  a.shift(-a.lo());
  b.shift(-b.lo());
  Laurent q, r;
  div_mod(a, b, q, r);
  if (!r.is_zero()) throw std::domain_error("Laurent::div_exact: remainder");
  q.shift(sh);
  return q;
}

Rat Laurent::content() const {
  if (is_zero()) return Rat(0);
  // gcd of numerators over lcm of denominators, sign from trailing coeff.
  Int num_g = 0, den_l = 1;
  for (const auto& x : c_) {
    if (x == 0) continue;
    mpz_gcd(num_g.get_mpz_t(), num_g.get_mpz_t(),
            mpq_numref(x.get_mpq_t()));
    mpz_lcm(den_l.get_mpz_t(), den_l.get_mpz_t(),
            mpq_denref(x.get_mpq_t()));
  }
  Rat c(num_g, den_l);
  c.canonicalize();
  if (trail() < 0) c = -c;
  return c;
}

Laurent Laurent::primitive_part() const {
  if (is_zero()) return Laurent();
  Laurent r = *this;
  Rat c = content();
  r.mul_scalar(Rat(1) / c);
  return r;
}

Laurent Laurent::gcd(const Laurent& a, const Laurent& b) {
  if (a.is_zero() && b.is_zero()) return Laurent();
  if (a.is_zero()) return b.primitive_part().shift(-b.lo());
  if (b.is_zero()) return a.primitive_part().shift(-a.lo());
  // Work with primitive parts shifted to lo = 0; monic Euclid in Q[v].
  Laurent x = a.primitive_part().shift(-a.lo());
  Laurent y = b.primitive_part().shift(-b.lo());
  while (!y.is_zero()) {
    Laurent q, r;
    div_mod(x, y, q, r);
    x = y;
    // Keep coefficients small: strip content each round.
    y = r.is_zero() ? Laurent() : r.primitive_part();
  }
  Laurent g = x.primitive_part().shift(-x.lo());
  if (g.trail() < 0) g.mul_scalar(Rat(-1));
  return g;
}

Laurent Laurent::bar() const {
  if (is_zero()) return Laurent();
  Laurent r;
  r.c_.assign(c_.rbegin(), c_.rend());
  r.lo_ = -hi();
  return r;
}

Rat Laurent::eval_v(const Rat& v0) const {
  if (is_zero()) return Rat(0);
  if (v0 == 0) throw std::domain_error("Laurent::eval_v at v = 0");
  // Horner over the window, then multiply by v0^{lo}.
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v0 + *it;
  long k = lo_;
  Rat p(1);
  Rat base = k >= 0 ? v0 : Rat(1) / v0;
  unsigned long e = static_cast<unsigned long>(k >= 0 ? k : -k);
  while (e) {
    if (e & 1) p *= base;
    base *= base;
    e >>= 1;
  }
  return acc * p;
}

namespace {
bool rat_sqrt(const Rat& q0, Rat& out) {
  if (q0 < 0) return false;
  Int n = q0.get_num(), d = q0.get_den();
  Int ns, ds;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
  mpz_sqrt(ns.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(ds.get_mpz_t(), d.get_mpz_t());
  out = Rat(ns, ds);
  return true;
}
}  // namespace

Rat Laurent::eval_q(const Rat& q0) const {
  if (q0 <= 0) throw std::domain_error("Laurent::eval_q: q0 must be positive");
  if (integral_q_powers()) {
    // Substitute q = q0 directly on even exponents.
    Rat acc(0);
    if (is_zero()) return acc;
    for (long k = lo(); k <= hi(); ++k) {
      if (coeff(k) == 0) continue;
      long n = k / 2;
      Rat p(1);
      Rat base = n >= 0 ? q0 : Rat(1) / q0;
      unsigned long e = static_cast<unsigned long>(n >= 0 ? n : -n);
      while (e) {
        if (e & 1) p *= base;
        base *= base;
        e >>= 1;
      }
      acc += coeff(k) * p;
    }
    return acc;
  }
  Rat r;
  if (!rat_sqrt(q0, r))
    throw std::domain_error(
        "Laurent::eval_q: odd half-powers present and q0 has no rational "
        "square root");
  return eval_v(r);
}

long Laurent::val_at_one() const {
  if (is_zero()) throw std::domain_error("Laurent::val_at_one on zero");
  Laurent t = *this;
  long k = 0;
  while (t.eval_v(Rat(1)) == 0) {
    t = t.div_v_minus_one(1);
    ++k;
  }
  return k;
}

Laurent Laurent::div_v_minus_one(long k) const {
  Laurent t = *this;
  Laurent d = Laurent(Rat(1), 1) - Laurent(Rat(1), 0);  // v - 1
  for (long i = 0; i < k; ++i) t = t.div_exact(d);
  return t;
}

Laurent Laurent::d_dv() const {
  Laurent r;
  if (is_zero()) return r;
  r.lo_ = lo_ - 1;
  r.c_.assign(c_.size(), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    r.c_[i] = c_[i] * Rat(lo_ + static_cast<long>(i));
  r.trim();
  return r;
}

Laurent Laurent::stretch2() const {
  Laurent r;
  if (is_zero()) return r;
  r.lo_ = 2 * lo_;
  r.c_.assign(2 * c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[2 * i] = c_[i];
  r.trim();
  return r;
}

bool Laurent::sqrt(Laurent& out) const {
  if (is_zero()) {
    out = Laurent();
    return true;
  }
  if (lo() % 2 != 0 || (hi() - lo()) % 2 != 0) return false;
  // Coefficient recursion: s_k determined from the top (lead must be a
  // rational square).
  long sd = (hi() - lo()) / 2;
  Rat lead_s;
  if (!rat_sqrt(lead(), lead_s)) return false;
  std::vector<Rat> s(static_cast<std::size_t>(sd + 1), Rat(0));
  s[static_cast<std::size_t>(sd)] = lead_s;
  for (long i = sd - 1; i >= 0; --i) {
    // Coefficient of v^{lo + sd + i} in s^2 equals coeff here.
    Rat acc = coeff(lo() + sd + i);
    for (long j = i + 1; j < sd; ++j) {
      long k = sd + i - j;
      if (k > sd || k < 0) continue;
      acc -= s[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k)];
    }
    s[static_cast<std::size_t>(i)] = acc / (2 * lead_s);
  }
  Laurent cand;
  cand.lo_ = lo() / 2;
  cand.c_ = s;
  cand.trim();
  if (cand * cand == *this) {
    out = cand;
    return true;
  }
  return false;
}

std::string Laurent::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = hi(); k >= lo(); --k) {
    const Rat& c = coeff(k);
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (k != 0) {
      os << "*q^(";
      if (k % 2 == 0)
        os << k / 2;
      else
        os << k << "/2";
      os << ")";
    }
  }
  return os.str();
}

std::size_t Laurent::hash() const {
  std::size_t h = std::hash<long>()(lo_) * 1000003u + c_.size();
  for (const auto& x : c_) {
    h = h * 16777619u + std::hash<double>()(x.get_d());
    h ^= static_cast<std::size_t>(mpz_get_si(x.get_num_mpz_t())) * 2654435761u;
  }
  return h;
}

std::pair<long, std::vector<Rat>> Laurent::q_coeffs() const {
  if (!integral_q_powers())
    throw std::domain_error("Laurent::q_coeffs: odd half-powers present");
  std::vector<Rat> out;
  if (is_zero()) return {0, out};
  long ql = lo() / 2, qh = hi() / 2;
  for (long n = ql; n <= qh; ++n) out.push_back(coeff(2 * n));
  return {ql, out};
}

std::ostream& operator<<(std::ostream& os, const Laurent& p) {
  return os << p.str();
}

}  // namespace nsq
