#include "nsq/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace nsq {

namespace {

class Parser {
 public:
  Parser(const std::string& s, ExtPtr ctx) : s_(s), ctx_(std::move(ctx)) {}

  Scalar run() {
    Scalar v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at position " +
                                std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return postfix();
  }

  Scalar postfix() {
    Scalar base = primary();
    while (peek() == '^') {
      eat('^');
      auto [num, half] = exponent();
      if (half) {
        // Half-integer exponents only make sense on q itself.
        if (!(base == Scalar::q_pow(1)))
          fail("half-integer exponent on a base other than q");
        base = Scalar::v_pow(num);
      } else {
        base = base.pow(num);
      }
    }
    return base;
  }

  // Returns {n, false} for an integer exponent n, or {k, true} for k/2.
  std::pair<long, bool> exponent() {
    if (eat('(')) {
      bool neg = false;
      if (eat('-'))
        neg = true;
      else
        (void)eat('+');
      long n = integer();
      bool half = false;
      if (eat('/')) {
        long d = integer();
        if (d == 2)
          half = true;
        else if (d != 1)
          fail("exponent denominator must be 1 or 2");
      }
      if (!eat(')')) fail("expected ')' after exponent");
      return {neg ? -n : n, half};
    }
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      (void)eat('+');
    long n = integer();
    return {neg ? -n : n, false};
  }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected an integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  Scalar primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return Scalar(Rat(Int(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             std::isalnum(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "q") return Scalar::q_pow(1);
      if (name == "v") return Scalar::v_pow(1);
      if (name == "x") {
        if (!ctx_) fail("symbol x used without an extension context");
        return Scalar::ext_gen(ctx_);
      }
      fail("unknown symbol '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  ExtPtr ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text, ExtPtr ctx) {
  return Parser(text, std::move(ctx)).run();
}

}  // namespace nsq
