#pragma once

/// \file expr.hpp
/// A small exact-expression parser.  It understands integers, the symbols
/// q and x (x only when an extension context is supplied), the operators
/// + - * / ^ and parentheses; exponents may be integers or half-integers
/// written as (n/2), so q^(-3/2) is q to the minus three halves.  Canonical
/// text produced by Laurent/RatFunc/Scalar::str() parses back to an equal
/// value.

#include <string>

#include "nsq/scalar.hpp"

namespace nsq {

/// Evaluate an expression to a scalar.  Throws std::invalid_argument with a
/// position diagnostic on malformed input.
Scalar parse_scalar(const std::string& text, ExtPtr ctx = nullptr);

}  // namespace nsq
