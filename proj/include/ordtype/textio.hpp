#pragma once

// Text front end for order-type expressions.
//
//   term := sum
//   sum  := prod ("+" prod)*
//   prod := post ("*" post)*
//   post := atom ("~")*
//   atom := "0" | "1" | NAT | "N" | "Z" | "Q" | "Q" "[" term ("," term)* "]" | "(" term ")"
//
// "+" and "*" are left-associative, "*" binds tighter than "+", and the
// postfix reversal "~" binds tightest.  "A * X" is A-many copies of X.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ordtype/term.hpp"

namespace ordtype {

struct CanonicalForm;

struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourceSpan span, const std::string& message);
    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

// Parses and validates.  Throws ParseError or ValidationError.
OrderTerm parse(std::string_view text);

// Inverse of parse up to structural equality, with minimal parentheses.
std::string print(const OrderTerm& t);

// Graphviz rendering of a canonical form: one node per component, chained
// left to right; shuffle nodes fan out to the chains of their blocks.  Node
// ids are preorder indices.
std::string to_dot(const CanonicalForm& cf);

}  // namespace ordtype
