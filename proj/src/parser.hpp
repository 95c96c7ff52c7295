#pragma once

#include <string>
#include <variant>

#include "vectorfield.hpp"

namespace cartan {

// Syntax or semantic error with the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(size_t offset, const std::string& message)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// Evaluation context: indices are global 1..m+n; lambda feeds div_lambda and
// has no effect elsewhere.
struct EvalContext {
  Family family = Family::W;
  int m = 0;
  int n = 0;
  Rat lambda = 0;

  Signature sig() const { return Signature{m, n}; }
  IndexMaps maps() const { return IndexMaps{family, m, n}; }
};

using EvalValue = std::variant<SuperPoly, VectorField>;

// Grammar: x<k>, p<k>, integer and a/b literals, + - * ^ ( ), heads
// D_H/D_K/D_HO/D_KO(expr), D(i,j;expr), div(expr), div_lambda(rat;expr),
// bracket(expr,expr). Throws ParseError.
EvalValue parse_expression(const std::string& text, const EvalContext& ctx);

// Canonical printed forms; parse(print(v)) reproduces v and printing is a
// fixed point on its own output.
std::string print_poly(const SuperPoly& p);
std::string print_field(const VectorField& D);
std::string print_value(const EvalValue& v);

}  // namespace cartan
