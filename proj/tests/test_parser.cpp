#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parser.hpp"

using namespace cartan;

namespace {

const EvalContext ctx44{Family::W, 4, 4};
const EvalContext ctxH{Family::H, 4, 4};
const EvalContext ctxK{Family::K, 5, 4};
const EvalContext ctxSKO{Family::SKO, 4, 5, make_rat(2, 3)};

SuperPoly poly(const std::string& text, const EvalContext& ctx = ctx44) {
  return std::get<SuperPoly>(parse_expression(text, ctx));
}

VectorField field(const std::string& text, const EvalContext& ctx = ctx44) {
  return std::get<VectorField>(parse_expression(text, ctx));
}

size_t error_offset(const std::string& text, const EvalContext& ctx = ctx44) {
  try {
    parse_expression(text, ctx);
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("expected a parse error for: " << text);
  return 0;
}

}  // namespace

TEST_CASE("atoms and arithmetic") {
  Signature sig{4, 4};
  CHECK(poly("x1") == SuperPoly::variable(sig, 1));
  CHECK(poly("3/2") == SuperPoly::constant(sig, make_rat(3, 2)));
  CHECK(poly("x5^2").is_zero());
  CHECK(poly("x1^3*x5*x6") ==
        poly("x1") * poly("x1") * poly("x1") * poly("x5") * poly("x6"));
  CHECK(poly("x6*x5") == -poly("x5*x6"));
  CHECK(poly("(x1 + x2)*(x1 - x2)") == poly("x1^2 - x2^2"));
  CHECK(poly("-2*x1 + 1/2") == poly("1/2 - 2*x1"));
  CHECK(field("p3") == VectorField::partial_field(sig, 3));
  CHECK(field("2*x1*p5 - x2^2*p6") ==
        VectorField::term(poly("2*x1"), 5) - VectorField::term(poly("x2^2"), 6));
}

TEST_CASE("operator heads") {
  Signature sig44{4, 4};
  IndexMaps mh{Family::H, 4, 4};
  CHECK(field("D_H(x1*x3)", ctxH) ==
        d_h(SuperPoly::variable(sig44, 1) * SuperPoly::variable(sig44, 3), mh));
  CHECK(field("bracket(x1*p2, x2*p1)") ==
        VectorField::term(SuperPoly::variable(sig44, 1), 1) -
            VectorField::term(SuperPoly::variable(sig44, 2), 2));
  CHECK(print_value(parse_expression("D_K(1)", ctxK)) == "2*p5");
  CHECK(field("D(1,2; x1*x2)") ==
        d_ij(1, 2, SuperPoly::variable(sig44, 1) * SuperPoly::variable(sig44, 2)));
  CHECK(poly("div(x1*p1)") == SuperPoly::constant(sig44, 1));
  Signature sig45{4, 5};
  CHECK(poly("div_lambda(2/3; x9)", ctxSKO) ==
        SuperPoly::constant(sig45, make_rat(16, 3)));
  CHECK(poly("div(bracket(p1, x1*p1))").is_zero());
}

TEST_CASE("errors carry byte offsets") {
  CHECK(error_offset("x1 + ") == 5);
  CHECK(error_offset("x1 + )") == 5);
  CHECK(error_offset("x9") == 0);          // index out of range for (4,4)
  CHECK(error_offset("x1 + p9") == 5);
  CHECK(error_offset("foo(x1)") == 0);     // unknown identifier
  CHECK(error_offset("x1 @ x2") == 3);
  CHECK(error_offset("p1^2") == 2);        // field exponentiation
  CHECK(error_offset("p1*x1") == 2);       // field * poly
  CHECK(error_offset("x1 + p1") == 3);     // poly + field
  CHECK(error_offset("bracket(x1, p1)") == 0);
  CHECK(error_offset("div(x1)") == 0);
  CHECK(error_offset("div((x1 + x5)*p1)") == 0);   // mixed-parity coefficient
  CHECK(error_offset("D_H(x1 + x5)", ctxH) == 0);  // mixed-parity argument
  CHECK(error_offset("D(1,9; x1)") == 4);
}

TEST_CASE("canonical round-trip on random expressions") {
  Rng rng(77);
  int checked = 0;
  for (int t = 0; t < 250; ++t) {
    Signature sig{4, 4};
    EvalValue v = SuperPoly::zero(sig);
    if (t % 2 == 0) {
      v = random_homogeneous(sig, rng() % 2, 3, rng);
    } else {
      VectorField D(sig);
      for (int r = 1; r <= 8; ++r)
        if (rng() % 3 == 0) D.coeff(r) = random_homogeneous(sig, rng() % 2, 2, rng);
      v = D;
    }
    std::string printed = print_value(v);
    EvalValue back = parse_expression(printed, ctx44);
    if (std::holds_alternative<SuperPoly>(v)) {
      // A zero field prints "0", which reads back as the zero polynomial.
      REQUIRE(std::holds_alternative<SuperPoly>(back));
      CHECK(std::get<SuperPoly>(v) == std::get<SuperPoly>(back));
    } else if (std::get<VectorField>(v).is_zero()) {
      CHECK(print_value(back) == "0");
    } else {
      REQUIRE(std::holds_alternative<VectorField>(back));
      CHECK(std::get<VectorField>(v) == std::get<VectorField>(back));
    }
    CHECK(print_value(back) == printed);
    ++checked;
  }
  CHECK(checked == 250);
}
