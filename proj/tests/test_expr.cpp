#include <catch2/catch_amalgamated.hpp>

#include "picard/parse.hpp"

using namespace picard;

namespace {
const std::map<std::string, double> kNoConsts;
}

TEST_CASE("parse builds the expected tree for the advection RHS") {
    const Expr e = parse_expr("-u_x + 2 + t + x", kNoConsts);
    // Add(Add(Add(Neg(Deriv(u,x)), 2), t), x)
    REQUIRE(e.kind == ExprKind::Add);
    CHECK(e.kids[1] == Expr::var(Axis::X));
    const Expr& l1 = e.kids[0];
    REQUIRE(l1.kind == ExprKind::Add);
    CHECK(l1.kids[1] == Expr::var(Axis::T));
    const Expr& l2 = l1.kids[0];
    REQUIRE(l2.kind == ExprKind::Add);
    CHECK(l2.kids[1] == Expr::number_of(2.0));
    CHECK(l2.kids[0] == Expr::unary(ExprKind::Neg, Expr::deriv("u", DerivAxis::X)));
}

TEST_CASE("parse respects precedence and parentheses") {
    const Expr e = parse_expr("(1+t)*(1+x)", kNoConsts);
    REQUIRE(e.kind == ExprKind::Mul);
    CHECK(e.kids[0] == Expr::binary(ExprKind::Add, Expr::number_of(1.0), Expr::var(Axis::T)));
    CHECK(e.kids[1] == Expr::binary(ExprKind::Add, Expr::number_of(1.0), Expr::var(Axis::X)));

    CHECK(parse_expr("1 + 2*x", kNoConsts) ==
          Expr::binary(ExprKind::Add, Expr::number_of(1.0),
                       Expr::binary(ExprKind::Mul, Expr::number_of(2.0), Expr::var(Axis::X))));
    // unary minus binds tighter than '*'
    CHECK(parse_expr("-2*u", kNoConsts) ==
          Expr::binary(ExprKind::Mul, Expr::unary(ExprKind::Neg, Expr::number_of(2.0)),
                       Expr::state("u")));
}

TEST_CASE("powers fold to integer exponents at parse time") {
    CHECK(parse_expr("u^(2)", kNoConsts) == Expr::pow_int(Expr::state("u"), 2));
    CHECK(parse_expr("u^2", kNoConsts) == Expr::pow_int(Expr::state("u"), 2));

    const std::map<std::string, double> consts{{"m", 1.0}, {"j", 2.0}};
    CHECK(parse_expr("u^(m + 1)", consts) == Expr::pow_int(Expr::state("u"), 2));
    CHECK(parse_expr("u^j", consts) == Expr::pow_int(Expr::state("u"), 2));
    CHECK(parse_expr("u^0", kNoConsts) == Expr::pow_int(Expr::state("u"), 0));

    CHECK_THROWS_AS(parse_expr("u^x", kNoConsts), ParseError);
    CHECK_THROWS_AS(parse_expr("u^(1/2)", kNoConsts), ParseError);
    CHECK_THROWS_AS(parse_expr("u^(-1)", kNoConsts), ParseError);
}

TEST_CASE("identifier classification") {
    const std::map<std::string, double> consts{{"A1", 1.0}, {"b", 2.0}};
    CHECK(parse_expr("A1", consts) == Expr::constant("A1"));
    CHECK(parse_expr("w", consts) == Expr::state("w"));
    CHECK(parse_expr("t", consts) == Expr::var(Axis::T));
    CHECK(parse_expr("u_xx", consts) == Expr::deriv("u", DerivAxis::XX));
    CHECK(parse_expr("u_tx", consts) == Expr::deriv("u", DerivAxis::TX));
    CHECK(parse_expr("P_t", consts) == Expr::deriv("P", DerivAxis::T));

    CHECK(parse_expr("D[x](u^2)", consts) ==
          Expr::d_of(Axis::X, Expr::pow_int(Expr::state("u"), 2)));
    CHECK(parse_expr("D[xx](u)", consts) ==
          Expr::d_of(Axis::X, Expr::d_of(Axis::X, Expr::state("u"))));

    CHECK(parse_expr("exp(t)", consts) == Expr::func("exp", Expr::var(Axis::T)));
    CHECK_THROWS_AS(parse_expr("log(t)", consts), ParseError);
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_expr("1 + * 2", kNoConsts);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
    CHECK_THROWS_AS(parse_expr("(1 + 2", kNoConsts), ParseError);
    CHECK_THROWS_AS(parse_expr("1 + 2)", kNoConsts), ParseError);
    CHECK_THROWS_AS(parse_expr("", kNoConsts), ParseError);
}

TEST_CASE("printing then reparsing is a fixed point") {
    const std::map<std::string, double> consts{{"A1", 1.0}, {"A6", 1.0}, {"m", 1.0}, {"b", 1.0}};
    const char* samples[] = {
        "-u_x + 2 + t + x",
        "(1 + t)*(1 + x)",
        "-(t + 2)/2",
        "-2*u_t*v",
        "-u_xx/(2*u_x)",
        "(-A1*D[x](u^2) + A3*u^1 + A4*T^0 + E)/A2",
        "exp(x/b)*(A2 + A1/b*(m + 1)*exp(m*x/b)) - A3*exp(j*x/b) - A4*exp(-A6*exp(x/b))",
        "-4*atan(m/sqrt(1 - m^2)*sin(sqrt(1 - m^2)*t)/cosh(m*x))",
        "2/(x + 1)",
        "a/b/c",
        "a - (b - c)",
        "1e-05 + x",
    };
    for (const char* text : samples) {
        const Expr once = parse_expr(text, consts);
        const std::string printed = to_string(once);
        const Expr twice = parse_expr(printed, consts);
        INFO(text << "  ->  " << printed);
        CHECK(once == twice);
        CHECK(to_string(twice) == printed);
    }
}

TEST_CASE("constant folding for exponents only") {
    const std::map<std::string, double> consts{{"m", 1.0}};
    // (m + 1)^2 keeps its structural base; only the exponent is folded
    const Expr e = parse_expr("(m + 1)^2", consts);
    REQUIRE(e.kind == ExprKind::PowInt);
    CHECK(e.exponent == 2);
    CHECK(e.kids[0] ==
          Expr::binary(ExprKind::Add, Expr::constant("m"), Expr::number_of(1.0)));
    CHECK(to_string(e) == "(m + 1)^2");
}
