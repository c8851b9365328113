#include "doctest.h"
#include "parser.hpp"
#include "random_expr.hpp"

using namespace evsym;

namespace {
ParseError parse_error(const char* src, const std::set<std::string>& consts = {}) {
    try {
        parse(src, consts);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for " << src);
    return ParseError("", 0, 0);
}
}  // namespace

TEST_CASE("grammar") {
    CHECK(parse("u3 + 6*u*u1").str() == "u3 + 6*u*u1");
    CHECK(parse("u_3") == parse("u3"));
    CHECK(parse("u99") == DiffExpr::u(99));
    CHECK(parse("2^3^2") == DiffExpr(512));
    CHECK(parse("-2^2") == DiffExpr(-4));
    CHECK(parse("u^+2") == DiffExpr::u(0).pow(2));
    CHECK(parse("(u + 1)/2") == parse("1/2*u + 1/2"));
    CHECK(parse("2*a/4", {"a"}).str() == "1/2*a");
    CHECK(parse("  x\n+\tt ") == DiffExpr::x() + DiffExpr::t());
    CHECK(parse("exp(2*u) - exp(2*u)").is_zero());
    CHECK(parse("exp(-(t - x))").str() == "exp(x - t)");
    CHECK(parse("+u") == DiffExpr::u(0));
    CHECK(parse("1 + 6*t*u1").str() == "6*t*u1 + 1");
}

TEST_CASE("errors carry positions") {
    auto e = parse_error("6uu1");
    CHECK(e.detail() == "implicit multiplication is not allowed; use '*'");
    CHECK(e.line() == 1);
    CHECK(e.column() == 2);

    auto ws = parse_error("u1 +\n  2 u");
    CHECK(ws.line() == 2);
    CHECK(ws.column() == 5);

    auto unk = parse_error("u + k");
    CHECK(unk.detail().find("unknown identifier 'k'") != std::string::npos);
    CHECK(unk.column() == 5);

    CHECK(parse_error("u^(1/2)").detail() == "exponent must be an integer");
    CHECK(parse_error("u^x").detail() == "exponent must be an integer");
    CHECK(parse_error("u100").detail().find("u index out of range") != std::string::npos);
    CHECK(parse_error("u01").detail().find("u index out of range") != std::string::npos);
    CHECK(parse_error("u + ").detail() == "unexpected end of input");
    CHECK(parse_error("(u").detail() == "expected ')'");
    CHECK(parse_error("u $ 1").detail() == "unexpected character '$'");
    CHECK(parse_error("1.5").detail() == "decimal literals are not supported; use p/q");
    CHECK(parse_error("u/0").detail() == "division by zero");
    CHECK(parse_error("exp u").detail() == "expected '(' after exp");
    CHECK(parse_error("u/u1").line() == 1);
    CHECK(parse_error("u^-1").column() >= 1);
    CHECK(parse_error("exp(u1)").line() == 1);
    CHECK(parse_error("u)").detail() == "unexpected ')'");
}

TEST_CASE("constant names") {
    CHECK(is_reserved_name("x"));
    CHECK(is_reserved_name("u12"));
    CHECK(is_reserved_name("u_3"));
    CHECK(is_reserved_name("exp"));
    CHECK_FALSE(is_reserved_name("alpha"));
    CHECK_NOTHROW(validate_constant_name("c2"));
    CHECK_THROWS_AS(validate_constant_name("t"), DomainError);
    CHECK_THROWS_AS(validate_constant_name("2c"), DomainError);
    CHECK_THROWS_AS(validate_constant_name(""), DomainError);
}

TEST_CASE("property: print, parse, print is stable") {
    std::mt19937 rng(61);
    gen::Shape s;
    s.constants = true;
    s.exponentials = true;
    s.max_u = 12;
    for (int i = 0; i < 1000; ++i) {
        DiffExpr e = gen::expression(rng, s);
        const std::string once = e.str();
        CHECK(parse(once, {"a", "b"}).str() == once);
    }
}
