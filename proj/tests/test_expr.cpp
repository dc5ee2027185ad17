#include <doctest.h>

#include <cmath>

#include "oscil/errors.hpp"
#include "oscil/expr.hpp"
#include "random_exprs.hpp"

using namespace oscil;

TEST_CASE("arithmetic and precedence") {
    CHECK(eval(parse("2+3*4"), 0.0) == 14.0);
    CHECK(eval(parse("(2+3)*4"), 0.0) == 20.0);
    CHECK(eval(parse("2^3^2"), 0.0) == 512.0);   // right associative
    CHECK(eval(parse("-2^2"), 0.0) == -4.0);     // ^ binds tighter than unary minus
    CHECK(eval(parse("2*x+1"), 3.0) == 7.0);
    CHECK(eval(parse("x^2 - x"), 5.0) == 20.0);
    CHECK(eval(parse("10/4"), 0.0) == 2.5);
    CHECK(eval(parse("1e2 + 2.5e-1"), 0.0) == doctest::Approx(100.25));
}

TEST_CASE("functions evaluate") {
    CHECK(eval(parse("sin(0)"), 0.0) == 0.0);
    CHECK(eval(parse("cos(0)"), 0.0) == 1.0);
    CHECK(eval(parse("tan(x)"), 0.25) == doctest::Approx(std::tan(0.25)));
    CHECK(eval(parse("exp(1)"), 0.0) == doctest::Approx(std::exp(1.0)));
    CHECK(eval(parse("ln(exp(2))"), 0.0) == doctest::Approx(2.0));
    CHECK(eval(parse("sqrt(x)"), 9.0) == 3.0);
    CHECK(eval(parse("abs(x)"), -4.5) == 4.5);
}

TEST_CASE("parameters") {
    ParamBindings ps{{"k", 2.0}, {"a", -1.5}};
    CHECK(eval(parse("k*x + a"), 3.0, ps) == 4.5);
    CHECK_THROWS_AS(eval(parse("k*x"), 1.0), UnboundParameterError);
    CHECK_THROWS_AS(eval(parse("k*x"), 1.0, {{"K", 2.0}}), UnboundParameterError);
}

TEST_CASE("domain failures become the NaN marker") {
    CHECK(is_domain_failure(eval(parse("ln(x)"), -1.0)));
    CHECK(is_domain_failure(eval(parse("ln(x)"), 0.0)));
    CHECK(is_domain_failure(eval(parse("sqrt(x)"), -0.5)));
    CHECK(is_domain_failure(eval(parse("1/x"), 0.0)));
    CHECK(is_domain_failure(eval(parse("exp(x)"), 1e9)));       // overflow
    CHECK(is_domain_failure(eval(parse("x^0.5"), -2.0)));
    CHECK_FALSE(is_domain_failure(eval(parse("1/x"), 2.0)));
}

TEST_CASE("parse errors carry position") {
    CHECK_THROWS_AS(parse("2+"), ParseError);
    CHECK_THROWS_AS(parse("sin("), ParseError);
    CHECK_THROWS_AS(parse("(1+2"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("2 3"), ParseError);
    CHECK_THROWS_AS(parse("foo(x)"), UnknownFunctionError);
    try {
        parse("1 + @");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("fixed derivatives") {
    auto d = [](const std::string& s, double x) {
        return eval(differentiate(parse(s)), x);
    };
    CHECK(d("x^3", 2.0) == doctest::Approx(12.0));
    CHECK(d("ln(x)", 3.0) == doctest::Approx(1.0 / 3.0));
    CHECK(d("exp(2*x)", 0.5) == doctest::Approx(2.0 * std::exp(1.0)));
    CHECK(d("sin(x^2)", 1.5) == doctest::Approx(3.0 * std::cos(2.25)));
    CHECK(d("1/x", 2.0) == doctest::Approx(-0.25));
    CHECK(d("sqrt(x)", 4.0) == doctest::Approx(0.25));
    CHECK(d("abs(x)", -3.0) == doctest::Approx(-1.0));
    CHECK(is_domain_failure(d("abs(x)", 0.0)));  // kink
    CHECK(d("tan(x)", 0.3) == doctest::Approx(1.0 / (std::cos(0.3) * std::cos(0.3))));
}

TEST_CASE("derivative of a parameterized expression treats parameters as constants") {
    ParamBindings ps{{"k", 3.0}};
    Expr d = differentiate(parse("k^2 * x^2"));
    CHECK(eval(d, 2.0, ps) == doctest::Approx(36.0));
}

TEST_CASE("simplify folds and strips identities") {
    CHECK(simplify(parse("x*1 + 0")).str() == "x");
    CHECK(simplify(parse("x^1")).str() == "x");
    CHECK(simplify(parse("0*x")).str() == "0");
    CHECK(simplify(parse("-(-x)")).str() == "x");
    CHECK(simplify(parse("2+3")).str() == "5");
    CHECK(eval(simplify(parse("x - x + x^0")), 7.0) == 1.0);
}

TEST_CASE("simplify preserves values on random expressions") {
    testgen::ExprGen gen(20240601);
    for (int i = 0; i < 60; ++i) {
        Expr e = parse(gen());
        Expr s = simplify(e);
        for (double x : {-2.0, -0.7, 0.3, 1.1, 2.4}) {
            double a = eval(e, x), b = eval(s, x);
            if (is_domain_failure(a) || is_domain_failure(b)) continue;
            CHECK(b == doctest::Approx(a).epsilon(1e-12));
        }
    }
}

TEST_CASE("random derivatives agree with central differences") {
    testgen::ExprGen gen(777);
    const double h = 1e-5;
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        Expr e = parse(gen());
        Expr d = differentiate(e);
        for (double x : {-2.0, -1.3, -0.4, 0.6, 1.7, 2.2}) {
            double sym = eval(d, x);
            double fp = eval(e, x + h), fm = eval(e, x - h);
            if (is_domain_failure(sym) || is_domain_failure(fp) || is_domain_failure(fm))
                continue;
            if (std::fabs(sym) > 1e6) continue;  // cancellation territory
            double fd = (fp - fm) / (2 * h);
            CHECK(std::fabs(sym - fd) <= 1e-5 * (1.0 + std::fabs(sym)));
            ++checked;
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("str round-trips through the parser") {
    testgen::ExprGen gen(4242);
    for (int i = 0; i < 40; ++i) {
        Expr e = parse(gen());
        Expr r = parse(e.str());
        for (double x : {-1.8, -0.2, 0.9, 2.1}) {
            double a = eval(e, x), b = eval(r, x);
            if (is_domain_failure(a)) {
                CHECK(is_domain_failure(b));
                continue;
            }
            CHECK(b == doctest::Approx(a).epsilon(1e-14));
        }
    }
}
