#include <doctest.h>

#include <cmath>

#include "oscil/errors.hpp"
#include "oscil/ode.hpp"

using namespace oscil;

TEST_CASE("create validates parameter bindings") {
    CHECK_NOTHROW(OdeSpec::create("1/x", "k^2/x^2", "0", {{"k", 2.0}}, {0.0}));
    CHECK_THROWS_AS(OdeSpec::create("1/x", "k^2/x^2"), UnboundParameterError);
    CHECK_THROWS_AS(OdeSpec::create("0", "1", "g*x"), UnboundParameterError);
}

TEST_CASE("homogeneous flag tracks the forcing term") {
    CHECK(OdeSpec::create("0", "1").homogeneous);
    CHECK(OdeSpec::create("0", "1", "x - x").homogeneous);
    CHECK_FALSE(OdeSpec::create("0", "1", "sin(x)").homogeneous);
}

TEST_CASE("discriminant picks up the derivative of b") {
    // b = 1/x, c = k^2/x^2, k = 2: b^2 - 4c + 2b' = (1 - 16 - 2)/x^2 = -17/x^2
    auto spec = OdeSpec::create("1/x", "k^2/x^2", "0", {{"k", 2.0}}, {0.0});
    Expr D = discriminant(spec);
    for (double x : {0.5, 1.0, 2.0, 7.0, 40.0})
        CHECK(eval(D, x, spec.params) == doctest::Approx(-17.0 / (x * x)).epsilon(1e-13));

    // the frozen form misses the 2b' term
    Expr N = naive_discriminant(spec);
    for (double x : {0.5, 1.0, 2.0})
        CHECK(eval(N, x, spec.params) == doctest::Approx(-15.0 / (x * x)).epsilon(1e-13));
}

TEST_CASE("discriminants coincide for constant b") {
    auto spec = OdeSpec::create("3", "2");
    CHECK(eval(discriminant(spec), 1.23) == doctest::Approx(1.0));
    CHECK(eval(naive_discriminant(spec), 1.23) == doctest::Approx(1.0));
}

TEST_CASE("integrate_expr hits elementary integrals") {
    CHECK(integrate_expr(parse("x^2"), {}, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(integrate_expr(parse("sin(x)"), {}, 0.0, M_PI) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(integrate_expr(parse("exp(x)"), {}, -1.0, 1.0) ==
          doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-10));
    CHECK(integrate_expr(parse("1"), {}, 2.0, 2.0) == 0.0);
    CHECK(integrate_expr(parse("x"), {}, 1.0, 0.0) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(integrate_expr(parse("1/x"), {}, -1.0, 1.0), SingularPathError);
}

TEST_CASE("weight function") {
    // b = 2: w(x) = exp(-(x - anchor))
    WeightFn w(parse("2"), {}, 0.0);
    CHECK(w(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    CHECK(w(-2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-9));

    // b = 1/x anchored at 1: w(x) = x^(-1/2)
    WeightFn wx(parse("1/x"), {}, 1.0);
    CHECK(wx(4.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(wx(0.25) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("normal form of a Bessel-like equation") {
    // b = 1/x, c = 1: q = -1/4 (1/x^2 - 4 - 2/x^2) = 1 + 1/(4 x^2)
    auto spec = OdeSpec::create("1/x", "1", "0", {}, {0.0});
    NormalForm nf = normal_form(spec, 1.0);
    CHECK(nf.anchor == 1.0);
    for (double x : {0.5, 1.0, 2.0, 10.0})
        CHECK(eval(nf.q, x, spec.params) ==
              doctest::Approx(1.0 + 1.0 / (4 * x * x)).epsilon(1e-12));
    CHECK(nf.weight(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nf.weight(9.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("normal form requires b evaluable near the anchor") {
    auto spec = OdeSpec::create("1/x", "1", "0", {}, {0.0});
    CHECK_THROWS_AS(normal_form(spec, 0.0), SpecError);
}
