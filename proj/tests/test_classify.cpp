#include <doctest.h>

#include <cmath>

#include "oscil/classify.hpp"
#include "oscil/errors.hpp"

using namespace oscil;

TEST_CASE("Airy-type window splits at the discriminant root") {
    auto spec = OdeSpec::create("0", "-x");  // D = 4x
    ClassificationReport r = classify(spec, {-30.0, 10.0, true, false});

    REQUIRE(r.pieces.size() == 2);
    REQUIRE(r.roots.size() == 1);
    CHECK(std::fabs(r.roots[0]) < 1e-9);

    const SignPiece& neg = r.pieces[0];
    CHECK(neg.sign == -1);
    CHECK(neg.verdict == Oscillation::Oscillatory);
    CHECK(neg.justification == "D<=-margin");
    CHECK(neg.lo == -30.0);
    CHECK(neg.witness < 0.0);   // sup of D over the piece sits just left of the root
    CHECK(neg.witness > -1.0);

    const SignPiece& pos = r.pieces[1];
    CHECK(pos.sign == 1);
    CHECK(pos.verdict == Oscillation::NonOscillatory);
    CHECK(pos.justification == "D>=0");
    CHECK(pos.hi == 10.0);
    CHECK(pos.witness >= 0.0);
    CHECK(pos.witness < 0.2);

    CHECK(r.invalid.empty());
    CHECK(r.discriminant == "4*x");
}

TEST_CASE("negative discriminant needs an unbounded edge to oscillate") {
    auto spec = OdeSpec::create("0", "1");  // D = -4
    ClassificationReport bounded = classify(spec, {0.0, 10.0, false, false});
    REQUIRE(bounded.pieces.size() == 1);
    CHECK(bounded.pieces[0].verdict == Oscillation::Indeterminate);
    CHECK(bounded.pieces[0].justification == "none");

    ClassificationReport open = classify(spec, {0.0, 10.0, false, true});
    REQUIRE(open.pieces.size() == 1);
    CHECK(open.pieces[0].verdict == Oscillation::Oscillatory);
    CHECK(open.pieces[0].witness == doctest::Approx(-4.0));
}

TEST_CASE("identically zero discriminant is non-oscillatory") {
    auto spec = OdeSpec::create("2", "1");  // D = 4 - 4 = 0
    ClassificationReport r = classify(spec, {0.0, 5.0, false, false});
    REQUIRE(r.pieces.size() == 1);
    CHECK(r.pieces[0].sign == 1);
    CHECK(r.pieces[0].verdict == Oscillation::NonOscillatory);
}

TEST_CASE("margin decides the borderline tail") {
    // D = -17/x^2 -> 0^-: fails the default margin on the probe ladder,
    // passes a much smaller one.
    auto spec = OdeSpec::create("1/x", "k^2/x^2", "0", {{"k", 2.0}}, {0.0});
    Window w{0.5, 120.0, false, true};

    ClassificationReport strict = classify(spec, w);
    REQUIRE(strict.pieces.size() == 1);
    CHECK(strict.pieces[0].verdict == Oscillation::Indeterminate);
    CHECK(strict.pieces[0].justification == "none");
    CHECK(strict.pieces[0].sign == -1);

    ClassificationReport loose = classify(spec, w, 1e-12);
    REQUIRE(loose.pieces.size() == 1);
    CHECK(loose.pieces[0].verdict == Oscillation::Oscillatory);
}

TEST_CASE("parabolic cylinder splits into three pieces") {
    auto spec = OdeSpec::create("0", "(1/4)*x^2 - a", "0", {{"a", 16.0}});
    ClassificationReport r = classify(spec, {-20.0, 20.0, true, true});
    REQUIRE(r.pieces.size() == 3);
    REQUIRE(r.roots.size() == 2);
    CHECK(std::fabs(r.roots[0] + 8.0) < 1e-6);
    CHECK(std::fabs(r.roots[1] - 8.0) < 1e-6);
    CHECK(r.pieces[0].verdict == Oscillation::Oscillatory);
    CHECK(r.pieces[1].verdict == Oscillation::NonOscillatory);
    CHECK(r.pieces[2].verdict == Oscillation::Oscillatory);
}

TEST_CASE("unevaluable stretches are reported, not classified") {
    auto spec = OdeSpec::create("0", "sqrt(x - 5)");  // D defined only for x >= 5
    ClassificationReport r = classify(spec, {0.0, 10.0, false, false});
    REQUIRE_FALSE(r.invalid.empty());
    CHECK(r.invalid[0].first <= 0.01);
    CHECK(r.invalid[0].second >= 4.98);
    for (const auto& p : r.pieces) CHECK(p.lo >= 4.99);
}

TEST_CASE("windows with nothing evaluable are an error") {
    auto spec = OdeSpec::create("0", "sqrt(x - 100)");
    CHECK_THROWS_AS(classify(spec, {0.0, 10.0, false, false}), SpecError);
}

TEST_CASE("window validation") {
    auto spec = OdeSpec::create("0", "1");
    CHECK_THROWS_AS(classify(spec, {5.0, 5.0, false, false}), SpecError);
    CHECK_THROWS_AS(classify(spec, {5.0, 1.0, false, false}), SpecError);
    CHECK_THROWS_AS(classify(spec, {0.0, 10.0, false, false}, 0.0), SpecError);
    CHECK_THROWS_AS(classify(spec, {0.0, 10.0, false, false}, -1.0), SpecError);

    auto sing = OdeSpec::create("1/x", "1", "0", {}, {0.0});
    CHECK_THROWS_AS(classify(sing, {-1.0, 1.0, false, false}), SpecError);
    CHECK_NOTHROW(classify(sing, {0.5, 10.0, false, false}));
}

TEST_CASE("report echoes the analyzed equation") {
    auto spec = OdeSpec::create("1/x", "k^2/x^2", "0", {{"k", 2.0}}, {0.0});
    ClassificationReport r = classify(spec, {0.5, 50.0, false, true}, 1e-6, 1024);
    CHECK(r.b == "1/x");
    CHECK(r.params.at("k") == 2.0);
    CHECK(r.margin == 1e-6);
    CHECK(r.samples == 1024);
    CHECK(r.window.lo == 0.5);
    CHECK(r.window.unbounded_right);
}

TEST_CASE("scan agrees with a brute-force sign table") {
    Expr e = parse("(x - 1) * (x - 3.7) * (x + 2.2)");
    Window w{-5.0, 5.0, false, false};
    SignScan scan = scan_sign_regions(e, {}, w);
    REQUIRE(scan.roots.size() == 3);
    CHECK(scan.roots[0] == doctest::Approx(-2.2).epsilon(1e-8));
    CHECK(scan.roots[1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(scan.roots[2] == doctest::Approx(3.7).epsilon(1e-8));
    REQUIRE(scan.pieces.size() == 4);

    // every dense sample strictly inside a piece matches the piece sign
    for (int i = 0; i <= 20000; ++i) {
        double x = -5.0 + 10.0 * i / 20000.0;
        double v = eval(e, x);
        for (const auto& p : scan.pieces) {
            if (x <= p.lo + 1e-7 || x >= p.hi - 1e-7) continue;
            if (p.sign > 0)
                CHECK(v >= -1e-9);
            else
                CHECK(v < 1e-9);
        }
    }
}

TEST_CASE("piece endpoints tile the window around the roots") {
    auto spec = OdeSpec::create("0", "-x");
    ClassificationReport r = classify(spec, {-10.0, 10.0, false, false});
    REQUIRE(r.pieces.size() == 2);
    CHECK(r.pieces[0].lo == -10.0);
    CHECK(r.pieces[0].hi == doctest::Approx(r.roots[0]));
    CHECK(r.pieces[1].lo == doctest::Approx(r.roots[0]));
    CHECK(r.pieces[1].hi == 10.0);
}
