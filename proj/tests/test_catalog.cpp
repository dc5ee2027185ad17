#include <doctest.h>

#include <cmath>

#include "oscil/catalog.hpp"
#include "oscil/errors.hpp"

using namespace oscil;

TEST_CASE("catalog carries the full roster") {
    const auto& all = catalog_entries();
    CHECK(all.size() >= 8);
    for (const char* name : {"airy", "parabolic_cylinder", "bessel", "hermite",
                             "modified_bessel", "euler_log", "sqrt_case", "nonhomog_airy"})
        CHECK(find_entry(name) != nullptr);
    CHECK(find_entry("no_such_equation") == nullptr);
    for (const auto& e : all) {
        CHECK_FALSE(e.name.empty());
        CHECK_FALSE(e.note.empty());
        CHECK(e.window.lo < e.window.hi);
        CHECK_FALSE(e.labels.empty());
    }
}

TEST_CASE("make_spec applies defaults and overrides") {
    const CatalogEntry* bessel = find_entry("bessel");
    REQUIRE(bessel != nullptr);
    OdeSpec spec = make_spec(*bessel);
    CHECK(spec.eval_c(1.0) == doctest::Approx(1.0 - 4.0));  // n = 2 default

    OdeSpec nine = make_spec(*bessel, {{"n", 9.0}});
    CHECK(nine.eval_c(1.0) == doctest::Approx(1.0 - 81.0));
    CHECK(nine.singular_points == std::vector<double>{0.0});
}

TEST_CASE("boundary values evaluate the stored expressions") {
    const CatalogEntry* bessel = find_entry("bessel");
    auto bs = boundary_values(*bessel);
    REQUIRE(bs.size() == 1);
    CHECK(bs[0] == doctest::Approx(std::sqrt(3.75)).epsilon(1e-12));
    auto b9 = boundary_values(*bessel, {{"n", 9.0}});
    CHECK(b9[0] == doctest::Approx(std::sqrt(80.75)).epsilon(1e-12));

    const CatalogEntry* pc = find_entry("parabolic_cylinder");
    auto pb = boundary_values(*pc);
    REQUIRE(pb.size() == 2);
    CHECK(pb[0] == doctest::Approx(-8.0));
    CHECK(pb[1] == doctest::Approx(8.0));
    auto pb4 = boundary_values(*pc, {{"a", 4.0}});
    CHECK(pb4[0] == doctest::Approx(-4.0));
    CHECK(pb4[1] == doctest::Approx(4.0));
}

TEST_CASE("every entry passes its own regression check") {
    for (const auto& e : catalog_entries()) {
        RegressionResult r = regression_check(e);
        INFO(e.name);
        for (const auto& n : r.notes) INFO(n);
        CHECK(r.ok);
    }
}

TEST_CASE("regression check flags a wrong verdict") {
    CatalogEntry broken = *find_entry("airy");
    broken.labels = {Oscillation::NonOscillatory, Oscillation::Oscillatory};  // swapped
    RegressionResult r = regression_check(broken);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.notes.empty());
}

TEST_CASE("regression check flags a wrong boundary") {
    CatalogEntry broken = *find_entry("bessel");
    broken.boundaries = {"n"};  // 2 instead of sqrt(3.75)
    RegressionResult r = regression_check(broken);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.notes.empty());
}

TEST_CASE("regression check flags a missing boundary") {
    CatalogEntry broken = *find_entry("parabolic_cylinder");
    broken.boundaries = {"-2*sqrt(a)"};  // dropped the right one
    RegressionResult r = regression_check(broken);
    CHECK_FALSE(r.ok);
}

TEST_CASE("hermite entry keeps the interior piece indeterminate") {
    const CatalogEntry* h = find_entry("hermite");
    REQUIRE(h != nullptr);
    RegressionResult r = regression_check(*h);
    REQUIRE(r.report.pieces.size() == 3);
    CHECK(r.report.pieces[0].verdict == Oscillation::NonOscillatory);
    CHECK(r.report.pieces[1].verdict == Oscillation::Indeterminate);
    CHECK(r.report.pieces[2].verdict == Oscillation::NonOscillatory);
}

TEST_CASE("exact solutions in the catalog satisfy their equations") {
    for (const auto& e : catalog_entries()) {
        if (e.exact.empty()) continue;
        OdeSpec spec = make_spec(e);
        Expr y = parse(e.exact);
        Expr ddy = differentiate(differentiate(y));
        Expr dy = differentiate(y);
        for (int i = 0; i < 50; ++i) {
            double x = e.window.lo + (e.window.hi - e.window.lo) * (i + 0.5) / 50;
            double lhs = eval(ddy, x, spec.params) +
                         spec.eval_b(x) * eval(dy, x, spec.params) +
                         spec.eval_c(x) * eval(y, x, spec.params);
            if (is_domain_failure(lhs)) continue;
            INFO(e.name << " at x = " << x);
            CHECK(std::fabs(lhs - spec.eval_f(x)) < 1e-9);
        }
    }
}

TEST_CASE("particular solutions in the catalog satisfy their equations") {
    for (const auto& e : catalog_entries()) {
        if (e.particular.empty()) continue;
        OdeSpec spec = make_spec(e);
        Expr p = parse(e.particular);
        Expr dp = differentiate(p);
        Expr ddp = differentiate(dp);
        for (int i = 0; i < 50; ++i) {
            double x = e.window.lo + (e.window.hi - e.window.lo) * (i + 0.5) / 50;
            double lhs = eval(ddp, x, spec.params) +
                         spec.eval_b(x) * eval(dp, x, spec.params) +
                         spec.eval_c(x) * eval(p, x, spec.params);
            INFO(e.name << " at x = " << x);
            CHECK(std::fabs(lhs - spec.eval_f(x)) < 1e-9);
        }
    }
}
